#include "graphon/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "graphon/rng.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

// ---------------------------------------------------------------------------
// ProfileFunction

ProfileFunction ProfileFunction::table(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "profile table is empty");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double l = *lo, h = *hi;
  return ProfileFunction(Kind::Table, std::move(values), l, h);
}

ProfileFunction ProfileFunction::threshold(double c) {
  return ProfileFunction(Kind::Threshold, {c}, 0.0, 1.0);
}

ProfileFunction ProfileFunction::linear() { return ProfileFunction(Kind::Linear, {}, -1.0, 1.0); }

ProfileFunction ProfileFunction::cosine_series(std::vector<double> coeffs) {
  double bound = 0.0;
  for (double c : coeffs) bound += std::abs(c);
  return ProfileFunction(Kind::CosineSeries, std::move(coeffs), -bound, bound);
}

ProfileFunction ProfileFunction::constant(double p) {
  return ProfileFunction(Kind::Constant, {p}, p, p);
}

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad number '" + item + "'");
    }
  }
  return out;
}

}  // namespace

ProfileFunction ProfileFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto one = [&] {
    auto v = parse_list(args);
    if (v.size() != 1) throw Error(ErrorCode::Parse, name + " takes one parameter");
    return v[0];
  };
  if (name == "threshold") return threshold(one());
  if (name == "linear") return linear();
  if (name == "constant") return constant(one());
  if (name == "cosine") return cosine_series(parse_list(args));
  if (name == "table") return table(parse_list(args));
  throw Error(ErrorCode::Parse, "unknown profile '" + spec + "'");
}

double ProfileFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Table: {
      const auto g = static_cast<double>(params_.size());
      if (params_.size() == 1) return params_[0];
      const double pos = std::clamp((t + 1.0) * 0.5, 0.0, 1.0) * (g - 1.0);
      return params_[static_cast<std::size_t>(std::lround(pos))];
    }
    case Kind::Threshold:
      return t > params_[0] ? 1.0 : 0.0;
    case Kind::Linear:
      return t;
    case Kind::CosineSeries: {
      const double angle = std::acos(std::clamp(t, -1.0, 1.0));
      double v = 0.0;
      for (std::size_t j = 0; j < params_.size(); ++j) v += params_[j] * std::cos(j * angle);
      return v;
    }
    case Kind::Constant:
      return params_[0];
  }
  return 0.0;
}

std::string ProfileFunction::describe() const {
  std::ostringstream out;
  auto list = [&] {
    for (std::size_t i = 0; i < params_.size(); ++i) out << (i ? "," : "") << params_[i];
  };
  switch (kind_) {
    case Kind::Table: out << "table:"; list(); break;
    case Kind::Threshold: out << "threshold:" << params_[0]; break;
    case Kind::Linear: out << "linear"; break;
    case Kind::CosineSeries: out << "cosine:"; list(); break;
    case Kind::Constant: out << "constant:" << params_[0]; break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Constructors

Kernel cayley_kernel(int n, const std::vector<double>& f) {
  if (n < 1 || static_cast<int>(f.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "f must have one value per group element");
  }
  for (int x = 0; x < n; ++x) {
    if (std::abs(f[(n - x) % n] - f[x]) > 1e-12) {
      throw Error(ErrorCode::NotEven, "f(-x) != f(x) at x = " + std::to_string(x));
    }
  }
  Matrix values(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) values(x, y) = f[((y - x) % n + n) % n];
  return Kernel(DiscreteSpace::uniform(n), values);
}

Kernel circle_halfplane_kernel(int n) {
  if (n < 4 || n % 4 != 0) {
    throw Error(ErrorCode::InvalidArgument, "circle discretization needs n divisible by 4");
  }
  // Offsets d = i - j mod n; cos(2 pi d / n) > 0 iff d < n/4 or d > 3n/4.
  // Decided on integers so the boundary d = n/4 never depends on rounding.
  Matrix values(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int d = ((i - j) % n + n) % n;
      values(i, j) = (4 * d < n || 4 * d > 3 * n) ? 1.0 : 0.0;
    }
  return Kernel(DiscreteSpace::uniform(n), values);
}

Permutation dilation_perm(int n, int k) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const int kk = ((k % n) + n) % n;
  if (std::gcd(kk, n) != 1) {
    throw Error(ErrorCode::NotCoprime, "gcd(" + std::to_string(k) + ", " + std::to_string(n) +
                                           ") != 1");
  }
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<int>((static_cast<long long>(kk) * i) % n);
  return p;
}

Matrix sphere_points(int dim, int N, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "sphere dimension must be >= 1");
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 sample points");
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> normal;
  Matrix pts(N, dim + 1);
  for (int i = 0; i < N; ++i) {
    double norm = 0.0;
    while (norm == 0.0) {
      for (int c = 0; c <= dim; ++c) pts(i, c) = normal(rng);
      norm = pts.row(i).norm();
    }
    pts.row(i) /= norm;
  }
  return pts;
}

Kernel sphere_kernel(int dim, const ProfileFunction& f, int N, std::uint64_t seed) {
  const Matrix pts = sphere_points(dim, N, seed);
  const Matrix dots = pts * pts.transpose();
  Matrix values(N, N);
  const double on_diagonal = f(1.0);
  for (int j = 0; j < N; ++j) {
    values(j, j) = on_diagonal;
    for (int i = 0; i < j; ++i) values(i, j) = values(j, i) = f(std::clamp(dots(i, j), -1.0, 1.0));
  }
  return Kernel(DiscreteSpace::uniform(N), values);
}

WRandomSample w_random_graph(const Kernel& kernel, int N, std::uint64_t seed) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  if (kernel.values().minCoeff() < 0.0 || kernel.values().maxCoeff() > 1.0) {
    throw Error(ErrorCode::EntriesOutOfRange, "W-random sampling needs entries in [0, 1]");
  }
  const int n = kernel.size();
  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) cumulative[i] = (acc += kernel.space().weight(i));

  auto position_rng = stream_rng(seed, 0);
  std::vector<int> atoms(N);
  for (int v = 0; v < N; ++v) {
    const double u = uniform01(position_rng) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    atoms[v] = std::min(static_cast<int>(it - cumulative.begin()), n - 1);
  }
  auto edge_rng = stream_rng(seed, 1);
  Matrix adj = Matrix::Zero(N, N);
  for (int j = 1; j < N; ++j)
    for (int i = 0; i < j; ++i) {
      if (uniform01(edge_rng) < kernel(atoms[i], atoms[j])) adj(i, j) = adj(j, i) = 1.0;
    }
  return WRandomSample{Kernel(DiscreteSpace::uniform(N), adj), std::move(atoms)};
}

// ---------------------------------------------------------------------------
// Invariant subspace dimensions

namespace {

InvariantSpectrumReport spectrum_report(const Kernel& k, const CutNormConfig& cut) {
  const SpectralDecomposition d = decompose(k);
  InvariantSpectrumReport r;
  for (const auto& c : d.clusters) {
    if (d.is_zero_cluster(c)) continue;
    r.cluster_values.push_back(c.value);
    r.cluster_dimensions.push_back(c.dimension());
    r.d = r.d == 0 ? c.dimension() : std::min(r.d, c.dimension());
  }
  r.l2 = weighted_norm(k, Norm::L2);
  r.radius = spectral_radius(d);
  r.cut = cutnorm_bracket(k, cut);
  if (r.d > 0) {
    r.bound = r.l2 / std::sqrt(static_cast<double>(r.d));
    r.radius_within_bound = r.radius <= *r.bound + 1e-9;
    r.cut_within_bound = r.cut.upper <= *r.bound + 1e-9;
  }
  return r;
}

}  // namespace

InvariantDimensionReport invariant_dimension_report(const Kernel& kernel,
                                                    const PermutationAction& action,
                                                    const CutNormConfig& cut) {
  if (!(action.space() == kernel.space())) {
    throw Error(ErrorCode::DimensionMismatch, "action and kernel live on different spaces");
  }
  for (const auto& g : action.generators()) {
    const double err = (apply_permutation(kernel, g).values() - kernel.values()).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
      throw Error(ErrorCode::ActionDoesNotStabilize,
                  "generator moves the kernel by " + std::to_string(err));
    }
  }
  InvariantDimensionReport out;
  out.mean = weighted_mean(kernel);
  out.kernel = spectrum_report(kernel, cut);
  out.centered = spectrum_report(kernel.shifted(-out.mean), cut);
  return out;
}

}  // namespace graphon
