#include "graphon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graphon {

namespace {

Matrix symmetric_form(const Kernel& kernel) {
  const Vector root = kernel.space().weights().cwiseSqrt();
  return root.asDiagonal() * kernel.values() * root.asDiagonal();
}

}  // namespace

SpectralDecomposition decompose(const Kernel& kernel) {
  const int n = kernel.size();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_form(kernel));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::SolverFailure, "symmetric eigen-solver did not converge");
  }
  const Vector& raw = solver.eigenvalues();  // ascending
  const double tol = kClusterRelTol * std::max(raw.cwiseAbs().maxCoeff(), 1.0);

  // Chain ascending eigenvalues into clusters of numerically equal values.
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && raw[i] - raw[i - 1] <= tol) {
      groups.back().second = i + 1;
    } else {
      groups.emplace_back(i, i + 1);
    }
  }
  auto mean_of = [&](const std::pair<int, int>& g) {
    return raw.segment(g.first, g.second - g.first).mean();
  };
  std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    const double ma = mean_of(a), mb = mean_of(b);
    if (std::abs(std::abs(ma) - std::abs(mb)) > tol) return std::abs(ma) > std::abs(mb);
    return ma > mb;
  });

  const Vector inv_root = kernel.space().weights().cwiseSqrt().cwiseInverse();
  SpectralDecomposition out{kernel, Vector(n), Matrix(n, n), {}, tol};
  int pos = 0;
  for (const auto& g : groups) {
    std::vector<int> idx(g.second - g.first);
    std::iota(idx.begin(), idx.end(), g.first);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return std::abs(raw[a]) > std::abs(raw[b]); });
    EigenCluster cluster{pos, pos + static_cast<int>(idx.size()), mean_of(g)};
    for (int i : idx) {
      out.eigenvalues[pos] = raw[i];
      out.eigenvectors.col(pos) = inv_root.asDiagonal() * solver.eigenvectors().col(i);
      ++pos;
    }
    out.clusters.push_back(cluster);
  }
  return out;
}

bool SpectralDecomposition::is_zero_cluster(const EigenCluster& c) const {
  return std::abs(c.value) <= tolerance;
}

Matrix SpectralDecomposition::cluster_projector(const EigenCluster& c) const {
  const auto f = eigenvectors.middleCols(c.begin, c.dimension());
  const auto lam = eigenvalues.segment(c.begin, c.dimension());
  return f * lam.asDiagonal() * f.transpose();
}

Vector SpectralDecomposition::eigenvector_sup_norms() const {
  return eigenvectors.cwiseAbs().colwise().maxCoeff().transpose();
}

std::vector<double> SpectralDecomposition::distinct_magnitudes() const {
  std::vector<double> mags;
  for (const auto& c : clusters) {
    if (is_zero_cluster(c)) continue;
    mags.push_back(std::abs(c.value));
  }
  std::sort(mags.rbegin(), mags.rend());
  std::vector<double> out;
  for (double m : mags) {
    if (out.empty() || out.back() - m > tolerance) out.push_back(m);
  }
  return out;
}

namespace {

enum class Side { Above, Below, Split };

Side classify(const SpectralDecomposition& d, const EigenCluster& c, double lambda) {
  if (lambda <= d.tolerance) return d.is_zero_cluster(c) ? Side::Below : Side::Above;
  bool above = false, below = false;
  for (int i = c.begin; i < c.end; ++i) {
    const double mag = std::abs(d.eigenvalues[i]);
    if (std::abs(mag - lambda) <= d.tolerance) return Side::Split;
    (mag > lambda ? above : below) = true;
  }
  if (above && below) return Side::Split;
  return above ? Side::Above : Side::Below;
}

}  // namespace

bool is_legal_threshold(const SpectralDecomposition& decomp, double lambda) {
  if (!(lambda >= 0.0)) return false;
  return std::none_of(decomp.clusters.begin(), decomp.clusters.end(), [&](const auto& c) {
    return classify(decomp, c, lambda) == Side::Split;
  });
}

double SpectralDecomposition::energy_above(double t) const {
  double e = 0.0;
  for (const auto& c : clusters) {
    if (classify(*this, c, t) != Side::Above) continue;
    e += eigenvalues.segment(c.begin, c.dimension()).squaredNorm();
  }
  return e;
}

Kernel tail_truncate(const SpectralDecomposition& decomp, double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");
  const int n = decomp.size();
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& c : decomp.clusters) {
    switch (classify(decomp, c, lambda)) {
      case Side::Split:
        throw Error(ErrorCode::ThresholdSplitsCluster,
                    "threshold " + std::to_string(lambda) + " meets eigenvalue magnitude " +
                        std::to_string(std::abs(c.value)) + "; use a gap midpoint");
      case Side::Above:
        acc += decomp.cluster_projector(c);
        break;
      case Side::Below:
        break;
    }
  }
  return Kernel(decomp.kernel.space(), acc);
}

std::vector<double> gap_midpoints(const SpectralDecomposition& decomp) {
  const auto mags = decomp.distinct_magnitudes();
  std::vector<double> mids;
  auto keep = [&](double m) {
    if (is_legal_threshold(decomp, m)) mids.push_back(m);
  };
  for (std::size_t i = 0; i + 1 < mags.size(); ++i) keep(0.5 * (mags[i] + mags[i + 1]));
  if (!mags.empty()) keep(0.5 * mags.back());
  return mids;
}

double snap_to_gap(const SpectralDecomposition& decomp, double t) {
  const auto mags = decomp.distinct_magnitudes();
  if (mags.empty() || t > mags.front() + decomp.tolerance) return t;
  for (double m : gap_midpoints(decomp)) {
    if (m <= t) return m;
  }
  // Below every midpoint: all nonzero clusters sit above t.
  return t;
}

double spectral_radius(const SpectralDecomposition& decomp) {
  return decomp.size() ? std::abs(decomp.eigenvalues[0]) : 0.0;
}

double spectral_radius(const Kernel& kernel) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_form(kernel), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::SolverFailure, "symmetric eigen-solver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SpectrumDistribution spectrum_distribution(const SpectralDecomposition& decomp) {
  SpectrumDistribution out;
  double total = 0.0;
  for (const auto& c : decomp.clusters) {
    if (decomp.is_zero_cluster(c)) continue;
    for (int i = c.begin; i < c.end; ++i) {
      const double lam = decomp.eigenvalues[i];
      out.support.push_back(lam);
      out.probabilities.push_back(std::pow(lam, 4));
      total += out.probabilities.back();
    }
  }
  if (out.support.empty() || total <= 0.0) {
    throw Error(ErrorCode::AllZeroSpectrum, "spectrum has no nonzero eigenvalue");
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

double SpectrumDistribution::moment(int k) const {
  double m = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) m += probabilities[i] * std::pow(support[i], k);
  return m;
}

}  // namespace graphon
