#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "graphon/cli_support.hpp"
#include "graphon/cutnorm.hpp"
#include "graphon/distance.hpp"
#include "graphon/ensembles.hpp"
#include "graphon/experiments.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/io.hpp"
#include "graphon/regularity.hpp"
#include "graphon/report.hpp"
#include "graphon/spectral.hpp"
#include "graphon/svg_plot.hpp"

using namespace graphon;
using report::Json;
using report::Relation;
using report::Report;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  int exact_limit = 22;
  bool timing = false;
};

std::uint64_t need_seed(const Globals& g, const std::string& why) {
  if (!g.seed) throw UsageError("--seed is required: " + why);
  return *g.seed;
}

const std::string& need_input(const Globals& g) {
  if (g.input.empty()) throw UsageError("--input is required");
  return g.input;
}

Kernel load_any(const std::string& path) {
  return io::is_step_file(path) ? expand_step(io::load_step(path)) : io::load_kernel(path);
}

void write_output(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
  } else {
    io::write_file_atomic(g.output, text);
  }
}

int finish(const Globals& g, Report& r, std::chrono::steady_clock::time_point start) {
  if (g.timing) {
    r.set_runtime(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  write_output(g, r.dump());
  return r.all_pass() ? kPass : kCheckFailed;
}

CutNormConfig cut_config(const Globals& g, int restarts, std::uint64_t seed) {
  CutNormConfig c;
  c.exact_limit = g.exact_limit;
  c.restarts = restarts;
  c.seed = seed;
  c.threads = g.threads;
  return c;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const Globals& g, std::optional<double> lambda) {
  const auto start = std::chrono::steady_clock::now();
  const Kernel k = load_any(need_input(g));
  const auto d = decompose(k);
  Report r("spectrum");
  r.inputs() = {{"input", g.input}};
  if (lambda) r.inputs()["lambda"] = *lambda;
  r.results()["n"] = k.size();
  r.results()["spectral_radius"] = spectral_radius(d);
  r.results()["spectrum"] = report::spectrum_json(d);

  const Vector& w = k.space().weights();
  const Matrix gram = d.eigenvectors.transpose() * w.asDiagonal() * d.eigenvectors;
  r.add_check("orthonormality", (gram - Matrix::Identity(k.size(), k.size())).cwiseAbs().maxCoeff(),
              1e-10);
  const Matrix recon = d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
  r.add_check("reconstruction_l2", weighted_norm(Kernel(k.space(), recon) - k, Norm::L2), 1e-9);
  if (weighted_norm(k, Norm::Linf) <= 1.0) {
    const Vector sup = d.eigenvector_sup_norms();
    double worst = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const double lam = std::abs(d.eigenvalues[i]);
      if (lam >= 1e-6) worst = std::max(worst, sup[i] - 1.0 / lam);
    }
    r.add_check("eigenfunction_sup_excess", worst, 1e-8);
  }
  if (lambda) {
    if (!is_legal_threshold(d, *lambda)) {
      throw Error(ErrorCode::ThresholdSplitsCluster,
                  "lambda splits a cluster; nearest legal threshold below is " +
                      std::to_string(snap_to_gap(d, *lambda)));
    }
    const Kernel t = tail_truncate(d, *lambda);
    int rank = 0;
    for (const auto& c : d.clusters)
      if (std::abs(c.value) > *lambda && !d.is_zero_cluster(c)) rank += c.dimension();
    r.results()["truncation"] = {{"lambda", *lambda},
                                 {"rank", rank},
                                 {"energy", d.energy_above(*lambda)},
                                 {"remainder_l2", weighted_norm(k - t, Norm::L2)}};
  }
  return finish(g, r, start);
}

// ---------------------------------------------------------------- cutnorm

int cmd_cutnorm(const Globals& g, int restarts) {
  const auto start = std::chrono::steady_clock::now();
  const Kernel k = load_any(need_input(g));
  std::uint64_t seed = 0;
  if (k.size() > g.exact_limit) seed = need_seed(g, "heuristic cut norm is randomized");
  const auto e = cutnorm_bracket(k, cut_config(g, restarts, seed));
  Report r("cutnorm");
  r.inputs() = {{"input", g.input}, {"exact_limit", g.exact_limit}, {"restarts", restarts}};
  if (g.seed) r.inputs()["seed"] = *g.seed;
  r.results() = report::to_json(e);
  r.add_check("lower_le_upper", e.lower - e.upper, 0.0);
  r.add_check("upper_le_spectral_radius", e.upper, spectral_radius(k) + 1e-10);
  return finish(g, r, start);
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(const Globals& g, double epsilon, const std::string& F, int restarts,
                  bool cluster, double grid_cap) {
  const auto start = std::chrono::steady_clock::now();
  const Kernel k = load_any(need_input(g));
  const auto control = cli::ControlSpec::parse(F);
  std::uint64_t seed = 0;
  if (k.size() > g.exact_limit) seed = need_seed(g, "remainder cut norm is randomized");
  RegularityConfig rc;
  rc.cut = cut_config(g, restarts, seed);
  const auto d = decompose(k);
  const auto dec = regularity_decompose(d, control.function(), epsilon, rc);

  Report r("decompose");
  r.inputs() = {{"input", g.input},   {"epsilon", epsilon},       {"F", control.describe()},
                {"restarts", restarts}, {"exact_limit", g.exact_limit}, {"cluster", cluster}};
  if (g.seed) r.inputs()["seed"] = *g.seed;
  r.results()["decomposition"] = report::to_json(dec);
  r.results()["spectrum"] = report::spectrum_json(d);
  r.add_check("reconstruction_linf", ((dec.S + dec.E + dec.R) - k).values().cwiseAbs().maxCoeff(),
              1e-9);
  r.add_check("R_cut_upper_vs_F", dec.certificates.R_cut.upper, dec.F_bound);
  r.add_check("lambda_next_vs_F", dec.lambda_next, dec.F_bound);
  r.add_check("E_l2_vs_epsilon", dec.certificates.E_l2, epsilon);
  if (!dec.certificates.clamped) r.add_check("SE_linf", dec.certificates.SE_linf, 1.0 + 1e-9);
  if (cluster && dec.lambda < spectral_radius(d)) {
    ClusterConfig cc;
    cc.grid_cap = grid_cap;
    const auto cl = cluster_eigenvectors(d, dec.lambda, epsilon, cc);
    r.results()["partition"] = report::partition_json(cl.step);
    r.results()["clustering"] = {{"k", cl.k},
                                 {"m", cl.m},
                                 {"epsilon1", cl.epsilon1},
                                 {"step_count_bound", cl.step_count_bound},
                                 {"linf_error", cl.linf_error}};
    r.add_check("clustering_linf", cl.linf_error, epsilon + 1e-9);
    r.add_check("clustering_parts", cl.step.parts(), cl.step_count_bound);
  }
  return finish(g, r, start);
}

// ---------------------------------------------------------------- density

DensityEstimate one_density(const Globals& g, const SimpleGraph& graph,
                            const std::optional<StepFunction>& step, const Kernel& k,
                            const std::string& method, std::int64_t samples,
                            std::optional<SpectralDecomposition>& spectrum) {
  DensityConfig dc;
  dc.threads = g.threads;
  const bool is_cycle = graph.vertices() >= 3 && graph.edge_count() == graph.vertices() &&
                        [&] {
                          const auto c = SimpleGraph::cycle(graph.vertices());
                          return c.edges() == graph.edges();
                        }();
  std::string m = method;
  if (m == "auto") {
    const double work = step ? std::pow(step->parts(), graph.vertices()) : HUGE_VAL;
    if (step && graph.vertices() <= dc.max_vertices && work <= 1e8) {
      m = "exact";
    } else if (is_cycle) {
      m = "spectral";
    } else {
      m = "mc";
    }
  }
  if (m == "exact") {
    return hom_density_step(graph, *step, dc);
  }
  if (m == "spectral") {
    if (!is_cycle) throw UsageError("spectral density applies to cycles only");
    if (!spectrum) spectrum = decompose(k);
    return cycle_density_spectral(*spectrum, graph.vertices());
  }
  if (m == "mc") {
    return hom_density_mc(graph, k, samples, need_seed(g, "Monte Carlo density"), dc);
  }
  throw UsageError("unknown density method '" + method + "'");
}

int cmd_density(const Globals& g, const std::string& graph_arg, const std::string& method,
                std::int64_t samples) {
  const auto start = std::chrono::steady_clock::now();
  const std::string& path = need_input(g);
  std::optional<StepFunction> step;
  if (io::is_step_file(path)) step = io::load_step(path);
  const Kernel k = step ? expand_step(*step) : io::load_kernel(path);
  if (!step) {
    // Every kernel is a step function with one atom per part.
    std::vector<int> labels(k.size());
    std::iota(labels.begin(), labels.end(), 0);
    step = StepFunction(k.space(), labels, k.values());
  }

  std::vector<cli::GraphTerm> terms;
  if (cli::is_builtin_graph(graph_arg) || std::ifstream(graph_arg).good()) {
    terms.push_back({1.0, graph_arg});
  } else {
    terms = cli::parse_polynomial(graph_arg);
  }

  Report r("density");
  r.inputs() = {{"input", path}, {"graph", graph_arg}, {"method", method}, {"samples", samples}};
  if (g.seed) r.inputs()["seed"] = *g.seed;
  std::optional<SpectralDecomposition> spectrum;
  Json parts = Json::array();
  double value = 0.0, variance = 0.0;
  bool all_in_unit = (k.values().array() >= 0.0).all() && (k.values().array() <= 1.0).all();
  for (const auto& t : terms) {
    const auto e = one_density(g, cli::resolve_graph(t.name), step, k, method, samples, spectrum);
    Json j = report::to_json(e);
    j["graph"] = t.name;
    j["coefficient"] = t.coefficient;
    parts.push_back(std::move(j));
    value += t.coefficient * e.value;
    variance += t.coefficient * t.coefficient * e.std_error * e.std_error;
    if (all_in_unit && terms.size() == 1) {
      const double slack = 4.0 * e.std_error + 1e-12;
      r.add_check("density_ge_0", e.value, -slack, Relation::AtLeast);
      r.add_check("density_le_1", e.value, 1.0 + slack);
    }
  }
  r.results() = {{"value", value}, {"std_error", std::sqrt(variance)}, {"terms", parts}};
  return finish(g, r, start);
}

// ---------------------------------------------------------------- distance

int cmd_distance(const Globals& g, const std::string& other, const std::string& norm_name,
                 int max_atoms, int exact_atoms, int starts, int restarts) {
  const auto start = std::chrono::steady_clock::now();
  const StepFunction a = io::load_step(need_input(g));
  if (other.empty()) throw UsageError("--against is required");
  const StepFunction b = io::load_step(other);
  DistanceNorm norm;
  if (norm_name == "l1") {
    norm = DistanceNorm::L1;
  } else if (norm_name == "l2") {
    norm = DistanceNorm::L2;
  } else if (norm_name == "cut") {
    norm = DistanceNorm::Cut;
  } else {
    throw UsageError("--norm must be l1, l2 or cut");
  }
  DistanceConfig dc;
  dc.max_atoms = max_atoms;
  dc.exact_atoms = exact_atoms;
  dc.starts = starts;
  dc.threads = g.threads;
  const int m = common_refinement(a, b, max_atoms).m;
  if (m > exact_atoms) dc.seed = need_seed(g, "heuristic alignment search is randomized");
  if (norm == DistanceNorm::Cut && m > g.exact_limit) {
    dc.seed = need_seed(g, "heuristic cut norm is randomized");
  }
  dc.cut = cut_config(g, restarts, dc.seed);
  const auto br = delta_bracket(a, b, norm, dc);
  Report r("distance");
  r.inputs() = {{"input", g.input},      {"against", other},   {"norm", norm_name},
                {"max_atoms", max_atoms}, {"exact_atoms", exact_atoms}, {"starts", starts},
                {"exact_limit", g.exact_limit}};
  if (g.seed) r.inputs()["seed"] = *g.seed;
  r.results() = report::to_json(br);
  r.add_check("lower_le_upper", br.lower - br.upper, 1e-12);
  return finish(g, r, start);
}

// ---------------------------------------------------------------- make

struct MakeArgs {
  std::string ensemble;
  int n = 0;
  int dim = 2;
  int N = 0;
  std::string f;
};

std::vector<double> cayley_profile(int n, const std::string& spec) {
  if (spec.empty()) throw UsageError("--f is required for cayley");
  if (spec.find(':') != std::string::npos || spec == "linear") {
    // Profile on [-1,1] read through the angle: f(x) = profile(cos(2 pi x / n)), folded to stay exactly even.
    const auto prof = ProfileFunction::parse(spec);
    std::vector<double> out(n);
    for (int x = 0; x < n; ++x) out[x] = prof(std::cos(2.0 * M_PI * std::min(x, n - x) / n));
    return out;
  }
  auto values = cli::parse_double_list(spec);
  if (static_cast<int>(values.size()) != n) throw UsageError("--f needs exactly n values");
  return values;
}

int cmd_make(const Globals& g, const MakeArgs& a) {
  Kernel k = Kernel::zero(DiscreteSpace::uniform(1));
  if (a.ensemble == "cayley") {
    if (a.n < 1) throw UsageError("--n is required");
    k = cayley_kernel(a.n, cayley_profile(a.n, a.f));
  } else if (a.ensemble == "circle") {
    if (a.n < 1) throw UsageError("--n is required");
    k = circle_halfplane_kernel(a.n);
  } else if (a.ensemble == "sphere") {
    if (a.N < 2) throw UsageError("--N is required");
    k = sphere_kernel(a.dim, ProfileFunction::parse(a.f.empty() ? "threshold:0" : a.f), a.N,
                      need_seed(g, "sphere sampling"));
  } else if (a.ensemble == "wrandom") {
    if (a.N < 1) throw UsageError("--N is required");
    k = w_random_graph(load_any(need_input(g)), a.N, need_seed(g, "W-random sampling")).graph;
  } else {
    throw UsageError("--ensemble must be cayley, circle, sphere or wrandom");
  }
  std::ostringstream out;
  io::write_kernel(out, k);
  write_output(g, out.str());
  return kPass;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment(const Globals& g, experiments::ExperimentConfig c, const std::string& seeds,
                   const std::string& multipliers, const std::string& dims,
                   const std::string& sizes, const std::string& F) {
  const auto start = std::chrono::steady_clock::now();
  if (!seeds.empty()) {
    for (int s : cli::parse_int_list(seeds)) {
      if (s < 0) throw UsageError("seeds must be nonnegative");
      c.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  } else if (g.seed) {
    c.seeds.push_back(*g.seed);
  }
  if (c.seeds.empty() && c.name != "regularity") {
    throw UsageError("--seed or --seeds is required: experiment is randomized");
  }
  if (!multipliers.empty()) c.multipliers = cli::parse_int_list(multipliers);
  if (!dims.empty()) c.dims = cli::parse_int_list(dims);
  if (!sizes.empty()) c.sizes = cli::parse_int_list(sizes);
  if (!F.empty()) c.control = cli::ControlSpec::parse(F);
  if (!g.input.empty()) c.source = g.input;
  c.threads = g.threads;
  c.exact_limit = g.exact_limit;
  Report r = experiments::run_experiment(c);
  return finish(g, r, start);
}

// ---------------------------------------------------------------- plot

int cmd_plot(const Globals& g, const std::string& kind) {
  std::ifstream in(need_input(g));
  if (!in) throw Error(ErrorCode::Io, "cannot open " + g.input);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("report is not valid JSON: ") + e.what());
  }
  if (g.output.empty()) throw UsageError("--output is required for plot");
  plot::emit_plot(doc, plot::parse_plot_kind(kind), g.output);
  return kPass;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::NonSquare:
    case ErrorCode::InvalidWeights:
    case ErrorCode::Asymmetric:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::EmptyPart:
    case ErrorCode::NotEven:
    case ErrorCode::NotCoprime:
    case ErrorCode::EntriesOutOfRange:
    case ErrorCode::TooLarge:
    case ErrorCode::TooManyVertices:
    case ErrorCode::IrrationalWeights:
    case ErrorCode::WeightMismatch:
    case ErrorCode::ActionDoesNotStabilize:
      return kUsage;
    default:
      return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of discretized graphons and kernel operators"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--input,-i", g.input, "Input file (kernel, step function or report)");
  app.add_option("--output,-o", g.output, "Output file (default: stdout), written atomically");
  app.add_option("--seed", g.seed, "RNG seed; required by randomized computations");
  app.add_option("--threads", g.threads, "Worker threads; never changes results")
      ->check(CLI::PositiveNumber);
  app.add_option("--exact-limit", g.exact_limit, "Largest n for exact cut-norm enumeration")
      ->check(CLI::Range(1, 30));
  app.add_flag("--timing", g.timing, "Add runtime_seconds to reports (breaks byte identity)");

  std::optional<double> spectrum_lambda;
  auto* spectrum = app.add_subcommand("spectrum", "Eigen-decomposition report");
  spectrum->add_option("--lambda", spectrum_lambda, "Also report the truncation at this threshold");

  int restarts = 32;
  auto* cutnorm = app.add_subcommand("cutnorm", "Cut-norm bracket");
  cutnorm->add_option("--restarts", restarts, "Heuristic restarts")->check(CLI::PositiveNumber);

  double epsilon = 0.2;
  std::string F = "0.25*lambda*eps";
  bool cluster = false;
  double grid_cap = 1e300;
  auto* decompose_cmd = app.add_subcommand("decompose", "Regularity decomposition M = S + E + R");
  decompose_cmd->add_option("--epsilon", epsilon, "Target ||E||_2")->check(CLI::PositiveNumber);
  decompose_cmd->add_option("--F", F, "Control function c*lambda^p*eps^q");
  decompose_cmd->add_option("--restarts", restarts, "Heuristic restarts for ||R||_cut");
  decompose_cmd->add_option("--report", g.output, "Alias for --output");
  decompose_cmd->add_flag("--cluster", cluster, "Also cluster eigenvectors of S into a step function");
  decompose_cmd->add_option("--grid-cap", grid_cap, "Step-count bound cap for clustering");

  std::string graph = "edge", method = "auto";
  std::int64_t samples = 100000;
  auto* density = app.add_subcommand("density", "Homomorphism density t(G, W)");
  density->add_option("--graph", graph,
                      "Graph file, builtin (edge, path_k, cycle_k, triangle, K4, complete_k) or "
                      "linear combination such as '2*cycle_4-edge'");
  density->add_option("--method", method, "auto, exact, spectral or mc");
  density->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);

  std::string against, norm = "cut";
  int max_atoms = 64, exact_atoms = 8, starts = 16;
  auto* distance = app.add_subcommand("distance", "delta-distance bracket between step functions");
  distance->add_option("--against", against, "Second step-function file");
  distance->add_option("--norm", norm, "l1, l2 or cut");
  distance->add_option("--max-atoms", max_atoms, "Common refinement size limit");
  distance->add_option("--exact-atoms", exact_atoms, "Full enumeration up to this many atoms");
  distance->add_option("--starts", starts, "Local-search starts");
  distance->add_option("--restarts", restarts, "Heuristic cut-norm restarts");

  MakeArgs make_args;
  auto* make = app.add_subcommand("make", "Build an ensemble kernel");
  make->add_option("--ensemble", make_args.ensemble, "cayley, circle, sphere or wrandom")
      ->required();
  make->add_option("--n", make_args.n, "Group order / grid size");
  make->add_option("--dim", make_args.dim, "Sphere dimension");
  make->add_option("--N", make_args.N, "Sample count");
  make->add_option("--f", make_args.f, "Profile: values list or threshold:c, linear, cosine:..., "
                                       "constant:p, table:...");

  experiments::ExperimentConfig exp;
  std::string seeds, multipliers, dims, sizes, exp_F;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment driver");
  experiment->add_option("--name", exp.name, "circle, sphere, wrandom-convergence or regularity")
      ->required();
  experiment->add_option("--seeds", seeds, "Comma-separated seeds");
  experiment->add_option("--n", exp.n, "Circle grid size");
  experiment->add_option("--k", multipliers, "Circle dilation multipliers, comma-separated");
  experiment->add_option("--dims", dims, "Sphere dimensions, comma-separated");
  experiment->add_option("--N", exp.N, "Sphere sample count");
  experiment->add_option("--f", exp.profile, "Sphere profile");
  experiment->add_option("--slack", exp.slack, "Sphere sampling slack");
  experiment->add_option("--separation", exp.separation, "Circle cut separation threshold");
  experiment->add_option("--p", exp.p, "W-random constant source value");
  experiment->add_option("--sizes", sizes, "W-random sample sizes, comma-separated");
  experiment->add_option("--track", exp.track, "Tracked eigenvalues");
  experiment->add_option("--tolerance", exp.top_tolerance, "W-random top eigenvalue tolerance");
  experiment->add_option("--epsilon", exp.epsilon, "Regularity epsilon");
  experiment->add_option("--F", exp_F, "Regularity control function");
  experiment->add_option("--restarts", exp.restarts, "Heuristic cut-norm restarts");

  std::string plot_kind;
  auto* plot_cmd = app.add_subcommand("plot", "Render an SVG from a report");
  plot_cmd->add_option("--kind", plot_kind, "spectrum, partition or trajectory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(g, spectrum_lambda);
    if (*cutnorm) return cmd_cutnorm(g, restarts);
    if (*decompose_cmd) return cmd_decompose(g, epsilon, F, restarts, cluster, grid_cap);
    if (*density) return cmd_density(g, graph, method, samples);
    if (*distance) return cmd_distance(g, against, norm, max_atoms, exact_atoms, starts, restarts);
    if (*make) return cmd_make(g, make_args);
    if (*experiment) return cmd_experiment(g, exp, seeds, multipliers, dims, sizes, exp_F);
    if (*plot_cmd) return cmd_plot(g, plot_kind);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
