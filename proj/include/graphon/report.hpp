#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphon/cutnorm.hpp"
#include "graphon/distance.hpp"
#include "graphon/homdensity.hpp"
#include "graphon/regularity.hpp"
#include "graphon/spectral.hpp"

namespace graphon::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Relation { AtMost, AtLeast };

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Relation relation = Relation::AtMost;
  bool pass() const;
};

/// Versioned JSON report: {schema_version, command, inputs, results, checks, pass}.
/// Key order is fixed, so equal content serializes to identical bytes.
class Report {
 public:
  explicit Report(std::string command);

  Json& inputs() { return inputs_; }
  Json& results() { return results_; }
  const Json& results() const { return results_; }

  void add_check(std::string name, double value, double bound, Relation relation = Relation::AtMost);
  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;

  /// Wall-clock seconds; only serialized when set, since it breaks byte-identical output.
  void set_runtime(double seconds) { runtime_ = seconds; }

  Json to_json() const;
  /// Pretty-printed JSON with trailing newline.
  std::string dump() const;

 private:
  std::string command_;
  Json inputs_ = Json::object();
  Json results_ = Json::object();
  std::vector<Check> checks_;
  double runtime_ = -1.0;
};

/// True when every check in a serialized report has pass == recomputed pass.
bool checks_consistent(const Json& report);

Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const CutNormEstimate& e);
Json to_json(const DensityEstimate& e);
Json to_json(const DistanceBracket& b);
/// Eigenvalues, clusters (begin, end, value, dimension) and eigenvector sup norms.
Json spectrum_json(const SpectralDecomposition& d);
/// Block matrix and part weights of a step function.
Json partition_json(const StepFunction& sf);
Json to_json(const RegularityDecomposition& r);

}  // namespace graphon::report
