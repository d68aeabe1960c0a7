#pragma once

#include <string>
#include <vector>

#include "graphon/core.hpp"
#include "graphon/regularity.hpp"

namespace graphon::cli {

/// F(lambda, eps) = c * lambda^p * eps^q, written e.g. "0.25*lambda*eps" or "c*lambda^2".
struct ControlSpec {
  double c = 0.25;
  double p = 1.0;
  double q = 1.0;

  static ControlSpec parse(const std::string& text);
  ControlFunction function() const;
  std::string describe() const;
};

/// Builtins: edge, triangle, K4, path_k, cycle_k, complete_k. Anything else is read as a graph file.
SimpleGraph builtin_graph(const std::string& name);
bool is_builtin_graph(const std::string& name);
SimpleGraph resolve_graph(const std::string& name_or_path);

/// Linear combination of graphs, e.g. "2*cycle_4 - edge + 0.5*triangle".
struct GraphTerm {
  double coefficient = 1.0;
  std::string name;
};
std::vector<GraphTerm> parse_polynomial(const std::string& text);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace graphon::cli
