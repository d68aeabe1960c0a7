#include "graphon/cli_support.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "graphon/io.hpp"

namespace graphon::cli {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::Parse, "bad number '" + s + "' in " + context);
  }
  return v;
}

int suffix_size(const std::string& name, const std::string& prefix) {
  const std::string digits = name.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return -1;
  return std::stoi(digits);
}

}  // namespace

ControlSpec ControlSpec::parse(const std::string& text) {
  ControlSpec out{1.0, 0.0, 0.0};
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    factor = strip(factor);
    const auto caret = factor.find('^');
    const std::string base = strip(factor.substr(0, caret));
    const double power = caret == std::string::npos
                             ? 1.0
                             : to_double(strip(factor.substr(caret + 1)), "--F exponent");
    if (base == "lambda" || base == "l") {
      out.p += power;
    } else if (base == "eps" || base == "epsilon") {
      out.q += power;
    } else if (caret == std::string::npos) {
      out.c *= to_double(base, "--F");
    } else {
      throw Error(ErrorCode::Parse, "unknown factor '" + factor + "' in --F");
    }
  }
  if (!(out.c > 0.0)) throw Error(ErrorCode::Parse, "--F coefficient must be positive");
  return out;
}

ControlFunction ControlSpec::function() const {
  const ControlSpec s = *this;
  return [s](double lambda, double eps) {
    return s.c * std::pow(lambda, s.p) * std::pow(eps, s.q);
  };
}

std::string ControlSpec::describe() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << c << "*lambda^" << p << "*eps^" << q;
  return ss.str();
}

bool is_builtin_graph(const std::string& name) {
  if (name == "edge" || name == "triangle" || name == "K4") return true;
  for (const char* prefix : {"path_", "cycle_", "complete_"})
    if (name.rfind(prefix, 0) == 0 && suffix_size(name, prefix) >= 0) return true;
  return false;
}

SimpleGraph builtin_graph(const std::string& name) {
  if (name == "edge") return SimpleGraph::edge();
  if (name == "triangle") return SimpleGraph::cycle(3);
  if (name == "K4") return SimpleGraph::complete(4);
  if (name.rfind("path_", 0) == 0) {
    const int k = suffix_size(name, "path_");
    if (k >= 1) return SimpleGraph::path(k);
  }
  if (name.rfind("cycle_", 0) == 0) {
    const int k = suffix_size(name, "cycle_");
    if (k >= 3) return SimpleGraph::cycle(k);
  }
  if (name.rfind("complete_", 0) == 0) {
    const int k = suffix_size(name, "complete_");
    if (k >= 1) return SimpleGraph::complete(k);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown builtin graph '" + name + "'");
}

SimpleGraph resolve_graph(const std::string& name_or_path) {
  if (is_builtin_graph(name_or_path)) return builtin_graph(name_or_path);
  return io::load_graph(name_or_path);
}

std::vector<GraphTerm> parse_polynomial(const std::string& text) {
  std::vector<GraphTerm> terms;
  auto add = [&](const std::string& raw, double sign) {
    const std::string t = strip(raw);
    if (t.empty()) throw Error(ErrorCode::Parse, "empty term in graph polynomial '" + text + "'");
    GraphTerm term;
    const auto star = t.find('*');
    if (star == std::string::npos) {
      term.name = t;
    } else {
      term.coefficient = to_double(strip(t.substr(0, star)), "graph polynomial");
      term.name = strip(t.substr(star + 1));
    }
    term.coefficient *= sign;
    terms.push_back(term);
  };
  std::string current;
  double sign = 1.0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    // Signs inside a coefficient's exponent ("1e-3") do not split terms.
    const bool exponent = i >= 2 && (text[i - 1] == 'e' || text[i - 1] == 'E') &&
                          std::isdigit(static_cast<unsigned char>(text[i - 2]));
    if ((ch == '+' || ch == '-') && !exponent) {
      if (!strip(current).empty()) {
        add(current, sign);
        current.clear();
        sign = 1.0;
      }
      if (ch == '-') sign = -sign;
      continue;
    }
    current += ch;
  }
  add(current, sign);
  return terms;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    if (v != std::floor(v)) throw Error(ErrorCode::Parse, "expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(strip(item), "list"));
  if (out.empty()) throw Error(ErrorCode::Parse, "empty list");
  return out;
}

}  // namespace graphon::cli
