#include "graphon/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace graphon::io {

namespace {

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line.substr(first);
  }
  throw Error(ErrorCode::Parse, "unexpected end of input");
}

template <typename T>
std::vector<T> parse_values(const std::string& line) {
  std::istringstream ss(line);
  std::vector<T> out;
  T v;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) throw Error(ErrorCode::Parse, "bad token in line: " + line);
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

Vector parse_weights(const std::string& line, int n) {
  auto w = parse_values<double>(line.substr(line.find(':') + 1));
  if (static_cast<int>(w.size()) != n) {
    throw Error(ErrorCode::Parse, "expected " + std::to_string(n) + " weights");
  }
  return Eigen::Map<Vector>(w.data(), n);
}

Matrix parse_rows(std::istream& in, int rows, std::string first) {
  Matrix m(rows, rows);
  for (int i = 0; i < rows; ++i) {
    std::string line = (i == 0 && !first.empty()) ? first : next_line(in);
    auto row = parse_values<double>(line);
    if (static_cast<int>(row.size()) != rows) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(i) + " has " +
                                        std::to_string(row.size()) + " entries");
    }
    for (int j = 0; j < rows; ++j) m(i, j) = row[j];
  }
  return m;
}

void write_row(std::ostream& out, const auto& values, Eigen::Index count) {
  for (Eigen::Index j = 0; j < count; ++j) {
    if (j) out << ' ';
    out << values[j];
  }
  out << '\n';
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

Kernel read_kernel(std::istream& in) {
  auto header = parse_values<long>(next_line(in));
  if (header.size() != 1 || header[0] <= 0) throw Error(ErrorCode::Parse, "bad size line");
  const int n = static_cast<int>(header[0]);
  std::string line = next_line(in);
  std::optional<Vector> weights;
  if (starts_with(line, "weights:")) {
    weights = parse_weights(line, n);
    line.clear();
  }
  Matrix m = parse_rows(in, n, line);
  return kernel_from_matrix(m, weights);
}

void write_kernel(std::ostream& out, const Kernel& kernel) {
  const int n = kernel.size();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << n << '\n';
  if (!kernel.space().is_uniform()) {
    out << "weights: ";
    write_row(out, kernel.space().weights(), n);
  }
  for (int i = 0; i < n; ++i) write_row(out, kernel.values().row(i), n);
}

StepFunction read_step(std::istream& in) {
  std::string line = next_line(in);
  if (!starts_with(line, "parts:")) throw Error(ErrorCode::Parse, "expected 'parts: s'");
  auto s_vals = parse_values<long>(line.substr(6));
  if (s_vals.size() != 1 || s_vals[0] <= 0) throw Error(ErrorCode::Parse, "bad part count");
  const int s = static_cast<int>(s_vals[0]);
  auto labels = parse_values<int>(next_line(in));
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw Error(ErrorCode::Parse, "no part labels");
  line = next_line(in);
  Vector weights = Vector::Constant(n, 1.0 / n);
  if (starts_with(line, "weights:")) {
    weights = parse_weights(line, n);
    line.clear();
  }
  Matrix block = parse_rows(in, s, line);
  return StepFunction(DiscreteSpace(weights), std::move(labels), block);
}

void write_step(std::ostream& out, const StepFunction& sf) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "parts: " << sf.parts() << '\n';
  write_row(out, sf.part_of(), static_cast<Eigen::Index>(sf.part_of().size()));
  if (!sf.space().is_uniform()) {
    out << "weights: ";
    write_row(out, sf.space().weights(), sf.space().size());
  }
  for (int i = 0; i < sf.parts(); ++i) write_row(out, sf.block().row(i), sf.parts());
}

SimpleGraph read_graph(std::istream& in) {
  auto header = parse_values<int>(next_line(in));
  if (header.size() != 2) throw Error(ErrorCode::Parse, "expected 'k m'");
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < header[1]; ++e) {
    auto uv = parse_values<int>(next_line(in));
    if (uv.size() != 2) throw Error(ErrorCode::Parse, "expected 'u v'");
    edges.emplace_back(uv[0] - 1, uv[1] - 1);
  }
  return SimpleGraph(header[0], std::move(edges));
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << g.vertices() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

Kernel load_kernel(const std::filesystem::path& path) {
  auto in = open(path);
  return read_kernel(in);
}

StepFunction load_step(const std::filesystem::path& path) {
  auto in = open(path);
  return read_step(in);
}

SimpleGraph load_graph(const std::filesystem::path& path) {
  auto in = open(path);
  return read_graph(in);
}

bool is_step_file(const std::filesystem::path& path) {
  auto in = open(path);
  try {
    return starts_with(next_line(in), "parts:");
  } catch (const Error&) {
    return false;
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace graphon::io
