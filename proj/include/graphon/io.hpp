#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "graphon/core.hpp"

namespace graphon::io {

// Matrix format:   n
//                  [weights: w1 ... wn]
//                  n rows of n values
// Step format:     parts: s
//                  n part labels (0-based)
//                  [weights: w1 ... wn]
//                  s rows of s block values
// Graph format:    k m
//                  m lines "u v", 1-based

Kernel read_kernel(std::istream& in);
void write_kernel(std::ostream& out, const Kernel& kernel);

StepFunction read_step(std::istream& in);
void write_step(std::ostream& out, const StepFunction& sf);

SimpleGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const SimpleGraph& g);

Kernel load_kernel(const std::filesystem::path& path);
StepFunction load_step(const std::filesystem::path& path);
SimpleGraph load_graph(const std::filesystem::path& path);

/// True when the file starts with a "parts:" header.
bool is_step_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace graphon::io
