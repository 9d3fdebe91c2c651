#pragma once

#include <iosfwd>
#include <string>

#include "sleeping/core.hpp"

namespace sleeping {

// Line-delimited trace format. The first record is a header object carrying
// N, K, T and zero_count_class; every following line is one round with fields
// t, available and loss.
void write_trace(std::ostream& out, const Environment& env);
void write_trace_file(const std::string& path, const Environment& env);

// Throws std::runtime_error with the offending line number on malformed input.
Environment read_trace(std::istream& in);
Environment read_trace_file(const std::string& path);

}  // namespace sleeping
