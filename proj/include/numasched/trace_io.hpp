#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "numasched/workload.hpp"

namespace numasched {

// Line-oriented text format, version 1:
//
//   numa-trace v1
//   N=<n> L=<l> K=<k> Q=<q>
//   quantum <1-based index>
//   <N lines of N comma-separated c2c counts>
//   dram
//   <N lines of L comma-separated DRAM counts>
//   ... repeated for every quantum
//
// No trailing whitespace; every line ends with '\n'.

void write_trace(std::ostream& out, const Trace& trace);
std::string format_trace(const Trace& trace);

/// Strict parser; throws ParseError naming the offending line.
Trace parse_trace(std::istream& in);
Trace parse_trace(const std::string& text);

Trace read_trace_file(const std::filesystem::path& path);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

}  // namespace numasched
