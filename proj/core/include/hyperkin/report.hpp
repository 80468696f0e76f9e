#pragma once

#include <string>

#include "hyperkin/runner.hpp"

namespace hyperkin {

// Full machine-readable report, schema "hyperkin-report/1". Object keys are
// emitted in sorted order and every float is printed with "%.17g", so equal
// runs serialize to identical bytes and re-reading reproduces the doubles.
std::string report_json(const RunResult& r);

// One row per grid point plus the run-level aggregates repeated as trailing
// columns; RFC 4180 quoting, CRLF line ends, header row first.
std::string report_csv(const RunResult& r);

// Writes to the path, or to `fallback` when path is empty.
void write_report_file(const std::string& text, const std::string& path);

}  // namespace hyperkin
