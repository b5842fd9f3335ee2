#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zlab/experiments.hpp"

namespace zlab {

// Shortest round-trip decimal form, '.' decimal point, locale-independent.
std::string format_double(double x);

// Header block echoed into every artifact for provenance.
struct OutputMeta {
    std::string tool_version;
    std::vector<std::pair<std::string, std::string>> config;  // ordered echo
};

// CSV: '#'-prefixed meta lines, then
//   experiment_id,<param keys of the first record>,value_re,value_im,bound,ratio,notes
// and one row per record. All records must share the same param keys.
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records,
               const OutputMeta& meta);

// JSON mirror: {"meta": {...}, "records": [ {...}, ... ]}.
void write_json(std::ostream& os, const std::vector<ExperimentRecord>& records,
                const OutputMeta& meta);

}  // namespace zlab
