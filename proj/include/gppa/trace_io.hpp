#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gppa/diagnostics.hpp"
#include "gppa/solver.hpp"

namespace gppa {

// Shortest decimal that round-trips the exact double.
std::string format_double(double v);

// CSV schema: header `k,f_value,step_norm,descent_gap,criticality_residual`,
// plus `x_0..x_{n-1}` columns when the trace carries points.
void write_trace_csv(const Trace& trace, std::ostream& out);
void write_trace_csv_file(const Trace& trace, const std::string& path);

struct ParsedTrace {
  std::vector<IterationRecord> records;
  Index point_dim = -1;  // -1 when no point columns are present
};

// Throws std::runtime_error on schema or value errors.
ParsedTrace read_trace_csv(std::istream& in);
ParsedTrace read_trace_csv_file(const std::string& path);

nlohmann::json to_json(const SolverConfig& config);
nlohmann::json to_json(const RateReport& report);
nlohmann::json to_json(const DescentReport& report, bool include_gaps = false);

}  // namespace gppa
