#include "gppa/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace gppa {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

const char* kHeader = "k,f_value,step_norm,descent_gap,criticality_residual";

double parse_double(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("trace csv: bad numeric field '" + field + "' on line " +
                             std::to_string(line_no));
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  const bool with_points =
      !trace.records.empty() && trace.records.front().x.has_value();
  out << kHeader;
  if (with_points) {
    const Index n = trace.records.front().x->size();
    for (Index i = 0; i < n; ++i) out << ",x_" << i;
  }
  out << '\n';
  for (const auto& rec : trace.records) {
    out << rec.k << ',' << format_double(rec.f_value) << ','
        << format_double(rec.step_norm) << ',' << format_double(rec.descent_gap)
        << ',' << format_double(rec.criticality_residual);
    if (with_points) {
      for (Index i = 0; i < rec.x->size(); ++i) out << ',' << format_double((*rec.x)[i]);
    }
    out << '\n';
  }
}

void write_trace_csv_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  write_trace_csv(trace, out);
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

ParsedTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv(line);
  const auto expected = split_csv(kHeader);
  if (header.size() < expected.size()) {
    throw std::runtime_error("trace csv: header mismatch, expected it to start with '" +
                             std::string(kHeader) + "'");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (header[i] != expected[i]) {
      throw std::runtime_error("trace csv: header column " + std::to_string(i) +
                               " is '" + header[i] + "', expected '" + expected[i] + "'");
    }
  }
  ParsedTrace parsed;
  const std::size_t extra = header.size() - expected.size();
  if (extra > 0) {
    for (std::size_t i = 0; i < extra; ++i) {
      if (header[expected.size() + i] != "x_" + std::to_string(i)) {
        throw std::runtime_error("trace csv: unexpected column '" +
                                 header[expected.size() + i] + "'");
      }
    }
    parsed.point_dim = static_cast<Index>(extra);
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("trace csv: wrong field count on line " +
                               std::to_string(line_no));
    }
    IterationRecord rec;
    rec.k = static_cast<std::int64_t>(parse_double(fields[0], line_no));
    rec.f_value = parse_double(fields[1], line_no);
    rec.step_norm = parse_double(fields[2], line_no);
    rec.descent_gap = parse_double(fields[3], line_no);
    rec.criticality_residual = parse_double(fields[4], line_no);
    if (parsed.point_dim > 0) {
      Vector x(parsed.point_dim);
      for (Index i = 0; i < parsed.point_dim; ++i) {
        x[i] = parse_double(fields[5 + static_cast<std::size_t>(i)], line_no);
      }
      rec.x = std::move(x);
    }
    parsed.records.push_back(std::move(rec));
  }
  if (parsed.records.empty()) throw std::runtime_error("trace csv: no records");
  return parsed;
}

ParsedTrace read_trace_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return read_trace_csv(in);
}

nlohmann::json to_json(const SolverConfig& config) {
  nlohmann::json j;
  j["t"] = config.t;
  j["epsilon"] = config.epsilon;
  j["max_iters"] = config.max_iters;
  j["g1_convex_stepsize"] = config.g1_convex_stepsize;
  if (config.descent_tolerance) {
    j["descent_tolerance"] = *config.descent_tolerance;
  } else {
    j["descent_tolerance"] = nullptr;
  }
  j["record_full_points"] = config.record_full_points;
  j["relative_stopping"] = config.relative_stopping;
  return j;
}

nlohmann::json to_json(const RateReport& report) {
  nlohmann::json j;
  j["regime"] = to_string(report.regime);
  j["q"] = report.q ? nlohmann::json(*report.q) : nlohmann::json(nullptr);
  j["exponent"] = report.exponent ? nlohmann::json(*report.exponent) : nlohmann::json(nullptr);
  j["theta_hat"] = report.theta_hat ? nlohmann::json(*report.theta_hat) : nlohmann::json(nullptr);
  j["fit_r2"] = report.fit_r2;
  j["tail_start"] = report.tail_start;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

nlohmann::json to_json(const DescentReport& report, bool include_gaps) {
  nlohmann::json j;
  j["factor"] = report.factor;
  j["tolerance"] = report.tolerance;
  j["violations"] = report.violations;
  j["min_gap"] = report.min_gap;
  j["checked"] = report.gaps.size();
  if (include_gaps) j["gaps"] = report.gaps;
  return j;
}

}  // namespace gppa
