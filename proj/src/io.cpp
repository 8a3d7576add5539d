#include "entcard/io.hpp"

#include <cstdio>

namespace entcard {

namespace {

void append_joined(std::string& line, const std::vector<double>& values,
                   char separator) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += separator;
    line += format_double(values[i]);
  }
}

void append_joined(std::string& line, const std::vector<std::size_t>& values,
                   char separator) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += separator;
    line += std::to_string(values[i]);
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::cardinality_one: return "cardinality_one";
    case TerminationReason::max_steps: return "max_steps";
    case TerminationReason::fixed_point: return "fixed_point";
  }
  return "unknown";
}

void write_trajectory_json_lines(std::ostream& out, const Trajectory& traj) {
  for (const StepRecord& rec : traj.steps) {
    std::string line = "{\"t\":" + std::to_string(rec.t) + ",\"masses\":[";
    append_joined(line, rec.masses.values(), ',');
    line += "],\"entropy\":" + format_double(rec.entropy);
    line += ",\"total_mass\":" + format_double(rec.total_mass);
    line += ",\"cardinality\":" + std::to_string(rec.cardinality);
    line += ",\"expected_cardinalities\":{";
    bool first = true;
    for (const auto& [m, u] : rec.expected_cardinalities) {
      if (!first) line += ",";
      first = false;
      line += "\"" + std::to_string(m) + "\":" + format_double(u);
    }
    line += "},\"clamped_indices\":[";
    append_joined(line, rec.clamped_indices, ',');
    line += "]}";
    out << line << "\n";
  }
  out << "{\"termination_reason\":\"" << to_string(traj.termination_reason)
      << "\"}\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << kTrajectoryCsvHeader << "\n";
  for (const StepRecord& rec : traj.steps) {
    std::string line = std::to_string(rec.t);
    line += "," + format_double(rec.entropy);
    line += "," + format_double(rec.total_mass);
    line += "," + std::to_string(rec.cardinality);
    line += ",";
    append_joined(line, rec.masses.values(), ';');
    line += ",";
    append_joined(line, rec.clamped_indices, ';');
    out << line << "\n";
  }
  out << "# termination_reason=" << to_string(traj.termination_reason) << "\n";
}

void write_figure1_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records) {
  out << kFigure1CsvHeader << "\n";
  for (const ExperimentRecord& rec : records) {
    out << format_double(rec.probabilities[0]) << ','
        << format_double(rec.probabilities[1]) << ','
        << format_double(rec.probabilities[2]) << ','
        << format_double(rec.entropy) << ',' << rec.nonzero_count << ','
        << rec.seed << "\n";
  }
}

void write_figure23_csv(std::ostream& out,
                        const std::vector<ExperimentRecord>& records) {
  out << kFigure23CsvHeader << "\n";
  for (const ExperimentRecord& rec : records) {
    out << rec.s << ',' << rec.m << ',' << format_double(rec.entropy) << ','
        << format_double(rec.expected_cardinality) << ',' << rec.seed << "\n";
  }
}

void write_reports(std::ostream& out,
                   const std::vector<InvariantReport>& reports) {
  for (const InvariantReport& report : reports) {
    out << (report.passed() ? "pass" : "FAIL") << " " << report.check_name
        << " trials=" << report.trials << " failures=" << report.failures;
    if (!report.passed()) {
      out << " counterexample: " << report.first_counterexample;
    }
    out << "\n";
  }
}

}  // namespace entcard
