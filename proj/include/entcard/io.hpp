#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "entcard/descent.hpp"
#include "entcard/experiments.hpp"
#include "entcard/verify.hpp"

// Stable on-disk formats. Floats are serialized with 17 significant digits
// (round-trip exact for doubles), so identical runs produce byte-identical
// files.

namespace entcard {

// Shortest 17-significant-digit decimal form of a double.
std::string format_double(double value);

enum class OutputFormat { csv, json_lines };

inline constexpr const char* kTrajectoryCsvHeader =
    "t,entropy,total_mass,cardinality,masses,clamped_indices";
inline constexpr const char* kFigure1CsvHeader =
    "p0,p1,p2,entropy,nonzero_count,seed";
inline constexpr const char* kFigure23CsvHeader =
    "s,m,entropy,expected_cardinality,seed";

// One StepRecord per line with fields (t, masses[], entropy, total_mass,
// cardinality, expected_cardinalities{}, clamped_indices[]), plus a final
// termination_reason line.
void write_trajectory_json_lines(std::ostream& out, const Trajectory& traj);

// CSV alternative; list-valued fields are ';'-joined inside one cell.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

void write_figure1_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records);
void write_figure23_csv(std::ostream& out,
                        const std::vector<ExperimentRecord>& records);

// One "pass"/"FAIL" line per invariant check.
void write_reports(std::ostream& out,
                   const std::vector<InvariantReport>& reports);

const char* to_string(TerminationReason reason);

}  // namespace entcard
