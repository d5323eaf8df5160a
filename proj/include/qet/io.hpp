#pragma once

#include <string>
#include <vector>

#include "qet/analysis.hpp"

namespace qet {

// Shortest decimal that round-trips a double (printf %.17g).
std::string format_double(double v);

// Comma-separated values, LF line endings, header row = the column names of
// SweepRow in order. Every row passes check_row_invariants before anything
// is written. Throws IoError when the file cannot be written.
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

// Inverse of write_sweep_csv: parses the header (must match exactly) and the
// numeric rows. Throws IoError on missing file or malformed content.
std::vector<SweepRow> read_sweep_csv(const std::string& path);

// Full single-point report as a JSON object: the row quantities under their
// column names, the applied angle and its extracted energy, the (X, Y)
// coefficients, and a "state" object carrying the ground-state data, the
// outcome probabilities, the reduced states and their effective-Hamiltonian
// readings. All numbers carry 17 significant digits.
std::string point_report_json(const PointAnalysis& pa);

// CSV for the two-qubit model curve: h, EB_max, dSB, dSB_tilde plus the
// convex-bound columns two_thirds_dSB = (2/3) dSB and half_dSB_tilde =
// (1/2) dSB_tilde.
void write_minimal_csv(const std::string& path,
                       const std::vector<MinimalCurvePoint>& curve);

}  // namespace qet
