#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spreadersim {

struct CalibrationReference {
    double ice_point = 0.0;       // deg C
    double boiling_point = 99.304; // deg C, water at 987.56 mbar
    double pressure_mbar = 987.56; // context metadata
    double altitude_m = 216.0;     // context metadata
};

/// T_true = gain * T_raw + offset.
struct CalibrationCurve {
    double gain = 1.0;
    double offset = 0.0;
};

/// Linear two-point fit through the ice and boiling anchors. The ice anchor
/// maps back bit-exactly; the gain is the correctly rounded quotient or a
/// one-ulp neighbour, whichever reproduces the boiling anchor best.
CalibrationCurve two_point_calibration(double raw_ice, double raw_boil,
                                       const CalibrationReference& ref = {});

double apply_calibration(const CalibrationCurve& curve, double raw);

/// Forward/swapped differential average (d_fwd - d_swp) / 2; cancels any
/// additive per-thermocouple offset exactly.
double interchange_correct(double delta_forward, double delta_swapped);

/// Spreader-edge measurement positions.
enum class Position { TCT, TCL, TCB, TCR, CPU };

std::string to_string(Position p);
Position position_from_string(const std::string& s); // throws ParseError

struct SpreaderReadingSet {
    std::map<Position, double> readings; // TCT/TCL/TCB/TCR -> deg C
    std::optional<double> cpu_center;    // deg C
    std::string label;
};

struct SpreadStats {
    double max_pair_diff = 0.0;            // K
    double mean = 0.0;                     // deg C
    std::map<std::string, double> per_pair; // "TCT-TCB" -> T_first - T_second
};

/// Pairwise gradients across the spreader surface; needs >= 2 readings.
SpreadStats spread_stats(const SpreaderReadingSet& rs);

/// CSV columns `label,position,temp_c`; rows grouped by label in first-seen
/// order, position CPU feeds cpu_center.
std::vector<SpreaderReadingSet> parse_readings_csv(const std::string& text);

struct ConductivitySegment {
    double area = 0.0;    // m^2
    double length = 0.0;  // m
    double delta_t = 0.0; // K
};

/// Comparative cut-bar geometry: sample sandwiched between two reference
/// segments of known conductivity under one heat flow.
struct ConductivityExperiment {
    double kappa_c = 400.0; // W/(m K), reference (copper)
    ConductivitySegment w1, sp, w2;
};

struct ConductivityResult {
    double kappa_1 = 0.0;    // from the w1 pairing
    double kappa_2 = 0.0;    // from the w2 pairing
    double kappa_mean = 0.0; // (kappa_1 + kappa_2) / 2
    double mismatch = 0.0;   // |kappa_1 - kappa_2| / kappa_mean, quality metric
};

/// Solves the over-constrained heat-flow identity once against each
/// reference segment and reports the mean.
ConductivityResult comparative_conductivity(const ConductivityExperiment& exp);

/// JSON mirroring ConductivityExperiment field names.
ConductivityExperiment parse_conductivity_json(const std::string& text);

} // namespace spreadersim
