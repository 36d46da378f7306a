#pragma once

#include <map>
#include <string>

namespace spreadersim {

/// Normalized-MTTF model constants. The defaults follow the standard
/// electromigration / thermal-cycling / stress-migration forms; every value
/// can be overridden through the `mttf` config section.
struct MttfParams {
    double ea_em = 0.9;          // eV
    double ea_sm = 0.9;          // eV
    double n_sm = 2.5;
    double t_metal_sm = 500.0;   // K, stress-free metal deposition temp
    double q_tc = 2.35;          // Coffin-Manson exponent
    double boltzmann = 8.617e-5; // eV/K
};

struct MttfRatios {
    double em = 1.0;
    double tc = 1.0;
    double sm = 1.0;
};

using MttfReport = std::map<std::string, MttfRatios>; // core name -> ratios

/// MTTF_EM ~ exp(Ea / (kB T)) at fixed current density;
/// returns exp(Ea/kB (1/T - 1/T_ref)) with temperatures in K.
double mttf_em_ratio(double t_c, double t_ref_c, const MttfParams& p = {});

/// Coffin-Manson with the steady rise as amplitude proxy:
/// MTTF_TC ~ (T - T_amb)^-q, ratio ((t_ref - t_amb)/(t - t_amb))^q.
/// Throws ValidationError unless both t and t_ref exceed t_amb.
double mttf_tc_ratio(double t_c, double t_ref_c, double t_amb_c, const MttfParams& p = {});

/// MTTF_SM ~ |T_metal - T|^-n exp(Ea / (kB T)); ratio of the two
/// evaluations. Throws ValidationError when T reaches t_metal_sm.
double mttf_sm_ratio(double t_c, double t_ref_c, const MttfParams& p = {});

/// Per-core ratios of the loaded state against the baseline state, baseline
/// temperature acting as t_ref. When the baseline sits at ambient the
/// thermal-cycling reference amplitude is zero and no finite normalization
/// exists; cycle amplitudes under 1e-9 K count as zero and report tc = 1.
/// Throws ValidationError on key mismatch.
MttfReport report(const std::map<std::string, double>& temps_by_core_baseline,
                  const std::map<std::string, double>& temps_by_core_loaded,
                  double t_amb_c, const MttfParams& p = {});

} // namespace spreadersim
