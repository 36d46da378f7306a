#include "spreadersim/reliability.hpp"

#include <cmath>

#include "spreadersim/errors.hpp"

namespace spreadersim {

namespace {

constexpr double kCelsiusToKelvin = 273.15;

double to_kelvin(double t_c) {
    const double t_k = t_c + kCelsiusToKelvin;
    if (!(t_k > 0.0)) throw ValidationError("temperature below absolute zero");
    return t_k;
}

} // namespace

double mttf_em_ratio(double t_c, double t_ref_c, const MttfParams& p) {
    const double t = to_kelvin(t_c);
    const double t_ref = to_kelvin(t_ref_c);
    if (t_c == t_ref_c) return 1.0;
    return std::exp(p.ea_em / p.boltzmann * (1.0 / t - 1.0 / t_ref));
}

double mttf_tc_ratio(double t_c, double t_ref_c, double t_amb_c, const MttfParams& p) {
    if (!(t_c > t_amb_c))
        throw ValidationError("thermal cycling needs t above ambient");
    if (!(t_ref_c > t_amb_c))
        throw ValidationError("thermal cycling needs t_ref above ambient");
    if (t_c == t_ref_c) return 1.0;
    return std::pow((t_ref_c - t_amb_c) / (t_c - t_amb_c), p.q_tc);
}

double mttf_sm_ratio(double t_c, double t_ref_c, const MttfParams& p) {
    const double t = to_kelvin(t_c);
    const double t_ref = to_kelvin(t_ref_c);
    if (t >= p.t_metal_sm || t_ref >= p.t_metal_sm)
        throw ValidationError("stress migration needs temperatures below the metal deposition point");
    if (t_c == t_ref_c) return 1.0;
    // MTTF_SM ~ |T_metal - T|^-n exp(Ea / (kB T)), evaluated at both points.
    const double stress = std::pow(std::abs(p.t_metal_sm - t) / std::abs(p.t_metal_sm - t_ref),
                                   -p.n_sm);
    return stress * std::exp(p.ea_sm / p.boltzmann * (1.0 / t - 1.0 / t_ref));
}

MttfReport report(const std::map<std::string, double>& temps_by_core_baseline,
                  const std::map<std::string, double>& temps_by_core_loaded,
                  double t_amb_c, const MttfParams& p) {
    if (temps_by_core_baseline.size() != temps_by_core_loaded.size())
        throw ValidationError("baseline and loaded core sets differ in size");

    MttfReport out;
    auto bl = temps_by_core_baseline.begin();
    auto ld = temps_by_core_loaded.begin();
    for (; bl != temps_by_core_baseline.end(); ++bl, ++ld) {
        if (bl->first != ld->first)
            throw ValidationError("baseline and loaded core sets name different cores ('" +
                                  bl->first + "' vs '" + ld->first + "')");
        const double t_ref = bl->second;
        const double t = ld->second;
        MttfRatios r;
        r.em = mttf_em_ratio(t, t_ref, p);
        r.sm = mttf_sm_ratio(t, t_ref, p);
        // A baseline at ambient gives a zero reference cycle amplitude; no
        // finite normalization exists, so that case reports 1. The threshold
        // sits far above solver noise so a baseline that lands within
        // rounding of ambient stays on the degenerate branch.
        constexpr double kAmplitudeFloor = 1e-9; // K
        if (t_ref - t_amb_c > kAmplitudeFloor && t - t_amb_c > kAmplitudeFloor)
            r.tc = mttf_tc_ratio(t, t_ref, t_amb_c, p);
        else
            r.tc = 1.0;
        out.emplace(bl->first, r);
    }
    return out;
}

} // namespace spreadersim
