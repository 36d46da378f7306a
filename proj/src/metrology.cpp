#include "spreadersim/metrology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "spreadersim/errors.hpp"

namespace spreadersim {

namespace {

double anchor_error(double gain, double raw_ice, double raw_boil,
                    const CalibrationReference& ref) {
    const double offset = ref.ice_point - gain * raw_ice;
    return std::abs(gain * raw_boil + offset - ref.boiling_point);
}

const char* position_name(Position p) {
    switch (p) {
        case Position::TCT: return "TCT";
        case Position::TCL: return "TCL";
        case Position::TCB: return "TCB";
        case Position::TCR: return "TCR";
        case Position::CPU: return "CPU";
    }
    return "?";
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        auto b = field.find_first_not_of(" \t");
        auto e = field.find_last_not_of(" \t");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

} // namespace

CalibrationCurve two_point_calibration(double raw_ice, double raw_boil,
                                       const CalibrationReference& ref) {
    if (!(ref.boiling_point > ref.ice_point))
        throw ValidationError("calibration reference needs boiling above ice point");
    if (!(raw_boil > raw_ice))
        throw ValidationError("calibration needs raw boiling reading above raw ice reading");

    double gain = (ref.boiling_point - ref.ice_point) / (raw_boil - raw_ice);
    // The rounded quotient can leave the boiling anchor 2 ulp off; a one-ulp
    // neighbour may fit it better. The ice anchor cancels exactly for any
    // gain, so only the boiling error decides.
    const double inf = std::numeric_limits<double>::infinity();
    for (double candidate : {std::nextafter(gain, -inf), std::nextafter(gain, inf)}) {
        if (anchor_error(candidate, raw_ice, raw_boil, ref) <
            anchor_error(gain, raw_ice, raw_boil, ref))
            gain = candidate;
    }
    return {gain, ref.ice_point - gain * raw_ice};
}

double apply_calibration(const CalibrationCurve& curve, double raw) {
    // Plain multiply-add; a fused operation would move the ice anchor off zero.
    return curve.gain * raw + curve.offset;
}

double interchange_correct(double delta_forward, double delta_swapped) {
    return (delta_forward - delta_swapped) / 2.0;
}

std::string to_string(Position p) { return position_name(p); }

Position position_from_string(const std::string& s) {
    for (Position p : {Position::TCT, Position::TCL, Position::TCB, Position::TCR, Position::CPU})
        if (s == position_name(p)) return p;
    throw ParseError("unknown thermocouple position '" + s + "'");
}

SpreadStats spread_stats(const SpreaderReadingSet& rs) {
    if (rs.readings.size() < 2)
        throw ValidationError("spread statistics need at least 2 readings ('" + rs.label + "')");

    // Canonical pair order follows the physical tour TCT, TCL, TCB, TCR.
    std::vector<std::pair<Position, double>> ordered;
    for (Position p : {Position::TCT, Position::TCL, Position::TCB, Position::TCR}) {
        auto it = rs.readings.find(p);
        if (it != rs.readings.end()) ordered.emplace_back(p, it->second);
    }

    SpreadStats stats;
    double sum = 0.0;
    for (const auto& [p, t] : ordered) sum += t;
    stats.mean = sum / static_cast<double>(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            const double diff = ordered[i].second - ordered[j].second;
            stats.per_pair.emplace(
                std::string(position_name(ordered[i].first)) + "-" + position_name(ordered[j].first),
                diff);
            stats.max_pair_diff = std::max(stats.max_pair_diff, std::abs(diff));
        }
    }
    return stats;
}

std::vector<SpreaderReadingSet> parse_readings_csv(const std::string& text) {
    std::vector<SpreaderReadingSet> sets;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto fields = split_fields(line);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"label", "position", "temp_c"})
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header 'label,position,temp_c'");
            saw_header = true;
            continue;
        }
        if (fields.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 3 fields 'label,position,temp_c'");
        const std::string& label = fields[0];
        double value = 0.0;
        const std::string& temp = fields[2];
        auto [ptr, ec] = std::from_chars(temp.data(), temp.data() + temp.size(), value);
        if (ec != std::errc() || ptr != temp.data() + temp.size())
            throw ParseError("line " + std::to_string(line_no) + ": bad temperature '" + temp + "'");

        auto it = std::find_if(sets.begin(), sets.end(),
                               [&](const SpreaderReadingSet& s) { return s.label == label; });
        if (it == sets.end()) {
            sets.push_back(SpreaderReadingSet{{}, std::nullopt, label});
            it = std::prev(sets.end());
        }
        const Position p = position_from_string(fields[1]);
        if (p == Position::CPU) {
            it->cpu_center = value;
        } else if (!it->readings.emplace(p, value).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate position '" +
                             fields[1] + "' for label '" + label + "'");
        }
    }
    if (!saw_header) throw ParseError("readings CSV is empty");
    return sets;
}

ConductivityResult comparative_conductivity(const ConductivityExperiment& exp) {
    const std::pair<const ConductivitySegment*, const char*> segments[] = {
        {&exp.w1, "w1"}, {&exp.sp, "sp"}, {&exp.w2, "w2"}};
    for (const auto& [seg, name] : segments) {
        if (!(seg->area > 0.0) || !(seg->length > 0.0))
            throw ValidationError(std::string("segment ") + name + ": geometry must be positive");
    }
    if (!(exp.kappa_c > 0.0))
        throw ValidationError("reference conductivity must be positive");
    if (!(exp.sp.delta_t > 0.0))
        throw ValidationError("degenerate experiment: sample temperature drop must be positive");

    // Constant heat flow: kappa_c dT_w A_w / L_w = kappa_sp dT_sp A_sp / L_sp.
    // Ratio form keeps the symmetric reference case exact.
    auto pair_with = [&](const ConductivitySegment& w) {
        return exp.kappa_c * (w.delta_t / exp.sp.delta_t) * (w.area / exp.sp.area) *
               (exp.sp.length / w.length);
    };
    ConductivityResult r;
    r.kappa_1 = pair_with(exp.w1);
    r.kappa_2 = pair_with(exp.w2);
    r.kappa_mean = (r.kappa_1 + r.kappa_2) / 2.0;
    r.mismatch = r.kappa_mean != 0.0 ? std::abs(r.kappa_1 - r.kappa_2) / r.kappa_mean : 0.0;
    return r;
}

ConductivityExperiment parse_conductivity_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("conductivity experiment: ") + e.what());
    }
    ConductivityExperiment exp;
    const std::pair<const char*, ConductivitySegment*> segments[] = {
        {"w1", &exp.w1}, {"sp", &exp.sp}, {"w2", &exp.w2}};
    try {
        exp.kappa_c = doc.value("kappa_c", exp.kappa_c);
        for (const auto& [key, seg] : segments) {
            if (!doc.contains(key))
                throw ParseError(std::string("conductivity experiment: missing segment '") + key +
                                 "'");
            const auto& s = doc.at(key);
            seg->area = s.at("area").get<double>();
            seg->length = s.at("length").get<double>();
            seg->delta_t = s.at("delta_t").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("conductivity experiment: ") + e.what());
    }
    return exp;
}

} // namespace spreadersim
