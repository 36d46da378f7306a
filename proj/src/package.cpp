#include "spreadersim/package.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <system_error>

namespace spreadersim {

namespace {

// Slack for FP noise in tiling geometry: areas in m^2, lengths in m.
constexpr double kAreaTol = 1e-12;
constexpr double kLengthTol = 1e-9;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& field, std::size_t line_no, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + field + "'");
    return v;
}

// Strips comments/blanks, keeps 1-based line numbers for messages.
std::vector<std::pair<std::size_t, std::string>> csv_rows(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> rows;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        rows.emplace_back(line_no, line);
    }
    return rows;
}

double overlap_area(const Block& a, const Block& b) {
    double w = std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x);
    double h = std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y);
    return std::max(0.0, w) * std::max(0.0, h);
}

} // namespace

Extent PackageConfig::grid_extent() const {
    Extent e;
    for (const auto& l : layers) {
        e.width = std::max(e.width, l.extent.width);
        e.height = std::max(e.height, l.extent.height);
    }
    return e;
}

std::size_t PackageConfig::layer_index(std::string_view name) const {
    for (std::size_t i = 0; i < layers.size(); ++i)
        if (layers[i].name == name) return i;
    throw ValidationError("no layer named '" + std::string(name) + "'");
}

void validate(const MaterialProps& m, std::string_view context) {
    if (!(m.conductivity > 0.0))
        throw ValidationError(std::string(context) + ": conductivity must be positive");
    if (!(m.volumetric_heat_capacity > 0.0))
        throw ValidationError(std::string(context) + ": volumetric heat capacity must be positive");
}

void validate(const PackageConfig& pkg) {
    if (pkg.layers.size() < 2)
        throw ValidationError("package needs at least 2 layers (die first)");
    for (const auto& l : pkg.layers) {
        if (!(l.thickness > 0.0))
            throw ValidationError("layer '" + l.name + "': thickness must be positive");
        if (!(l.extent.width > 0.0) || !(l.extent.height > 0.0))
            throw ValidationError("layer '" + l.name + "': extent must be positive");
        validate(l.material, "layer '" + l.name + "' material");
        validate(l.filler, "layer '" + l.name + "' filler");
    }
    std::set<std::string> names;
    for (const auto& l : pkg.layers)
        if (!names.insert(l.name).second)
            throw ValidationError("duplicate layer name '" + l.name + "'");
    Extent grid = pkg.grid_extent();
    const Extent& die = pkg.layers.front().extent;
    if (die.width > grid.width + kLengthTol || die.height > grid.height + kLengthTol)
        throw ValidationError("die extent exceeds the grid footprint");
    bool spans = std::any_of(pkg.layers.begin(), pkg.layers.end(), [&](const Layer& l) {
        return std::abs(l.extent.width - grid.width) <= kLengthTol &&
               std::abs(l.extent.height - grid.height) <= kLengthTol;
    });
    if (!spans)
        throw ValidationError("no layer spans the full grid footprint");
    if (!(pkg.sink_convection_resistance_total > 0.0))
        throw ValidationError("sink convection resistance must be positive");
}

PackageConfig default_package() {
    const MaterialProps silicon{100.0, 1.75e6};
    const MaterialProps tim{4.0, 4.0e6};
    const MaterialProps copper{400.0, 3.55e6};
    const MaterialProps filler{0.25, 2.0e6}; // underfill/air stand-in

    PackageConfig pkg;
    pkg.layers = {
        {"die", 0.15e-3, silicon, {16e-3, 16e-3}, filler},
        {"tim", 50e-6, tim, {16e-3, 16e-3}, filler},
        {"spreader", 1e-3, copper, {30e-3, 30e-3}, filler},
        {"sink_base", 6.9e-3, copper, {30e-3, 30e-3}, filler},
    };
    pkg.sink_convection_resistance_total = 0.1;
    pkg.ambient_temperature = 45.0;
    return pkg;
}

void validate(const Floorplan& fp) {
    std::set<std::string> names;
    for (const auto& b : fp.blocks) {
        if (b.name.empty())
            throw ValidationError("floorplan block with empty name");
        if (!names.insert(b.name).second)
            throw ValidationError("duplicate block name '" + b.name + "'");
        if (!(b.width > 0.0) || !(b.height > 0.0))
            throw ValidationError("block '" + b.name + "': width and height must be positive");
    }
    for (std::size_t i = 0; i < fp.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < fp.blocks.size(); ++j)
            if (overlap_area(fp.blocks[i], fp.blocks[j]) > kAreaTol)
                throw ValidationError("overlap between blocks '" + fp.blocks[i].name +
                                      "' and '" + fp.blocks[j].name + "'");
}

void validate(const Floorplan& fp, const Extent& die_extent) {
    validate(fp);
    for (const auto& b : fp.blocks) {
        if (b.x < -kLengthTol || b.y < -kLengthTol ||
            b.x + b.width > die_extent.width + kLengthTol ||
            b.y + b.height > die_extent.height + kLengthTol)
            throw ValidationError("block '" + b.name + "' lies outside the die extent");
    }
}

void validate(const PowerMap& pm, const Floorplan& fp) {
    std::set<std::string> names;
    for (const auto& b : fp.blocks) names.insert(b.name);
    for (const auto& [name, watts] : pm) {
        if (!names.count(name))
            throw ValidationError("power map names unknown block '" + name + "'");
        if (watts < 0.0)
            throw ValidationError("block '" + name + "': power must be non-negative");
    }
}

Floorplan parse_floorplan(const std::string& text) {
    auto rows = csv_rows(text);
    if (rows.empty())
        throw ParseError("floorplan CSV is empty");
    if (split_fields(rows.front().second) != std::vector<std::string>{"name", "x", "y", "w", "h"})
        throw ParseError("line " + std::to_string(rows.front().first) +
                         ": expected header 'name,x,y,w,h'");
    Floorplan fp;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [line_no, line] = rows[r];
        auto fields = split_fields(line);
        if (fields.size() != 5)
            throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
        Block b;
        b.name = fields[0];
        b.x = parse_number(fields[1], line_no, "x");
        b.y = parse_number(fields[2], line_no, "y");
        b.width = parse_number(fields[3], line_no, "w");
        b.height = parse_number(fields[4], line_no, "h");
        fp.blocks.push_back(std::move(b));
    }
    validate(fp);
    return fp;
}

Floorplan parse_floorplan(const std::string& text, const Extent& die_extent) {
    Floorplan fp = parse_floorplan(text);
    validate(fp, die_extent);
    return fp;
}

std::string serialize_floorplan(const Floorplan& fp) {
    std::string out = "name,x,y,w,h\n";
    for (const auto& b : fp.blocks) {
        out += b.name;
        out += ',';
        out += format_double(b.x);
        out += ',';
        out += format_double(b.y);
        out += ',';
        out += format_double(b.width);
        out += ',';
        out += format_double(b.height);
        out += '\n';
    }
    return out;
}

Floorplan make_grid_floorplan(std::size_t rows, std::size_t cols, const Extent& die_extent) {
    if (rows == 0 || cols == 0)
        throw ValidationError("grid floorplan needs at least one row and column");
    if (!(die_extent.width > 0.0) || !(die_extent.height > 0.0))
        throw ValidationError("grid floorplan needs a positive die extent");
    const double w = die_extent.width / static_cast<double>(cols);
    const double h = die_extent.height / static_cast<double>(rows);
    Floorplan fp;
    fp.blocks.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            Block b;
            b.name = "c" + std::to_string(r) + "_" + std::to_string(c);
            b.x = die_extent.width * static_cast<double>(c) / static_cast<double>(cols);
            b.y = die_extent.height * static_cast<double>(r) / static_cast<double>(rows);
            b.width = w;
            b.height = h;
            fp.blocks.push_back(std::move(b));
        }
    }
    validate(fp, die_extent);
    return fp;
}

PowerMap parse_power_map(const std::string& text) {
    auto rows = csv_rows(text);
    if (rows.empty())
        throw ParseError("power map CSV is empty");
    if (split_fields(rows.front().second) != std::vector<std::string>{"name", "watts"})
        throw ParseError("line " + std::to_string(rows.front().first) +
                         ": expected header 'name,watts'");
    PowerMap pm;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [line_no, line] = rows[r];
        auto fields = split_fields(line);
        if (fields.size() != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected 2 fields, got " +
                             std::to_string(fields.size()));
        double watts = parse_number(fields[1], line_no, "watts");
        if (watts < 0.0)
            throw ValidationError("line " + std::to_string(line_no) + ": block '" + fields[0] +
                                  "': power must be non-negative");
        if (!pm.emplace(fields[0], watts).second)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate block '" +
                                  fields[0] + "'");
    }
    return pm;
}

} // namespace spreadersim
