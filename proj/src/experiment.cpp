#include "spreadersim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "spreadersim/errors.hpp"

namespace spreadersim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::size_t center_cell(const ThermalNetwork& net) {
    const auto clamp_floor = [](double pos, double step, std::size_t n) {
        const auto i = static_cast<std::size_t>(std::max(0.0, std::floor(pos / step)));
        return std::min(i, n - 1);
    };
    const std::size_t ix =
        clamp_floor(net.grid.extent.width / 2.0, net.grid.cell_width(), net.grid.nx);
    const std::size_t iy =
        clamp_floor(net.grid.extent.height / 2.0, net.grid.cell_height(), net.grid.ny);
    return net.cell_index(0, ix, iy);
}

struct TrialStats {
    double mean_rise = 0.0, min_rise = 0.0, max_rise = 0.0;
    double em = 0.0, tc = 0.0, sm = 0.0;
};

} // namespace

std::string to_string(Selection s) {
    switch (s) {
        case Selection::Random: return "random";
        case Selection::ContiguousCorner: return "corner";
        case Selection::Checkerboard: return "checkerboard";
    }
    return "?";
}

Selection selection_from_string(const std::string& s) {
    if (s == "random") return Selection::Random;
    if (s == "corner") return Selection::ContiguousCorner;
    if (s == "checkerboard") return Selection::Checkerboard;
    throw ParseError("unknown selection policy '" + s + "' (random|corner|checkerboard)");
}

std::vector<std::size_t> ExperimentSpec::resolved_active_counts() const {
    if (!active_counts.empty()) return active_counts;
    std::vector<std::size_t> counts;
    for (std::size_t k = 1; k <= 7; ++k) {
        const std::size_t c = n_cores * k / 8;
        if (counts.empty() || counts.back() != c) counts.push_back(c);
    }
    return counts;
}

void validate(const ExperimentSpec& spec) {
    if (spec.n_cores == 0) throw ValidationError("experiment needs at least one core");
    if (spec.grid_nx < 2 || spec.grid_ny < 2)
        throw ValidationError("experiment grid must be at least 2x2");
    if (!(spec.center_rise_target >= 0.0) || !std::isfinite(spec.center_rise_target))
        throw ValidationError("center rise target must be finite and nonnegative");
    for (std::size_t c : spec.active_counts)
        if (c > spec.n_cores)
            throw ValidationError("active count " + std::to_string(c) + " exceeds the core count");
    if (spec.trials == 0) throw ValidationError("experiment needs at least one trial");
}

std::vector<std::size_t> select_corner(std::size_t n_cores, std::size_t n_active) {
    if (n_active > n_cores) throw ValidationError("active count exceeds the core count");
    std::vector<std::size_t> picked(n_active);
    std::iota(picked.begin(), picked.end(), std::size_t{0});
    return picked;
}

std::vector<std::size_t> select_checkerboard(std::size_t rows, std::size_t cols,
                                             std::size_t n_active) {
    const std::size_t n_cores = rows * cols;
    if (n_active > n_cores) throw ValidationError("active count exceeds the core count");
    std::vector<std::size_t> picked;
    picked.reserve(n_active);
    for (std::size_t parity = 0; parity < 2 && picked.size() < n_active; ++parity) {
        for (std::size_t r = 0; r < rows && picked.size() < n_active; ++r)
            for (std::size_t c = 0; c < cols && picked.size() < n_active; ++c)
                if ((r + c) % 2 == parity) picked.push_back(r * cols + c);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::vector<std::size_t> select_random(std::size_t n_cores, std::size_t n_active,
                                       std::uint64_t& state) {
    if (n_active > n_cores) throw ValidationError("active count exceeds the core count");
    std::vector<std::size_t> pool(n_cores);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_active; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(splitmix64(state) %
                                                           static_cast<std::uint64_t>(n_cores - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n_active);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::pair<std::size_t, std::size_t> core_grid_shape(std::size_t n_cores) {
    if (n_cores == 0) throw ValidationError("core grid needs at least one core");
    auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_cores)));
    while (rows > 1 && n_cores % rows != 0) --rows;
    return {rows == 0 ? 1 : rows, n_cores / std::max<std::size_t>(rows, 1)};
}

double calibrate_core_power(const PackageConfig& pkg, const Floorplan& fp,
                            const GridSpec& grid, double target_rise) {
    if (!(target_rise >= 0.0) || !std::isfinite(target_rise))
        throw ValidationError("target rise must be finite and nonnegative");
    if (fp.blocks.empty()) throw ValidationError("calibration needs at least one core block");
    if (target_rise == 0.0) return 0.0;

    const ThermalNetwork net = assemble_network(pkg, grid);
    PowerMap unit;
    for (const auto& b : fp.blocks) unit[b.name] = 1.0;
    const CellPowerVector cells = rasterize_power(unit, fp, grid, pkg);
    const auto [field, report] = solve_steady(net, cells, pkg.ambient_temperature);
    const double rise = field.temps[center_cell(net)] - pkg.ambient_temperature;
    if (!(rise > 0.0))
        throw SolverError("unit-power solve produced no positive center rise; "
                          "the network is broken");
    return target_rise / rise;
}

std::map<std::string, double>
block_mean_temperatures(const TemperatureField& field, const ThermalNetwork& net,
                        const Floorplan& fp, const PackageConfig& pkg) {
    if (field.temps.size() != net.n_cells())
        throw ValidationError("temperature field size does not match the network");

    const double dx = net.grid.cell_width();
    const double dy = net.grid.cell_height();
    const Extent die = pkg.die().extent;
    const double ox = (net.grid.extent.width - die.width) / 2.0;
    const double oy = (net.grid.extent.height - die.height) / 2.0;

    std::map<std::string, double> means;
    for (const auto& b : fp.blocks) {
        const double x0 = ox + b.x, x1 = x0 + b.width;
        const double y0 = oy + b.y, y1 = y0 + b.height;
        const auto first_ix = static_cast<std::size_t>(std::max(0.0, std::floor(x0 / dx)));
        const auto first_iy = static_cast<std::size_t>(std::max(0.0, std::floor(y0 / dy)));
        double weight_sum = 0.0, acc = 0.0;
        for (std::size_t iy = first_iy; iy < net.grid.ny; ++iy) {
            const double cy0 = static_cast<double>(iy) * dy;
            if (cy0 >= y1) break;
            for (std::size_t ix = first_ix; ix < net.grid.nx; ++ix) {
                const double cx0 = static_cast<double>(ix) * dx;
                if (cx0 >= x1) break;
                const double w = std::max(0.0, std::min(x1, cx0 + dx) - std::max(x0, cx0)) *
                                 std::max(0.0, std::min(y1, cy0 + dy) - std::max(y0, cy0));
                if (w <= 0.0) continue;
                weight_sum += w;
                acc += w * field.temps[net.cell_index(0, ix, iy)];
            }
        }
        if (!(weight_sum > 0.0))
            throw ValidationError("block '" + b.name + "' covers no grid cell");
        means[b.name] = acc / weight_sum;
    }
    return means;
}

std::vector<ExperimentRow>
run_thought_experiment(const ExperimentSpec& spec, const PackageConfig& pkg,
                       const Floorplan& fp, const MttfParams& mttf) {
    validate(spec);
    validate(pkg);
    if (fp.blocks.size() != spec.n_cores)
        throw ValidationError("floorplan block count does not match the core count");

    const GridSpec grid = grid_spec_for(pkg, spec.grid_nx, spec.grid_ny);
    const ThermalNetwork net = assemble_network(pkg, grid);
    const double p_core = calibrate_core_power(pkg, fp, grid, spec.center_rise_target);
    const auto [rows_n, cols_n] = core_grid_shape(spec.n_cores);

    PowerMap zero;
    for (const auto& b : fp.blocks) zero.emplace(b.name, 0.0);
    const auto [base_field, base_report] =
        solve_steady(net, rasterize_power(zero, fp, grid, pkg), pkg.ambient_temperature);
    const auto base_temps = block_mean_temperatures(base_field, net, fp, pkg);

    std::uint64_t rng_state = spec.seed;
    std::vector<ExperimentRow> out;
    for (std::size_t n_active : spec.resolved_active_counts()) {
        ExperimentRow row;
        row.n_active = n_active;
        row.active_fraction =
            static_cast<double>(n_active) / static_cast<double>(spec.n_cores);
        if (n_active == spec.n_cores) {
            out.push_back(row);
            continue;
        }

        const std::size_t trials = spec.selection == Selection::Random ? spec.trials : 1;
        TrialStats sum;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            std::vector<std::size_t> active;
            switch (spec.selection) {
                case Selection::Random:
                    active = select_random(spec.n_cores, n_active, rng_state);
                    break;
                case Selection::ContiguousCorner:
                    active = select_corner(spec.n_cores, n_active);
                    break;
                case Selection::Checkerboard:
                    active = select_checkerboard(rows_n, cols_n, n_active);
                    break;
            }

            PowerMap pm = zero;
            for (std::size_t idx : active) pm[fp.blocks[idx].name] = p_core;
            const auto [field, rep] =
                solve_steady(net, rasterize_power(pm, fp, grid, pkg), pkg.ambient_temperature);
            const auto temps = block_mean_temperatures(field, net, fp, pkg);
            const MttfReport ratios = report(base_temps, temps, pkg.ambient_temperature, mttf);

            const std::set<std::size_t> active_set(active.begin(), active.end());
            TrialStats t;
            t.min_rise = std::numeric_limits<double>::infinity();
            t.max_rise = -std::numeric_limits<double>::infinity();
            std::size_t n_inactive = 0;
            for (std::size_t i = 0; i < fp.blocks.size(); ++i) {
                if (active_set.count(i)) continue;
                const std::string& name = fp.blocks[i].name;
                const double rise = temps.at(name) - base_temps.at(name);
                t.mean_rise += rise;
                t.min_rise = std::min(t.min_rise, rise);
                t.max_rise = std::max(t.max_rise, rise);
                const MttfRatios& r = ratios.at(name);
                t.em += r.em;
                t.tc += r.tc;
                t.sm += r.sm;
                ++n_inactive;
            }
            const auto n = static_cast<double>(n_inactive);
            sum.mean_rise += t.mean_rise / n;
            sum.min_rise += t.min_rise;
            sum.max_rise += t.max_rise;
            sum.em += t.em / n;
            sum.tc += t.tc / n;
            sum.sm += t.sm / n;
        }

        const auto nt = static_cast<double>(trials);
        row.mean_inactive_rise = sum.mean_rise / nt;
        row.min_inactive_rise = sum.min_rise / nt;
        row.max_inactive_rise = sum.max_rise / nt;
        row.r_em = sum.em / nt;
        row.r_tc = sum.tc / nt;
        row.r_sm = sum.sm / nt;
        out.push_back(row);
    }
    return out;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::string out =
        "n_active,active_fraction,mean_inactive_rise,min_inactive_rise,max_inactive_rise,"
        "r_em,r_tc,r_sm\n";
    for (const ExperimentRow& row : rows) {
        out += std::to_string(row.n_active);
        out += ',';
        out += fixed6(row.active_fraction);
        for (const auto& v : {row.mean_inactive_rise, row.min_inactive_rise,
                              row.max_inactive_rise, row.r_em, row.r_tc, row.r_sm}) {
            out += ',';
            if (v) out += fixed6(*v);
        }
        out += '\n';
    }
    return out;
}

} // namespace spreadersim
