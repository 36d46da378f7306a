#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spreadersim/config.hpp"
#include "spreadersim/experiment.hpp"
#include "spreadersim/metrology.hpp"
#include "spreadersim/output.hpp"
#include "spreadersim/solver.hpp"
#include "support.hpp"

using namespace spreadersim;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CellPowerVector uniform_die_power(const PackageConfig& pkg, const GridSpec& grid, double watts) {
    Floorplan fp;
    fp.blocks = {{"die", 0.0, 0.0, pkg.die().extent.width, pkg.die().extent.height}};
    return rasterize_power({{"die", watts}}, fp, grid, pkg);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// 1. 100 W spread uniformly over the die on the default 32x32 stack must
//    conserve energy to 1e-6 relative at solver tolerance 1e-8, within 5 s.
Result energy_conservation() {
    const auto start = std::chrono::steady_clock::now();
    PackageConfig pkg = default_package();
    GridSpec grid = grid_spec_for(pkg, 32, 32);
    ThermalNetwork net = assemble_network(pkg, grid);
    CellPowerVector power = uniform_die_power(pkg, grid, 100.0);
    auto [field, rep] = solve_steady(net, power, pkg.ambient_temperature, 1e-8);
    const double balance = energy_balance(net, field, power, pkg.ambient_temperature);
    const double elapsed = seconds_since(start);
    return {balance < 1e-6 && elapsed < 5.0,
            fmt("balance %.3e (limit 1e-6), %.3f s (limit 5 s), %zu iterations", balance,
                elapsed, rep.iterations)};
}

// 2. On the 8x8 four-layer stack the iterative solution must match a dense
//    Cholesky factorization to 1e-8 K in max-abs norm.
Result dense_oracle_equivalence() {
    PackageConfig pkg = default_package();
    GridSpec grid = grid_spec_for(pkg, 8, 8);
    ThermalNetwork net = assemble_network(pkg, grid);

    double worst = 0.0;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> watts(0.0, 3.0);
    for (int pattern = 0; pattern < 2; ++pattern) {
        CellPowerVector power = uniform_die_power(pkg, grid, 100.0);
        if (pattern == 1)
            for (std::size_t i = 0; i < net.cells_per_layer(); ++i) power[i] = watts(rng);
        auto [field, rep] = solve_steady(net, power, pkg.ambient_temperature, 1e-12);
        const auto reference = testsupport::dense_steady(net, power, pkg.ambient_temperature);
        worst = std::max(worst, max_abs_diff(field.temps, reference));
    }
    return {worst <= 1e-8, fmt("max |T_cg - T_dense| %.3e K (limit 1e-8)", worst)};
}

// 3. Superposition and scaling of rises over 20 seeded random power maps,
//    1e-8 K in max-abs norm.
Result linearity_suite() {
    PackageConfig pkg = default_package();
    GridSpec grid = grid_spec_for(pkg, 8, 8);
    ThermalNetwork net = assemble_network(pkg, grid);
    const double amb = pkg.ambient_temperature;
    const std::size_t n = net.n_cells();

    std::mt19937_64 rng(1777);
    std::uniform_real_distribution<double> watts(0.0, 2.0), coeff(0.25, 2.0);
    std::vector<CellPowerVector> maps;
    for (int m = 0; m < 20; ++m) {
        CellPowerVector p(n, 0.0);
        for (std::size_t i = 0; i < net.cells_per_layer(); ++i) p[i] = watts(rng);
        maps.push_back(std::move(p));
    }

    auto rise = [&](const CellPowerVector& p) {
        auto [field, rep] = solve_steady(net, p, amb, 1e-12);
        for (double& t : field.temps) t -= amb;
        return field.temps;
    };

    double worst = 0.0;
    for (std::size_t m = 0; m < maps.size(); ++m) {
        const double a = coeff(rng), b = coeff(rng);
        const auto& p1 = maps[m];
        const auto& p2 = maps[(m + 1) % maps.size()];
        CellPowerVector combined(n), scaled(n);
        for (std::size_t i = 0; i < n; ++i) {
            combined[i] = a * p1[i] + b * p2[i];
            scaled[i] = 2.0 * p1[i];
        }
        const auto r1 = rise(p1), r2 = rise(p2), rc = rise(combined), rs = rise(scaled);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(rc[i] - (a * r1[i] + b * r2[i])));
            worst = std::max(worst, std::abs(rs[i] - 2.0 * r1[i]));
        }
    }
    return {worst <= 1e-8, fmt("max linearity defect %.3e K over 20 maps (limit 1e-8)", worst)};
}

// 4. 128-core sweep on the default package: corner selection heats idle
//    cores monotonically; with a checkerboard pattern the mean idle rise at
//    >= 75 % active lands in [10, 20] K and the worst normalized MTTF at the
//    highest sweep point lands in [0.05, 0.3]. Full sweep under 60 s.
Result core_sweep() {
    const auto start = std::chrono::steady_clock::now();
    PackageConfig pkg = default_package();
    ExperimentSpec spec;
    spec.n_cores = 128;
    spec.grid_nx = spec.grid_ny = 32;
    spec.center_rise_target = 20.0;

    const auto [rows_n, cols_n] = core_grid_shape(spec.n_cores);
    Floorplan fp = make_grid_floorplan(rows_n, cols_n, pkg.die().extent);

    spec.selection = Selection::ContiguousCorner;
    const auto corner = run_thought_experiment(spec, pkg, fp);
    bool monotone = true;
    for (std::size_t i = 1; i < corner.size(); ++i)
        if (*corner[i].mean_inactive_rise < *corner[i - 1].mean_inactive_rise) monotone = false;

    spec.selection = Selection::Checkerboard;
    const auto checker = run_thought_experiment(spec, pkg, fp);
    bool band_ok = true;
    double band_lo = 1e300, band_hi = -1e300;
    for (const auto& row : checker)
        if (row.active_fraction >= 0.75 && row.mean_inactive_rise) {
            band_lo = std::min(band_lo, *row.mean_inactive_rise);
            band_hi = std::max(band_hi, *row.mean_inactive_rise);
            if (*row.mean_inactive_rise < 10.0 || *row.mean_inactive_rise > 20.0)
                band_ok = false;
        }
    const auto& top = checker.back();
    const double worst_mttf = std::min({*top.r_em, *top.r_tc, *top.r_sm});
    const bool mttf_ok = worst_mttf >= 0.05 && worst_mttf <= 0.3;
    const double elapsed = seconds_since(start);

    return {monotone && band_ok && mttf_ok && elapsed < 60.0,
            fmt("corner monotone %s; idle rise at >=75%% active in [%.2f, %.2f] K "
                "(band [10, 20]); worst MTTF ratio %.4f (band [0.05, 0.3]); %.2f s",
                monotone ? "yes" : "no", band_lo, band_hi, worst_mttf, elapsed)};
}

// 5. Forward-modeled cut-bar experiments round-trip the sample conductivity
//    to 1e-9 relative over 1000 draws; the symmetric case is exact.
Result conductivity_round_trip() {
    std::mt19937_64 rng(512);
    std::uniform_real_distribution<double> kappa(50.0, 500.0), area(0.5e-4, 2e-4),
        len(0.005, 0.03), heat(1.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        ConductivityExperiment exp;
        exp.kappa_c = 400.0;
        const double kappa_sp = kappa(rng);
        const double q = heat(rng);
        exp.w1 = {area(rng), len(rng), 0.0};
        exp.sp = {area(rng), len(rng), 0.0};
        exp.w2 = {area(rng), len(rng), 0.0};
        exp.w1.delta_t = q * exp.w1.length / (exp.kappa_c * exp.w1.area);
        exp.sp.delta_t = q * exp.sp.length / (kappa_sp * exp.sp.area);
        exp.w2.delta_t = q * exp.w2.length / (exp.kappa_c * exp.w2.area);
        const ConductivityResult r = comparative_conductivity(exp);
        worst = std::max(worst, std::abs(r.kappa_mean - kappa_sp) / kappa_sp);
    }

    ConductivityExperiment symmetric;
    symmetric.kappa_c = 400.0;
    symmetric.w1 = symmetric.sp = symmetric.w2 = {1e-4, 0.01, 5.0};
    const double kappa_sym = comparative_conductivity(symmetric).kappa_mean;

    return {worst <= 1e-9 && kappa_sym == 400.0,
            fmt("worst relative error %.3e over 1000 draws (limit 1e-9); "
                "symmetric case %.17g (must be exactly 400)",
                worst, kappa_sym)};
}

// 6. The bundled copper-sample fixture (equal geometry, 9.225 K wire drops
//    against a 10 K sample drop) must yield 369 W/(m K) within 0.5 %.
Result conductivity_fixture() {
    const std::string path =
        std::string(SPREADERSIM_DATA_DIR) + "/conductivity_copper_sample.json";
    const ConductivityResult r =
        comparative_conductivity(parse_conductivity_json(read_text_file(path)));
    const double rel = std::abs(r.kappa_mean - 369.0) / 369.0;
    return {rel <= 0.005,
            fmt("kappa_mean %.6f W/(m K), %.4g %% from 369 (limit 0.5 %%)", r.kappa_mean,
                rel * 100.0)};
}

// 7. Two-point calibration pins the ice anchor exactly and the boiling
//    anchor to within 1 ulp of 99.304, across 1000 random probe skews.
Result calibration_anchors() {
    std::mt19937_64 rng(90210);
    std::uniform_real_distribution<double> ice(-5.0, 5.0), boil(90.0, 110.0);
    const double ulp = std::nextafter(99.304, 1e300) - 99.304;
    int exact_ice = 0, boil_within_ulp = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        const double raw_ice = ice(rng), raw_boil = boil(rng);
        const CalibrationCurve c = two_point_calibration(raw_ice, raw_boil);
        if (apply_calibration(c, raw_ice) == 0.0) ++exact_ice;
        if (std::abs(apply_calibration(c, raw_boil) - 99.304) <= ulp) ++boil_within_ulp;
    }
    return {exact_ice == trials && boil_within_ulp == trials,
            fmt("ice anchor exact %d/%d, boiling anchor within 1 ulp %d/%d", exact_ice, trials,
                boil_within_ulp, trials)};
}

// 8. The bundled thermocouple log: the calculator-on top-bottom reading set
//    must report a 14.35 K maximum gradient, exact at two decimals.
Result logged_gradient() {
    const std::string path = std::string(SPREADERSIM_DATA_DIR) + "/table1.csv";
    const auto sets = parse_readings_csv(read_text_file(path));
    for (const auto& rs : sets) {
        if (rs.label != "10 mins after calculator on/top-bottom") continue;
        const SpreadStats stats = spread_stats(rs);
        char printed[32];
        std::snprintf(printed, sizeof(printed), "%.2f", stats.max_pair_diff);
        const bool pass =
            std::abs(stats.max_pair_diff - 14.35) <= 1e-12 && std::string(printed) == "14.35";
        return {pass, fmt("max gradient %.17g K, prints as %s", stats.max_pair_diff, printed)};
    }
    return {false, "reading set not found in table1.csv"};
}

// 9. A single 30 W corner core must leave the spreader surface visibly
//    non-isothermal: max - min above 1 K on the default 32x32 stack.
Result spreader_not_isothermal() {
    PackageConfig pkg = default_package();
    GridSpec grid = grid_spec_for(pkg, 32, 32);
    ThermalNetwork net = assemble_network(pkg, grid);
    Floorplan fp = make_grid_floorplan(8, 8, pkg.die().extent);
    PowerMap pm;
    for (const auto& b : fp.blocks) pm[b.name] = 0.0;
    pm["c0_0"] = 30.0;

    auto [field, rep] =
        solve_steady(net, rasterize_power(pm, fp, grid, pkg), pkg.ambient_temperature);
    const std::size_t layer = net.layer_index("spreader");
    double lo = 1e300, hi = -1e300;
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double t = field.temps[net.cell_index(layer, ix, iy)];
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    return {hi - lo > 1.0, fmt("spreader span %.3f K (must exceed 1 K)", hi - lo)};
}

// 10. The backward-Euler trajectory from ambient must land within 1e-6 K of
//     the steady solution on the 8x8 stack.
Result transient_reaches_steady() {
    PackageConfig pkg = default_package();
    GridSpec grid = grid_spec_for(pkg, 8, 8);
    ThermalNetwork net = assemble_network(pkg, grid);
    CellPowerVector power = uniform_die_power(pkg, grid, 100.0);

    auto [steady, rep] = solve_steady(net, power, pkg.ambient_temperature, 1e-12);
    TemperatureField ambient;
    ambient.temps.assign(net.n_cells(), pkg.ambient_temperature);
    const auto trajectory =
        solve_transient(net, power, ambient, 120.0, 80, pkg.ambient_temperature, 1e-12);
    const double gap = max_abs_diff(trajectory.back().temps, steady.temps);
    return {gap <= 1e-6, fmt("final gap to steady %.3e K after 80 x 120 s steps (limit 1e-6)",
                             gap)};
}

} // namespace

int main() {
    const struct {
        const char* name;
        Result (*run)();
    } criteria[] = {
        {"energy-conservation", energy_conservation},
        {"dense-oracle-equivalence", dense_oracle_equivalence},
        {"linearity-suite", linearity_suite},
        {"core-sweep-bands", core_sweep},
        {"conductivity-round-trip", conductivity_round_trip},
        {"conductivity-fixture-369", conductivity_fixture},
        {"calibration-anchors", calibration_anchors},
        {"logged-gradient-14.35", logged_gradient},
        {"spreader-not-isothermal", spreader_not_isothermal},
        {"transient-reaches-steady", transient_reaches_steady},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("unexpected exception: ") + e.what()};
        }
        std::printf("%s  %-26s %s\n", r.pass ? "PASS" : "FAIL", c.name, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
        return 1;
    }
    std::printf("all %zu criteria passed\n", std::size(criteria));
    return 0;
}
