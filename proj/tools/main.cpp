#include <charconv>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "spreadersim/config.hpp"
#include "spreadersim/errors.hpp"
#include "spreadersim/experiment.hpp"
#include "spreadersim/metrology.hpp"
#include "spreadersim/output.hpp"
#include "spreadersim/solver.hpp"

namespace {

using namespace spreadersim;

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

struct SimulateArgs {
    std::string config, floorplan, power;
    std::string out_csv, out_pgm;
    std::string layer = "spreader";
    std::size_t grid = 32;
};

void run_simulate(const SimulateArgs& a) {
    const ToolConfig cfg = load_config(a.config);
    const Floorplan fp = parse_floorplan(read_text_file(a.floorplan), cfg.package.die().extent);
    const PowerMap pm = parse_power_map(read_text_file(a.power));
    validate(pm, fp);

    const GridSpec grid = grid_spec_for(cfg.package, a.grid, a.grid);
    const ThermalNetwork net = assemble_network(cfg.package, grid);
    const CellPowerVector cells = rasterize_power(pm, fp, grid, cfg.package);
    const auto [field, rep] = solve_steady(net, cells, cfg.package.ambient_temperature);

    std::printf("solved %zu cells: %zu iterations, residual %.3e, %.3f s\n", net.n_cells(),
                rep.iterations, rep.residual, rep.wall_time);
    std::printf("energy balance %.3e\n",
                energy_balance(net, field, cells, cfg.package.ambient_temperature));
    for (std::size_t layer = 0; layer < net.n_layers; ++layer) {
        double lo = field.temps[net.cell_index(layer, 0, 0)], hi = lo;
        for (std::size_t iy = 0; iy < net.grid.ny; ++iy)
            for (std::size_t ix = 0; ix < net.grid.nx; ++ix) {
                const double t = field.temps[net.cell_index(layer, ix, iy)];
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
        std::printf("%s range [%.6f, %.6f] C\n", net.layer_names[layer].c_str(), lo, hi);
    }
    if (!a.out_csv.empty()) {
        write_temperature_csv(field, net, a.out_csv);
        std::printf("wrote %s\n", a.out_csv.c_str());
    }
    if (!a.out_pgm.empty()) {
        write_heatmap_pgm(field, net, net.layer_index(a.layer), a.out_pgm);
        std::printf("wrote %s\n", a.out_pgm.c_str());
    }
}

struct ExperimentArgs {
    std::string config, out;
    std::size_t cores = 0, grid = 0; // 0: take the config value
    std::string selection;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void run_experiment(const ExperimentArgs& a) {
    ToolConfig cfg = load_config(a.config);
    ExperimentSpec spec = cfg.experiment;
    if (a.cores) spec.n_cores = a.cores;
    if (a.grid) spec.grid_nx = spec.grid_ny = a.grid;
    if (!a.selection.empty()) spec.selection = selection_from_string(a.selection);
    if (a.seed_set) spec.seed = a.seed;

    const auto [rows, cols] = core_grid_shape(spec.n_cores);
    const Floorplan fp = make_grid_floorplan(rows, cols, cfg.package.die().extent);
    const auto table = run_thought_experiment(spec, cfg.package, fp, cfg.mttf);
    write_text_file(a.out, experiment_csv(table));
    std::printf("wrote %s: %zu sweep points, %zu cores as %zux%zu, selection %s, grid %zux%zu\n",
                a.out.c_str(), table.size(), spec.n_cores, rows, cols,
                to_string(spec.selection).c_str(), spec.grid_nx, spec.grid_ny);
}

void run_conductivity(const std::string& path) {
    const ConductivityResult r = comparative_conductivity(parse_conductivity_json(read_text_file(path)));
    std::printf("kappa_1 %.6g W/(m K)\n", r.kappa_1);
    std::printf("kappa_2 %.6g W/(m K)\n", r.kappa_2);
    std::printf("kappa_mean %.6g W/(m K)\n", r.kappa_mean);
    std::printf("mismatch %.4g %%\n", r.mismatch * 100.0);
}

void run_calibrate(double raw_ice, double raw_boil, double boiling_point) {
    CalibrationReference ref;
    ref.boiling_point = boiling_point;
    const CalibrationCurve curve = two_point_calibration(raw_ice, raw_boil, ref);
    std::printf("gain %s\n", shortest(curve.gain).c_str());
    std::printf("offset %s\n", shortest(curve.offset).c_str());
}

void run_spread_stats(const std::string& path) {
    for (const SpreaderReadingSet& set : parse_readings_csv(read_text_file(path))) {
        const SpreadStats stats = spread_stats(set);
        std::printf("%s: max gradient %.2f K, mean %.2f C\n", set.label.c_str(),
                    stats.max_pair_diff, stats.mean);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chip-package thermal simulator and heat-spreader metrology toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Steady-state solve of a floorplan power map");
    simulate->add_option("--config", sim.config, "Tool config JSON")->required();
    simulate->add_option("--floorplan", sim.floorplan, "Floorplan CSV (name,x,y,w,h)")->required();
    simulate->add_option("--power", sim.power, "Power map CSV (name,watts)")->required();
    simulate->add_option("--out-csv", sim.out_csv, "Write per-cell temperatures CSV");
    simulate->add_option("--out-pgm", sim.out_pgm, "Write a grayscale heatmap PGM");
    simulate->add_option("--layer", sim.layer, "Layer rendered to the PGM")
        ->capture_default_str();
    simulate->add_option("--grid", sim.grid, "Cells per axis")->capture_default_str();
    simulate->callback([&] { run_simulate(sim); });

    ExperimentArgs exp;
    auto* thought = app.add_subcommand(
        "thought-experiment", "Active-core sweep with inactive-core rise and MTTF statistics");
    thought->add_option("--config", exp.config, "Tool config JSON")->required();
    thought->add_option("--cores", exp.cores, "Core count (default from config: 128)");
    thought->add_option("--grid", exp.grid, "Cells per axis (default from config: 32)");
    thought->add_option("--selection", exp.selection, "random|corner|checkerboard");
    auto* seed_opt = thought->add_option("--seed", exp.seed, "Random-selection seed");
    thought->add_option("--out", exp.out, "Output CSV path")->required();
    thought->callback([&] {
        exp.seed_set = seed_opt->count() > 0;
        run_experiment(exp);
    });

    std::string exp_path;
    auto* cond = app.add_subcommand("conductivity", "Comparative cut-bar conductivity reduction");
    cond->add_option("--experiment", exp_path, "Experiment JSON")->required();
    cond->callback([&] { run_conductivity(exp_path); });

    double raw_ice = 0.0, raw_boil = 0.0, boiling_point = 99.304;
    auto* cal = app.add_subcommand("calibrate", "Two-point linear thermocouple calibration");
    cal->add_option("--raw-ice", raw_ice, "Raw reading in the ice bath")->required();
    cal->add_option("--raw-boil", raw_boil, "Raw reading in boiling water")->required();
    cal->add_option("--boiling-point", boiling_point, "Local boiling point, deg C")
        ->capture_default_str();
    cal->callback([&] { run_calibrate(raw_ice, raw_boil, boiling_point); });

    std::string readings_path;
    auto* spread = app.add_subcommand("spread-stats", "Pairwise spreader-surface gradients");
    spread->add_option("--readings", readings_path, "Readings CSV (label,position,temp_c)")
        ->required();
    spread->callback([&] { run_spread_stats(readings_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
