#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spreadersim/config.hpp"
#include "spreadersim/errors.hpp"
#include "spreadersim/experiment.hpp"
#include "spreadersim/metrology.hpp"
#include "spreadersim/output.hpp"
#include "spreadersim/solver.hpp"

namespace py = pybind11;
using namespace spreadersim;

PYBIND11_MODULE(_spreadersim, m) {
    m.doc() = "Chip-package thermal simulation and heat-spreader metrology";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<MaterialProps>(m, "MaterialProps")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("conductivity"),
             py::arg("volumetric_heat_capacity"))
        .def_readwrite("conductivity", &MaterialProps::conductivity)
        .def_readwrite("volumetric_heat_capacity", &MaterialProps::volumetric_heat_capacity);

    py::class_<Extent>(m, "Extent")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("width"), py::arg("height"))
        .def_readwrite("width", &Extent::width)
        .def_readwrite("height", &Extent::height);

    py::class_<Layer>(m, "Layer")
        .def(py::init<>())
        .def_readwrite("name", &Layer::name)
        .def_readwrite("thickness", &Layer::thickness)
        .def_readwrite("material", &Layer::material)
        .def_readwrite("extent", &Layer::extent)
        .def_readwrite("filler", &Layer::filler);

    py::class_<PackageConfig>(m, "PackageConfig")
        .def(py::init<>())
        .def_readwrite("layers", &PackageConfig::layers)
        .def_readwrite("sink_convection_resistance_total",
                       &PackageConfig::sink_convection_resistance_total)
        .def_readwrite("ambient_temperature", &PackageConfig::ambient_temperature)
        .def("grid_extent", &PackageConfig::grid_extent)
        .def("layer_index", &PackageConfig::layer_index);

    py::class_<Block>(m, "Block")
        .def(py::init<>())
        .def_readwrite("name", &Block::name)
        .def_readwrite("x", &Block::x)
        .def_readwrite("y", &Block::y)
        .def_readwrite("width", &Block::width)
        .def_readwrite("height", &Block::height);

    py::class_<Floorplan>(m, "Floorplan")
        .def(py::init<>())
        .def_readwrite("blocks", &Floorplan::blocks);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("nx", &GridSpec::nx)
        .def_readwrite("ny", &GridSpec::ny)
        .def_readwrite("extent", &GridSpec::extent)
        .def("cell_width", &GridSpec::cell_width)
        .def("cell_height", &GridSpec::cell_height);

    py::class_<ThermalNetwork>(m, "ThermalNetwork")
        .def_readonly("grid", &ThermalNetwork::grid)
        .def_readonly("n_layers", &ThermalNetwork::n_layers)
        .def_readonly("layer_names", &ThermalNetwork::layer_names)
        .def_readonly("capacitance", &ThermalNetwork::capacitance)
        .def_readonly("ambient_conductance", &ThermalNetwork::ambient_conductance)
        .def("cells_per_layer", &ThermalNetwork::cells_per_layer)
        .def("n_cells", &ThermalNetwork::n_cells)
        .def("lumped_node", &ThermalNetwork::lumped_node)
        .def("cell_index", &ThermalNetwork::cell_index)
        .def("layer_index", &ThermalNetwork::layer_index);

    py::class_<TemperatureField>(m, "TemperatureField")
        .def(py::init<>())
        .def_readwrite("temps", &TemperatureField::temps);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("residual", &SolveReport::residual)
        .def_readonly("wall_time", &SolveReport::wall_time);

    py::class_<MttfParams>(m, "MttfParams")
        .def(py::init<>())
        .def_readwrite("ea_em", &MttfParams::ea_em)
        .def_readwrite("ea_sm", &MttfParams::ea_sm)
        .def_readwrite("n_sm", &MttfParams::n_sm)
        .def_readwrite("t_metal_sm", &MttfParams::t_metal_sm)
        .def_readwrite("q_tc", &MttfParams::q_tc)
        .def_readwrite("boltzmann", &MttfParams::boltzmann);

    py::class_<MttfRatios>(m, "MttfRatios")
        .def_readonly("em", &MttfRatios::em)
        .def_readonly("tc", &MttfRatios::tc)
        .def_readonly("sm", &MttfRatios::sm);

    py::class_<CalibrationReference>(m, "CalibrationReference")
        .def(py::init<>())
        .def_readwrite("ice_point", &CalibrationReference::ice_point)
        .def_readwrite("boiling_point", &CalibrationReference::boiling_point)
        .def_readwrite("pressure_mbar", &CalibrationReference::pressure_mbar)
        .def_readwrite("altitude_m", &CalibrationReference::altitude_m);

    py::class_<CalibrationCurve>(m, "CalibrationCurve")
        .def(py::init<>())
        .def_readwrite("gain", &CalibrationCurve::gain)
        .def_readwrite("offset", &CalibrationCurve::offset);

    py::enum_<Position>(m, "Position")
        .value("TCT", Position::TCT)
        .value("TCL", Position::TCL)
        .value("TCB", Position::TCB)
        .value("TCR", Position::TCR)
        .value("CPU", Position::CPU);

    py::class_<SpreaderReadingSet>(m, "SpreaderReadingSet")
        .def(py::init<>())
        .def_readwrite("readings", &SpreaderReadingSet::readings)
        .def_readwrite("cpu_center", &SpreaderReadingSet::cpu_center)
        .def_readwrite("label", &SpreaderReadingSet::label);

    py::class_<SpreadStats>(m, "SpreadStats")
        .def_readonly("max_pair_diff", &SpreadStats::max_pair_diff)
        .def_readonly("mean", &SpreadStats::mean)
        .def_readonly("per_pair", &SpreadStats::per_pair);

    py::class_<ConductivitySegment>(m, "ConductivitySegment")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("area"), py::arg("length"),
             py::arg("delta_t"))
        .def_readwrite("area", &ConductivitySegment::area)
        .def_readwrite("length", &ConductivitySegment::length)
        .def_readwrite("delta_t", &ConductivitySegment::delta_t);

    py::class_<ConductivityExperiment>(m, "ConductivityExperiment")
        .def(py::init<>())
        .def_readwrite("kappa_c", &ConductivityExperiment::kappa_c)
        .def_readwrite("w1", &ConductivityExperiment::w1)
        .def_readwrite("sp", &ConductivityExperiment::sp)
        .def_readwrite("w2", &ConductivityExperiment::w2);

    py::class_<ConductivityResult>(m, "ConductivityResult")
        .def_readonly("kappa_1", &ConductivityResult::kappa_1)
        .def_readonly("kappa_2", &ConductivityResult::kappa_2)
        .def_readonly("kappa_mean", &ConductivityResult::kappa_mean)
        .def_readonly("mismatch", &ConductivityResult::mismatch);

    py::enum_<Selection>(m, "Selection")
        .value("Random", Selection::Random)
        .value("ContiguousCorner", Selection::ContiguousCorner)
        .value("Checkerboard", Selection::Checkerboard);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init<>())
        .def_readwrite("n_cores", &ExperimentSpec::n_cores)
        .def_readwrite("grid_nx", &ExperimentSpec::grid_nx)
        .def_readwrite("grid_ny", &ExperimentSpec::grid_ny)
        .def_readwrite("center_rise_target", &ExperimentSpec::center_rise_target)
        .def_readwrite("active_counts", &ExperimentSpec::active_counts)
        .def_readwrite("selection", &ExperimentSpec::selection)
        .def_readwrite("seed", &ExperimentSpec::seed)
        .def_readwrite("trials", &ExperimentSpec::trials)
        .def("resolved_active_counts", &ExperimentSpec::resolved_active_counts);

    py::class_<ExperimentRow>(m, "ExperimentRow")
        .def_readonly("n_active", &ExperimentRow::n_active)
        .def_readonly("active_fraction", &ExperimentRow::active_fraction)
        .def_readonly("mean_inactive_rise", &ExperimentRow::mean_inactive_rise)
        .def_readonly("min_inactive_rise", &ExperimentRow::min_inactive_rise)
        .def_readonly("max_inactive_rise", &ExperimentRow::max_inactive_rise)
        .def_readonly("r_em", &ExperimentRow::r_em)
        .def_readonly("r_tc", &ExperimentRow::r_tc)
        .def_readonly("r_sm", &ExperimentRow::r_sm);

    py::class_<ToolConfig>(m, "ToolConfig")
        .def(py::init<>())
        .def_readwrite("package", &ToolConfig::package)
        .def_readwrite("mttf", &ToolConfig::mttf)
        .def_readwrite("experiment", &ToolConfig::experiment);

    m.def("default_package", &default_package);
    m.def("validate_package", [](const PackageConfig& pkg) { validate(pkg); });
    m.def("parse_floorplan",
          [](const std::string& text) { return parse_floorplan(text); });
    m.def("serialize_floorplan", &serialize_floorplan);
    m.def("make_grid_floorplan", &make_grid_floorplan, py::arg("rows"), py::arg("cols"),
          py::arg("die_extent"));
    m.def("parse_power_map", &parse_power_map);
    m.def("grid_spec_for", &grid_spec_for, py::arg("pkg"), py::arg("nx"), py::arg("ny"));
    m.def("assemble_network", &assemble_network, py::arg("pkg"), py::arg("grid"));
    m.def("rasterize_power", &rasterize_power, py::arg("power_map"), py::arg("floorplan"),
          py::arg("grid"), py::arg("pkg"));
    m.def(
        "solve_steady",
        [](const ThermalNetwork& net, const std::vector<double>& power, double ambient_c,
           double tol) { return solve_steady(net, power, ambient_c, tol); },
        py::arg("net"), py::arg("power"), py::arg("ambient_c"),
        py::arg("tol") = kDefaultTolerance);
    m.def(
        "solve_transient",
        [](const ThermalNetwork& net, const std::vector<double>& power,
           const TemperatureField& t0, double dt, std::size_t steps, double ambient_c,
           double tol) { return solve_transient(net, power, t0, dt, steps, ambient_c, tol); },
        py::arg("net"), py::arg("power"), py::arg("t0"), py::arg("dt"), py::arg("steps"),
        py::arg("ambient_c"), py::arg("tol") = kDefaultTolerance);
    m.def(
        "energy_balance",
        [](const ThermalNetwork& net, const TemperatureField& field,
           const std::vector<double>& power, double ambient_c) {
            return energy_balance(net, field, power, ambient_c);
        },
        py::arg("net"), py::arg("field"), py::arg("power"), py::arg("ambient_c"));

    m.def("mttf_em_ratio", &mttf_em_ratio, py::arg("t_c"), py::arg("t_ref_c"),
          py::arg("params") = MttfParams{});
    m.def("mttf_tc_ratio", &mttf_tc_ratio, py::arg("t_c"), py::arg("t_ref_c"),
          py::arg("t_amb_c"), py::arg("params") = MttfParams{});
    m.def("mttf_sm_ratio", &mttf_sm_ratio, py::arg("t_c"), py::arg("t_ref_c"),
          py::arg("params") = MttfParams{});
    m.def("mttf_report", &report, py::arg("baseline"), py::arg("loaded"), py::arg("t_amb_c"),
          py::arg("params") = MttfParams{});

    m.def("two_point_calibration", &two_point_calibration, py::arg("raw_ice"),
          py::arg("raw_boil"), py::arg("reference") = CalibrationReference{});
    m.def("apply_calibration", &apply_calibration);
    m.def("interchange_correct", &interchange_correct, py::arg("delta_forward"),
          py::arg("delta_swapped"));
    m.def("spread_stats", &spread_stats);
    m.def("parse_readings_csv", &parse_readings_csv);
    m.def("comparative_conductivity", &comparative_conductivity);
    m.def("parse_conductivity_json", &parse_conductivity_json);

    m.def("calibrate_core_power", &calibrate_core_power, py::arg("pkg"), py::arg("floorplan"),
          py::arg("grid"), py::arg("target_rise"));
    m.def("block_mean_temperatures", &block_mean_temperatures, py::arg("field"), py::arg("net"),
          py::arg("floorplan"), py::arg("pkg"));
    m.def("run_thought_experiment", &run_thought_experiment, py::arg("spec"), py::arg("pkg"),
          py::arg("floorplan"), py::arg("mttf") = MttfParams{});
    m.def("experiment_csv", &experiment_csv);
    m.def("core_grid_shape", &core_grid_shape);

    m.def("temperature_csv", &temperature_csv);
    m.def("heatmap_pgm", &heatmap_pgm, py::arg("field"), py::arg("net"), py::arg("layer"));
    m.def("parse_config", &parse_config);
}
