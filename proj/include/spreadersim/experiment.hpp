#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spreadersim/network.hpp"
#include "spreadersim/reliability.hpp"
#include "spreadersim/solver.hpp"

namespace spreadersim {

enum class Selection { Random, ContiguousCorner, Checkerboard };

std::string to_string(Selection s);
Selection selection_from_string(const std::string& s); // throws ParseError

struct ExperimentSpec {
    std::size_t n_cores = 128;
    std::size_t grid_nx = 32, grid_ny = 32;
    double center_rise_target = 20.0; // K at the die-center cell, all cores on
    std::vector<std::size_t> active_counts; // empty -> 12.5%..87.5% of n_cores
    Selection selection = Selection::ContiguousCorner;
    std::uint64_t seed = 0;
    std::size_t trials = 10; // random selection only

    std::vector<std::size_t> resolved_active_counts() const;
};

void validate(const ExperimentSpec& spec);

struct ExperimentRow {
    std::size_t n_active = 0;
    double active_fraction = 0.0;
    // Absent (not zero) when no core is inactive.
    std::optional<double> mean_inactive_rise; // K over the zero-power field
    std::optional<double> min_inactive_rise;
    std::optional<double> max_inactive_rise;
    std::optional<double> r_em, r_tc, r_sm;   // mean normalized MTTF, inactive cores
};

/// Per-core power that lifts the die-center cell by target_rise when every
/// core runs at it. One unit solve plus linear scaling.
double calibrate_core_power(const PackageConfig& pkg, const Floorplan& fp,
                            const GridSpec& grid, double target_rise);

/// Area-weighted mean die-layer temperature per floorplan block.
std::map<std::string, double>
block_mean_temperatures(const TemperatureField& field, const ThermalNetwork& net,
                        const Floorplan& fp, const PackageConfig& pkg);

/// Active-set sweep: for each count, pick active cores per the selection
/// policy, run the calibrated steady solve, and report inactive-core rise
/// statistics plus normalized MTTF against the zero-power baseline. Random
/// selection averages trials; the other policies are deterministic.
std::vector<ExperimentRow>
run_thought_experiment(const ExperimentSpec& spec, const PackageConfig& pkg,
                       const Floorplan& fp, const MttfParams& mttf = {});

/// Fixed 6-decimal CSV, one row per sweep point; absent statistics stay
/// empty. Byte-stable for fixed inputs and seed.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

/// Deterministic active-core index sets, returned sorted. Corner fills
/// row-major from c0_0; checkerboard takes even-parity cells first, then odd;
/// random draws a Fisher-Yates prefix from the given generator state.
std::vector<std::size_t> select_corner(std::size_t n_cores, std::size_t n_active);
std::vector<std::size_t> select_checkerboard(std::size_t rows, std::size_t cols, std::size_t n_active);
std::vector<std::size_t> select_random(std::size_t n_cores, std::size_t n_active, std::uint64_t& state);

/// Near-square rows x cols factorization of the core count, rows <= cols;
/// primes degrade to 1 x n.
std::pair<std::size_t, std::size_t> core_grid_shape(std::size_t n_cores);

} // namespace spreadersim
