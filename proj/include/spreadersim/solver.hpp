#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "spreadersim/network.hpp"

namespace spreadersim {

struct TemperatureField {
    std::vector<double> temps; // deg C, one per cell, lumped node last
};

struct SolveReport {
    std::size_t iterations = 0;
    double residual = 0.0;  // ||G T - rhs||_2 / ||rhs||_2
    double wall_time = 0.0; // s
};

inline constexpr double kDefaultTolerance = 1e-8;

/// Steady state G T = P + g_amb * t_amb via Jacobi-preconditioned CG.
/// Deterministic: fixed iteration order, sequential reductions. tol must lie
/// in (0, 1e-2]. Throws SolverError on non-convergence (cap 50 sqrt(n)) or
/// an indefinite matrix.
std::pair<TemperatureField, SolveReport>
solve_steady(const ThermalNetwork& net, std::span<const double> power,
             double ambient_c, double tol = kDefaultTolerance);

/// Backward Euler: (C/dt + G) T_{k+1} = C/dt T_k + P + g_amb * t_amb.
/// Unconditionally stable; the trajectory contracts toward the steady
/// solution in the energy norm. Returns one field per step.
std::vector<TemperatureField>
solve_transient(const ThermalNetwork& net, std::span<const double> power,
                const TemperatureField& t0, double dt, std::size_t steps,
                double ambient_c, double tol = kDefaultTolerance);

/// |sum_i g_amb_i (T_i - t_amb) - sum_i P_i| / sum_i P_i; 0 when the total
/// power is zero.
double energy_balance(const ThermalNetwork& net, const TemperatureField& field,
                      std::span<const double> power, double ambient_c);

} // namespace spreadersim
