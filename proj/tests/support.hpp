#pragma once

#include <span>
#include <vector>

#include "spreadersim/network.hpp"
#include "spreadersim/package.hpp"

namespace spreadersim::testsupport {

/// Dense Cholesky factorization + solve. Throws std::runtime_error on a
/// non-positive pivot, which doubles as an SPD check.
std::vector<double> cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b);

std::vector<std::vector<double>> dense_matrix(const ThermalNetwork& net);

std::vector<double> steady_rhs(const ThermalNetwork& net, std::span<const double> power,
                               double ambient_c);

/// Direct-factorization reference for the steady problem; independent of the
/// iterative solver.
std::vector<double> dense_steady(const ThermalNetwork& net, std::span<const double> power,
                                 double ambient_c);

/// Two equal-footprint 16 mm layers, so every cell carries bulk material and
/// hand conductance formulas apply without filler cases.
PackageConfig two_layer_package();

} // namespace spreadersim::testsupport
