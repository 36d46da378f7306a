#include "support.hpp"

#include <cmath>
#include <stdexcept>

namespace spreadersim::testsupport {

std::vector<double> cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
        if (!(d > 0.0)) throw std::runtime_error("cholesky: non-positive pivot");
        a[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
            a[i][j] = s / a[j][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
        b[i] = s / a[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[k][i] * b[k];
        b[i] = s / a[i][i];
    }
    return b;
}

std::vector<std::vector<double>> dense_matrix(const ThermalNetwork& net) {
    const std::size_t n = net.conductance.rows();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto cols = net.conductance.row_columns(i);
        const auto vals = net.conductance.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) a[i][cols[k]] = vals[k];
    }
    return a;
}

std::vector<double> steady_rhs(const ThermalNetwork& net, std::span<const double> power,
                               double ambient_c) {
    std::vector<double> rhs(net.n_cells());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = power[i] + net.ambient_conductance[i] * ambient_c;
    return rhs;
}

std::vector<double> dense_steady(const ThermalNetwork& net, std::span<const double> power,
                                 double ambient_c) {
    return cholesky_solve(dense_matrix(net), steady_rhs(net, power, ambient_c));
}

PackageConfig two_layer_package() {
    PackageConfig pkg;
    pkg.layers = {
        {"die", 1.0e-3, {100.0, 1.75e6}, {16e-3, 16e-3}, {0.25, 2.0e6}},
        {"base", 1.0e-3, {400.0, 3.55e6}, {16e-3, 16e-3}, {0.25, 2.0e6}},
    };
    pkg.sink_convection_resistance_total = 0.1;
    pkg.ambient_temperature = 45.0;
    return pkg;
}

} // namespace spreadersim::testsupport
