#include "spreadersim/solver.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace spreadersim {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct CgResult {
    std::size_t iterations = 0;
    double residual = 0.0;
};

// Jacobi-preconditioned CG with a fixed sequential evaluation order, so
// repeated runs are bit-identical. apply_a must evaluate y = A x for the SPD
// operator being solved; diag holds its diagonal.
CgResult conjugate_gradient(
    const std::function<void(std::span<const double>, std::span<double>)>& apply_a,
    std::span<const double> diag, std::span<const double> rhs,
    std::vector<double>& x, double tol) {
    const std::size_t n = rhs.size();
    const std::size_t max_iter =
        static_cast<std::size_t>(std::ceil(50.0 * std::sqrt(static_cast<double>(n))));

    std::vector<double> r(n), z(n), p(n), ap(n);
    apply_a(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];

    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        x.assign(n, 0.0);
        return {0, 0.0};
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!(diag[i] > 0.0)) throw SolverError("matrix is not positive definite (diagonal)");
        z[i] = r[i] / diag[i];
    }
    p = z;
    double rz = dot(r, z);

    std::size_t iter = 0;
    double rel = norm2(r) / rhs_norm;
    while (rel > tol) {
        if (iter >= max_iter)
            throw SolverError("no convergence in " + std::to_string(max_iter) +
                              " iterations (residual " + std::to_string(rel) + ")");
        apply_a(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) throw SolverError("matrix is not positive definite");
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        ++iter;
        rel = norm2(r) / rhs_norm;
    }

    // Recurrence residual can drift from the true one; report the real thing.
    apply_a(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
    return {iter, norm2(r) / rhs_norm};
}

void check_inputs(const ThermalNetwork& net, std::span<const double> power, double tol) {
    if (power.size() != net.n_cells())
        throw ValidationError("power vector length " + std::to_string(power.size()) +
                              " does not match cell count " + std::to_string(net.n_cells()));
    if (!(tol > 0.0) || tol > 1e-2)
        throw ValidationError("solver tolerance must lie in (0, 1e-2]");
}

std::vector<double> steady_rhs(const ThermalNetwork& net, std::span<const double> power,
                               double ambient_c) {
    std::vector<double> rhs(net.n_cells());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = power[i] + net.ambient_conductance[i] * ambient_c;
    return rhs;
}

} // namespace

std::pair<TemperatureField, SolveReport>
solve_steady(const ThermalNetwork& net, std::span<const double> power,
             double ambient_c, double tol) {
    check_inputs(net, power, tol);
    const auto start = std::chrono::steady_clock::now();

    const std::size_t n = net.n_cells();
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = net.conductance.diagonal(i);
    const auto rhs = steady_rhs(net, power, ambient_c);

    TemperatureField field;
    field.temps.assign(n, ambient_c);
    auto apply = [&net](std::span<const double> x, std::span<double> y) {
        net.conductance.multiply(x, y);
    };
    CgResult cg = conjugate_gradient(apply, diag, rhs, field.temps, tol);

    SolveReport report;
    report.iterations = cg.iterations;
    report.residual = cg.residual;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(field), report};
}

std::vector<TemperatureField>
solve_transient(const ThermalNetwork& net, std::span<const double> power,
                const TemperatureField& t0, double dt, std::size_t steps,
                double ambient_c, double tol) {
    check_inputs(net, power, tol);
    if (!(dt > 0.0)) throw ValidationError("time step must be positive");
    if (t0.temps.size() != net.n_cells())
        throw ValidationError("initial field length does not match cell count");

    const std::size_t n = net.n_cells();
    std::vector<double> c_over_dt(n), diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        c_over_dt[i] = net.capacitance[i] / dt;
        diag[i] = net.conductance.diagonal(i) + c_over_dt[i];
    }
    auto apply = [&](std::span<const double> x, std::span<double> y) {
        net.conductance.multiply(x, y);
        for (std::size_t i = 0; i < n; ++i) y[i] += c_over_dt[i] * x[i];
    };

    std::vector<TemperatureField> trajectory;
    trajectory.reserve(steps);
    std::vector<double> current = t0.temps;
    std::vector<double> rhs(n);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = c_over_dt[i] * current[i] + power[i] + net.ambient_conductance[i] * ambient_c;
        std::vector<double> next = current; // warm start
        conjugate_gradient(apply, diag, rhs, next, tol);
        current = next;
        trajectory.push_back(TemperatureField{std::move(next)});
    }
    return trajectory;
}

double energy_balance(const ThermalNetwork& net, const TemperatureField& field,
                      std::span<const double> power, double ambient_c) {
    if (field.temps.size() != net.n_cells() || power.size() != net.n_cells())
        throw ValidationError("field/power length does not match cell count");
    double total_power = 0.0;
    for (double p : power) total_power += p;
    if (total_power == 0.0) return 0.0;
    double outflow = 0.0;
    for (std::size_t i = 0; i < net.n_cells(); ++i)
        outflow += net.ambient_conductance[i] * (field.temps[i] - ambient_c);
    return std::abs(outflow - total_power) / total_power;
}

} // namespace spreadersim
