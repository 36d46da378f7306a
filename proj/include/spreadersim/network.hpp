#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "spreadersim/package.hpp"

namespace spreadersim {

struct GridSpec {
    std::size_t nx = 0, ny = 0; // cells per layer in x/y
    Extent extent;              // global footprint (widest layer)

    double cell_width() const { return extent.width / static_cast<double>(nx); }
    double cell_height() const { return extent.height / static_cast<double>(ny); }
};

void validate(const GridSpec& grid);

/// Grid spec spanning the package footprint.
GridSpec grid_spec_for(const PackageConfig& pkg, std::size_t nx, std::size_t ny);

/// Symmetric sparse matrix, full CSR storage, deterministic entry order.
class SymmetricCsr {
public:
    SymmetricCsr() = default;
    /// rows[i] holds (j, value) pairs sorted by j; off-diagonals must be
    /// mirrored by the caller.
    explicit SymmetricCsr(const std::vector<std::vector<std::pair<std::size_t, double>>>& rows);

    std::size_t rows() const { return n_; }
    std::size_t nonzeros() const { return values_.size(); }
    std::size_t row_nonzeros(std::size_t i) const { return row_start_[i + 1] - row_start_[i]; }

    double coeff(std::size_t i, std::size_t j) const; // 0 when absent
    double diagonal(std::size_t i) const { return coeff(i, i); }

    /// y = A x, sequential accumulation in column order.
    void multiply(std::span<const double> x, std::span<double> y) const;

    std::span<const std::size_t> row_columns(std::size_t i) const;
    std::span<const double> row_values(std::size_t i) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_start_;
    std::vector<std::size_t> columns_;
    std::vector<double> values_;
};

/// Finite-volume RC network over the layered grid plus one lumped sink-air
/// node (the last index). G is a graph Laplacian plus the ambient couplings
/// on the diagonal, so it is SPD whenever an ambient path exists.
struct ThermalNetwork {
    GridSpec grid;
    std::size_t n_layers = 0;
    std::vector<std::string> layer_names;
    SymmetricCsr conductance;                // G, W/K
    std::vector<double> capacitance;         // C, J/K per cell
    std::vector<double> ambient_conductance; // g_amb, W/K per cell

    std::size_t cells_per_layer() const { return grid.nx * grid.ny; }
    std::size_t n_cells() const { return cells_per_layer() * n_layers + 1; }
    std::size_t lumped_node() const { return cells_per_layer() * n_layers; }
    std::size_t cell_index(std::size_t layer, std::size_t ix, std::size_t iy) const {
        return layer * cells_per_layer() + iy * grid.nx + ix;
    }
    std::size_t layer_index(std::string_view name) const; // throws ValidationError
};

using CellPowerVector = std::vector<double>; // W per cell

/// Slab conductance k * area / length; throws ValidationError on
/// non-positive input.
double conductance(double k, double area, double length);

ThermalNetwork assemble_network(const PackageConfig& pkg, const GridSpec& grid);

/// Distribute block powers onto die-layer cells proportionally to the
/// block/cell footprint overlap. Non-die layers and the lumped node get 0.
CellPowerVector rasterize_power(const PowerMap& pm, const Floorplan& fp,
                                const GridSpec& grid, const PackageConfig& pkg);

/// Debug dump, `%%MatrixMarket matrix coordinate real symmetric` (lower
/// triangle, 1-based).
void write_matrix_market(const ThermalNetwork& net, std::ostream& out);

} // namespace spreadersim
