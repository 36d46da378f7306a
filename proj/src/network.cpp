#include "spreadersim/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace spreadersim {

namespace {

// Heat capacity of the lumped fin/air node, J/K. Documented default for the
// collapsed sink; only transient behaviour depends on it.
constexpr double kSinkAirCapacitance = 140.4;

constexpr double kCenterTol = 1e-12;

double series(double a, double b) { return a * b / (a + b); }

// Material of one cell: nominal inside the centered layer extent, filler
// outside.
const MaterialProps& cell_material(const Layer& layer, const GridSpec& grid,
                                   std::size_t ix, std::size_t iy) {
    const double cx = (static_cast<double>(ix) + 0.5) * grid.cell_width();
    const double cy = (static_cast<double>(iy) + 0.5) * grid.cell_height();
    const double half_w = layer.extent.width / 2.0;
    const double half_h = layer.extent.height / 2.0;
    const bool inside = std::abs(cx - grid.extent.width / 2.0) <= half_w + kCenterTol &&
                        std::abs(cy - grid.extent.height / 2.0) <= half_h + kCenterTol;
    return inside ? layer.material : layer.filler;
}

} // namespace

void validate(const GridSpec& grid) {
    if (grid.nx < 2 || grid.ny < 2)
        throw ValidationError("grid needs nx >= 2 and ny >= 2");
    if (!(grid.extent.width > 0.0) || !(grid.extent.height > 0.0))
        throw ValidationError("grid extent must be positive");
    const double aspect = grid.cell_width() / grid.cell_height();
    if (!std::isfinite(aspect) || !(aspect > 0.0))
        throw ValidationError("grid cell aspect ratio must be finite and positive");
}

GridSpec grid_spec_for(const PackageConfig& pkg, std::size_t nx, std::size_t ny) {
    GridSpec grid{nx, ny, pkg.grid_extent()};
    validate(grid);
    return grid;
}

SymmetricCsr::SymmetricCsr(const std::vector<std::vector<std::pair<std::size_t, double>>>& rows) {
    n_ = rows.size();
    row_start_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) row_start_[i + 1] = row_start_[i] + rows[i].size();
    columns_.reserve(row_start_[n_]);
    values_.reserve(row_start_[n_]);
    for (const auto& row : rows) {
        for (const auto& [j, v] : row) {
            columns_.push_back(j);
            values_.push_back(v);
        }
    }
}

double SymmetricCsr::coeff(std::size_t i, std::size_t j) const {
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
        if (columns_[k] == j) return values_[k];
    return 0.0;
}

void SymmetricCsr::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
            acc += values_[k] * x[columns_[k]];
        y[i] = acc;
    }
}

std::span<const std::size_t> SymmetricCsr::row_columns(std::size_t i) const {
    return {columns_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
}

std::span<const double> SymmetricCsr::row_values(std::size_t i) const {
    return {values_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
}

std::size_t ThermalNetwork::layer_index(std::string_view name) const {
    for (std::size_t i = 0; i < layer_names.size(); ++i)
        if (layer_names[i] == name) return i;
    throw ValidationError("no layer named '" + std::string(name) + "'");
}

double conductance(double k, double area, double length) {
    if (!(k > 0.0)) throw ValidationError("conductance: k must be positive");
    if (!(area > 0.0)) throw ValidationError("conductance: area must be positive");
    if (!(length > 0.0)) throw ValidationError("conductance: length must be positive");
    return k * area / length;
}

ThermalNetwork assemble_network(const PackageConfig& pkg, const GridSpec& grid) {
    validate(pkg);
    validate(grid);
    const Extent footprint = pkg.grid_extent();
    if (std::abs(footprint.width - grid.extent.width) > 1e-12 ||
        std::abs(footprint.height - grid.extent.height) > 1e-12)
        throw ValidationError("grid extent does not match the package footprint");
    for (const auto& l : pkg.layers)
        if (!(l.thickness > 0.0))
            throw ValidationError("layer '" + l.name + "' has degenerate thickness");

    ThermalNetwork net;
    net.grid = grid;
    net.n_layers = pkg.layers.size();
    for (const auto& l : pkg.layers) net.layer_names.push_back(l.name);

    const std::size_t per_layer = grid.nx * grid.ny;
    const std::size_t n = per_layer * net.n_layers + 1;
    const std::size_t lumped = n - 1;
    const double dx = grid.cell_width();
    const double dy = grid.cell_height();

    // Adjacency as (neighbour, conductance); diagonal added afterwards.
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    net.capacitance.assign(n, 0.0);
    net.ambient_conductance.assign(n, 0.0);

    auto link = [&adj](std::size_t a, std::size_t b, double g) {
        adj[a].emplace_back(b, g);
        adj[b].emplace_back(a, g);
    };

    for (std::size_t l = 0; l < net.n_layers; ++l) {
        const Layer& layer = pkg.layers[l];
        const double t = layer.thickness;
        const double face_x = dy * t; // area crossed by x-directed flow
        const double face_y = dx * t;
        const double face_z = dx * dy;
        for (std::size_t iy = 0; iy < grid.ny; ++iy) {
            for (std::size_t ix = 0; ix < grid.nx; ++ix) {
                const std::size_t i = net.cell_index(l, ix, iy);
                const MaterialProps& m = cell_material(layer, grid, ix, iy);
                net.capacitance[i] = m.volumetric_heat_capacity * dx * dy * t;

                // Half-cell conductances composed in series across the face
                // handle material changes at layer/filler boundaries.
                if (ix + 1 < grid.nx) {
                    const MaterialProps& mr = cell_material(layer, grid, ix + 1, iy);
                    link(i, net.cell_index(l, ix + 1, iy),
                         series(conductance(m.conductivity, face_x, dx / 2.0),
                                conductance(mr.conductivity, face_x, dx / 2.0)));
                }
                if (iy + 1 < grid.ny) {
                    const MaterialProps& mu = cell_material(layer, grid, ix, iy + 1);
                    link(i, net.cell_index(l, ix, iy + 1),
                         series(conductance(m.conductivity, face_y, dy / 2.0),
                                conductance(mu.conductivity, face_y, dy / 2.0)));
                }
                if (l + 1 < net.n_layers) {
                    const Layer& above = pkg.layers[l + 1];
                    const MaterialProps& ma = cell_material(above, grid, ix, iy);
                    link(i, net.cell_index(l + 1, ix, iy),
                         series(conductance(m.conductivity, face_z, t / 2.0),
                                conductance(ma.conductivity, face_z, above.thickness / 2.0)));
                } else {
                    // Remaining half thickness of the sink base reaches the
                    // lumped fin/air node.
                    link(i, lumped, conductance(m.conductivity, face_z, t / 2.0));
                }
            }
        }
    }

    net.capacitance[lumped] = kSinkAirCapacitance;
    net.ambient_conductance[lumped] = 1.0 / pkg.sink_convection_resistance_total;

    // Laplacian rows: diagonal = neighbour sum + ambient coupling,
    // off-diagonals negated, columns sorted for the CSR.
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& entries = adj[i];
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        double diag = net.ambient_conductance[i];
        for (const auto& [j, g] : entries) diag += g;
        auto& row = rows[i];
        row.reserve(entries.size() + 1);
        bool placed = false;
        for (const auto& [j, g] : entries) {
            if (!placed && j > i) {
                row.emplace_back(i, diag);
                placed = true;
            }
            row.emplace_back(j, -g);
        }
        if (!placed) row.emplace_back(i, diag);
    }
    net.conductance = SymmetricCsr(rows);
    return net;
}

CellPowerVector rasterize_power(const PowerMap& pm, const Floorplan& fp,
                                const GridSpec& grid, const PackageConfig& pkg) {
    validate(grid);
    validate(pm, fp);
    const Extent die = pkg.die().extent;
    validate(fp, die);

    ThermalNetwork index; // only used for the cell index map
    index.grid = grid;
    index.n_layers = pkg.layers.size();

    CellPowerVector power(grid.nx * grid.ny * pkg.layers.size() + 1, 0.0);
    const double dx = grid.cell_width();
    const double dy = grid.cell_height();
    // Die is centered on the grid footprint.
    const double ox = (grid.extent.width - die.width) / 2.0;
    const double oy = (grid.extent.height - die.height) / 2.0;

    for (const auto& b : fp.blocks) {
        auto it = pm.find(b.name);
        if (it == pm.end() || it->second == 0.0) continue;
        const double watts = it->second;
        const double x0 = ox + b.x, x1 = x0 + b.width;
        const double y0 = oy + b.y, y1 = y0 + b.height;
        const double area = b.width * b.height;

        const auto first_ix = static_cast<std::size_t>(std::max(0.0, std::floor(x0 / dx)));
        const auto first_iy = static_cast<std::size_t>(std::max(0.0, std::floor(y0 / dy)));
        for (std::size_t iy = first_iy; iy < grid.ny; ++iy) {
            const double cy0 = static_cast<double>(iy) * dy;
            if (cy0 >= y1) break;
            const double oh = std::min(y1, cy0 + dy) - std::max(y0, cy0);
            if (oh <= 0.0) continue;
            for (std::size_t ix = first_ix; ix < grid.nx; ++ix) {
                const double cx0 = static_cast<double>(ix) * dx;
                if (cx0 >= x1) break;
                const double ow = std::min(x1, cx0 + dx) - std::max(x0, cx0);
                if (ow <= 0.0) continue;
                power[index.cell_index(0, ix, iy)] += watts * (ow * oh) / area;
            }
        }
    }
    return power;
}

void write_matrix_market(const ThermalNetwork& net, std::ostream& out) {
    const auto& g = net.conductance;
    std::size_t nnz_lower = 0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j : g.row_columns(i))
            if (j <= i) ++nnz_lower;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << g.rows() << " " << g.rows() << " " << nnz_lower << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        auto cols = g.row_columns(i);
        auto vals = g.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (cols[k] <= i)
                out << i + 1 << " " << cols[k] + 1 << " " << vals[k] << "\n";
    }
}

} // namespace spreadersim
