#include "spreadersim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "spreadersim/config.hpp"
#include "spreadersim/errors.hpp"

namespace spreadersim {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void check_field(const TemperatureField& field, const ThermalNetwork& net) {
    if (field.temps.size() != net.n_cells())
        throw ValidationError("temperature field size does not match the network");
}

} // namespace

std::string temperature_csv(const TemperatureField& field, const ThermalNetwork& net) {
    check_field(field, net);
    std::string out = "layer,ix,iy,temp_c\n";
    for (std::size_t layer = 0; layer < net.n_layers; ++layer) {
        const std::string& name = net.layer_names[layer];
        for (std::size_t iy = 0; iy < net.grid.ny; ++iy) {
            for (std::size_t ix = 0; ix < net.grid.nx; ++ix) {
                out += name;
                out += ',';
                out += std::to_string(ix);
                out += ',';
                out += std::to_string(iy);
                out += ',';
                out += fixed6(field.temps[net.cell_index(layer, ix, iy)]);
                out += '\n';
            }
        }
    }
    return out;
}

void write_temperature_csv(const TemperatureField& field, const ThermalNetwork& net,
                           const std::filesystem::path& path) {
    write_text_file(path, temperature_csv(field, net));
}

std::string heatmap_pgm(const TemperatureField& field, const ThermalNetwork& net,
                        std::size_t layer) {
    check_field(field, net);
    if (layer >= net.n_layers) throw ValidationError("heatmap layer out of range");

    const std::size_t base = net.cell_index(layer, 0, 0);
    const auto begin = field.temps.begin() + static_cast<std::ptrdiff_t>(base);
    const auto end = begin + static_cast<std::ptrdiff_t>(net.cells_per_layer());
    const auto [lo_it, hi_it] = std::minmax_element(begin, end);
    const double lo = *lo_it, hi = *hi_it;
    const double span = hi - lo;

    std::string out = "P2\n";
    out += std::to_string(net.grid.nx) + " " + std::to_string(net.grid.ny) + "\n255\n";
    for (std::size_t iy = 0; iy < net.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < net.grid.nx; ++ix) {
            long pixel = 128;
            if (span > 0.0) {
                const double t = field.temps[net.cell_index(layer, ix, iy)];
                pixel = std::lround((t - lo) / span * 255.0);
                pixel = std::clamp(pixel, 0L, 255L);
            }
            if (ix > 0) out += ' ';
            out += std::to_string(pixel);
        }
        out += '\n';
    }
    return out;
}

void write_heatmap_pgm(const TemperatureField& field, const ThermalNetwork& net,
                       std::size_t layer, const std::filesystem::path& path) {
    write_text_file(path, heatmap_pgm(field, net, layer));
}

} // namespace spreadersim
