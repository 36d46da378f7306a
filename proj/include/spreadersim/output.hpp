#pragma once

#include <filesystem>
#include <string>

#include "spreadersim/solver.hpp"

namespace spreadersim {

/// Rows `layer,ix,iy,temp_c`, 6 decimals, layer-major then iy then ix.
std::string temperature_csv(const TemperatureField& field, const ThermalNetwork& net);
void write_temperature_csv(const TemperatureField& field, const ThermalNetwork& net,
                           const std::filesystem::path& path);

/// ASCII PGM (P2), width nx, height ny (row iy = 0 first), linear min->0
/// max->255; a constant field maps to 128.
std::string heatmap_pgm(const TemperatureField& field, const ThermalNetwork& net,
                        std::size_t layer);
void write_heatmap_pgm(const TemperatureField& field, const ThermalNetwork& net,
                       std::size_t layer, const std::filesystem::path& path);

} // namespace spreadersim
