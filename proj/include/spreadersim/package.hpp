#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spreadersim/errors.hpp"

namespace spreadersim {

// All geometry is SI meters; temperatures are deg C at I/O boundaries.

struct MaterialProps {
    double conductivity = 0.0;             // W/(m K)
    double volumetric_heat_capacity = 0.0; // J/(m^3 K)
};

struct Extent {
    double width = 0.0;  // m
    double height = 0.0; // m
};

/// One stacked slab of the package. Cells that fall outside the nominal
/// extent (which is centered on the grid footprint) take the filler material.
struct Layer {
    std::string name;
    double thickness = 0.0; // m
    MaterialProps material;
    Extent extent;
    MaterialProps filler;
};

struct PackageConfig {
    std::vector<Layer> layers; // die first, sink base last
    double sink_convection_resistance_total = 0.0; // K/W, fins + air film
    double ambient_temperature = 0.0;              // deg C

    /// Footprint of the widest layer; the simulation grid spans this.
    Extent grid_extent() const;
    const Layer& die() const { return layers.front(); }
    std::size_t layer_index(std::string_view name) const; // throws ValidationError
};

struct Block {
    std::string name;
    double x = 0.0, y = 0.0;          // relative to die origin, m
    double width = 0.0, height = 0.0; // m
};

struct Floorplan {
    std::vector<Block> blocks;
};

using PowerMap = std::map<std::string, double>; // block name -> W

void validate(const MaterialProps& m, std::string_view context);
void validate(const PackageConfig& pkg);
void validate(const Floorplan& fp);
void validate(const Floorplan& fp, const Extent& die_extent);
void validate(const PowerMap& pm, const Floorplan& fp);

/// HotSpot-5-flavoured defaults: 16 mm silicon die on TIM, 30 mm copper
/// spreader and sink base, 0.1 K/W total convection, 45 C ambient.
PackageConfig default_package();

/// CSV columns `name,x,y,w,h` in meters; `#` starts a comment line.
Floorplan parse_floorplan(const std::string& text);
Floorplan parse_floorplan(const std::string& text, const Extent& die_extent);
std::string serialize_floorplan(const Floorplan& fp);

/// Uniform rows x cols tiling of the die, block names `c<r>_<c>`.
Floorplan make_grid_floorplan(std::size_t rows, std::size_t cols, const Extent& die_extent);

/// CSV columns `name,watts`; `#` starts a comment line.
PowerMap parse_power_map(const std::string& text);

} // namespace spreadersim
