#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "spreadersim/config.hpp"
#include "spreadersim/errors.hpp"
#include "spreadersim/output.hpp"

using namespace spreadersim;

namespace {

ThermalNetwork bare_network(std::size_t nx, std::size_t ny,
                            std::vector<std::string> layer_names) {
    ThermalNetwork net;
    net.grid = GridSpec{nx, ny, {1e-2, 1e-2}};
    net.n_layers = layer_names.size();
    net.layer_names = std::move(layer_names);
    net.capacitance.assign(net.n_cells(), 1.0);
    net.ambient_conductance.assign(net.n_cells(), 0.0);
    return net;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("temperature CSV layout and ordering") {
    ThermalNetwork net = bare_network(2, 2, {"die"});
    TemperatureField field;
    field.temps = {45.25, 46.5, 47.125, 48.0, 45.0}; // last entry: lumped node

    const auto lines = lines_of(temperature_csv(field, net));
    REQUIRE(lines.size() == 5); // header + 4 cells, lumped node not emitted
    CHECK(lines[0] == "layer,ix,iy,temp_c");
    CHECK(lines[1] == "die,0,0,45.250000");
    CHECK(lines[2] == "die,1,0,46.500000");
    CHECK(lines[3] == "die,0,1,47.125000");
    CHECK(lines[4] == "die,1,1,48.000000");
}

TEST_CASE("temperature CSV on an empty network is just the header") {
    ThermalNetwork net = bare_network(0, 0, {});
    TemperatureField field;
    field.temps = {45.0}; // the lumped node always exists
    CHECK(temperature_csv(field, net) == "layer,ix,iy,temp_c\n");
}

TEST_CASE("temperature CSV round-trips to 1e-6") {
    ThermalNetwork net = bare_network(3, 2, {"die", "base"});
    TemperatureField field;
    field.temps.assign(net.n_cells(), 0.0);
    for (std::size_t i = 0; i < field.temps.size(); ++i)
        field.temps[i] = 45.0 + 0.1234567 * static_cast<double>(i);

    const auto lines = lines_of(temperature_csv(field, net));
    REQUIRE(lines.size() == 1 + 12);
    std::size_t cell = 0;
    for (std::size_t layer = 0; layer < 2; ++layer)
        for (std::size_t iy = 0; iy < 2; ++iy)
            for (std::size_t ix = 0; ix < 3; ++ix) {
                const std::string& line = lines[1 + cell];
                const auto last_comma = line.rfind(',');
                const double parsed = std::stod(line.substr(last_comma + 1));
                CHECK(std::abs(parsed - field.temps[net.cell_index(layer, ix, iy)]) <= 1e-6);
                ++cell;
            }
}

TEST_CASE("temperature CSV rejects a mismatched field") {
    ThermalNetwork net = bare_network(2, 2, {"die"});
    TemperatureField field;
    field.temps = {1.0, 2.0};
    CHECK_THROWS_AS(temperature_csv(field, net), ValidationError);
}

TEST_CASE("heatmap PGM encoding") {
    ThermalNetwork net = bare_network(4, 4, {"die"});
    TemperatureField field;
    field.temps.assign(net.n_cells(), 45.0);

    SUBCASE("constant field renders mid-gray") {
        const auto lines = lines_of(heatmap_pgm(field, net, 0));
        REQUIRE(lines.size() == 3 + 4);
        CHECK(lines[0] == "P2");
        CHECK(lines[1] == "4 4");
        CHECK(lines[2] == "255");
        for (int row = 0; row < 4; ++row) CHECK(lines[3 + row] == "128 128 128 128");
    }
    SUBCASE("corner-heated field maps monotonically along the diagonal") {
        for (std::size_t iy = 0; iy < 4; ++iy)
            for (std::size_t ix = 0; ix < 4; ++ix)
                field.temps[net.cell_index(0, ix, iy)] =
                    45.0 + static_cast<double>(ix + iy);
        const auto lines = lines_of(heatmap_pgm(field, net, 0));
        int prev = -1;
        for (int d = 0; d < 4; ++d) {
            std::istringstream row(lines[3 + d]);
            int pixel = 0;
            for (int k = 0; k <= d; ++k) row >> pixel;
            CHECK(pixel > prev);
            prev = pixel;
        }
        CHECK(prev == 255);                  // hottest cell saturates
        CHECK(lines[3].substr(0, 1) == "0"); // coolest cell is black
    }
    SUBCASE("layer out of range") {
        CHECK_THROWS_AS(heatmap_pgm(field, net, 1), ValidationError);
    }
}

TEST_CASE("file writers surface the path on failure") {
    ThermalNetwork net = bare_network(2, 2, {"die"});
    TemperatureField field;
    field.temps.assign(net.n_cells(), 45.0);
    const std::filesystem::path bad = "/nonexistent-dir/out.csv";
    CHECK_THROWS_AS(write_temperature_csv(field, net, bad), IoError);
    CHECK_THROWS_AS(write_heatmap_pgm(field, net, 0, bad), IoError);

    const char* tmp = std::getenv("TMPDIR");
    const std::filesystem::path dir = tmp ? tmp : "/tmp";
    const std::filesystem::path ok = dir / "spreadersim_output_test.csv";
    write_temperature_csv(field, net, ok);
    CHECK(read_text_file(ok) == temperature_csv(field, net));
    std::filesystem::remove(ok);
}
