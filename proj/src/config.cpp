#include "spreadersim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spreadersim/errors.hpp"

namespace spreadersim {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) { known = true; break; }
        if (!known)
            throw ParseError("config: unknown key '" + key + "' in " + where);
    }
}

MaterialProps parse_material(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ParseError("config: " + where + " must be an object");
    require_keys(obj, {"conductivity", "volumetric_heat_capacity"}, where);
    MaterialProps m;
    m.conductivity = obj.at("conductivity").get<double>();
    m.volumetric_heat_capacity = obj.at("volumetric_heat_capacity").get<double>();
    return m;
}

Extent parse_extent(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ParseError("config: " + where + " must be an object");
    require_keys(obj, {"width", "height"}, where);
    Extent e;
    e.width = obj.at("width").get<double>();
    e.height = obj.at("height").get<double>();
    return e;
}

void parse_package_section(const json& obj, PackageConfig& pkg) {
    require_keys(obj, {"layers", "sink_convection_resistance_total", "ambient_temperature"},
                 "package");
    if (obj.contains("layers")) {
        const auto& arr = obj.at("layers");
        if (!arr.is_array()) throw ParseError("config: package.layers must be an array");
        pkg.layers.clear();
        for (const auto& entry : arr) {
            const std::string where = "package.layers[" + std::to_string(pkg.layers.size()) + "]";
            if (!entry.is_object()) throw ParseError("config: " + where + " must be an object");
            require_keys(entry, {"name", "thickness", "material", "extent", "filler"}, where);
            Layer l;
            l.name = entry.at("name").get<std::string>();
            l.thickness = entry.at("thickness").get<double>();
            l.material = parse_material(entry.at("material"), where + ".material");
            l.extent = parse_extent(entry.at("extent"), where + ".extent");
            l.filler = entry.contains("filler")
                           ? parse_material(entry.at("filler"), where + ".filler")
                           : MaterialProps{0.25, 2.0e6};
            pkg.layers.push_back(std::move(l));
        }
    }
    if (obj.contains("sink_convection_resistance_total"))
        pkg.sink_convection_resistance_total =
            obj.at("sink_convection_resistance_total").get<double>();
    if (obj.contains("ambient_temperature"))
        pkg.ambient_temperature = obj.at("ambient_temperature").get<double>();
}

void parse_mttf_section(const json& obj, MttfParams& p) {
    require_keys(obj, {"ea_em", "ea_sm", "n_sm", "t_metal_sm", "q_tc", "boltzmann"}, "mttf");
    p.ea_em = obj.value("ea_em", p.ea_em);
    p.ea_sm = obj.value("ea_sm", p.ea_sm);
    p.n_sm = obj.value("n_sm", p.n_sm);
    p.t_metal_sm = obj.value("t_metal_sm", p.t_metal_sm);
    p.q_tc = obj.value("q_tc", p.q_tc);
    p.boltzmann = obj.value("boltzmann", p.boltzmann);
}

void parse_experiment_section(const json& obj, ExperimentSpec& spec) {
    require_keys(obj,
                 {"n_cores", "grid_nx", "grid_ny", "center_rise_target", "active_counts",
                  "selection", "seed", "trials"},
                 "experiment");
    spec.n_cores = obj.value("n_cores", spec.n_cores);
    spec.grid_nx = obj.value("grid_nx", spec.grid_nx);
    spec.grid_ny = obj.value("grid_ny", spec.grid_ny);
    spec.center_rise_target = obj.value("center_rise_target", spec.center_rise_target);
    if (obj.contains("active_counts")) {
        const auto& arr = obj.at("active_counts");
        if (!arr.is_array()) throw ParseError("config: experiment.active_counts must be an array");
        spec.active_counts.clear();
        for (const auto& v : arr) spec.active_counts.push_back(v.get<std::size_t>());
    }
    if (obj.contains("selection"))
        spec.selection = selection_from_string(obj.at("selection").get<std::string>());
    spec.seed = obj.value("seed", spec.seed);
    spec.trials = obj.value("trials", spec.trials);
}

} // namespace

ToolConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config: top level must be a JSON object");

    ToolConfig cfg;
    cfg.package = default_package();
    try {
        require_keys(doc, {"package", "mttf", "experiment"}, "the top level");
        if (doc.contains("package")) {
            if (!doc.at("package").is_object())
                throw ParseError("config: 'package' must be an object");
            parse_package_section(doc.at("package"), cfg.package);
        }
        if (doc.contains("mttf")) {
            if (!doc.at("mttf").is_object()) throw ParseError("config: 'mttf' must be an object");
            parse_mttf_section(doc.at("mttf"), cfg.mttf);
        }
        if (doc.contains("experiment")) {
            if (!doc.at("experiment").is_object())
                throw ParseError("config: 'experiment' must be an object");
            parse_experiment_section(doc.at("experiment"), cfg.experiment);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    validate(cfg.package);
    return cfg;
}

ToolConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed on '" + path.string() + "'");
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed on '" + path.string() + "'");
}

} // namespace spreadersim
