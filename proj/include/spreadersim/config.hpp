#pragma once

#include <filesystem>
#include <string>

#include "spreadersim/experiment.hpp"
#include "spreadersim/package.hpp"
#include "spreadersim/reliability.hpp"

namespace spreadersim {

/// Tool configuration; every section and field is optional and defaults to
/// the documented package/model constants.
struct ToolConfig {
    PackageConfig package;
    MttfParams mttf;
    ExperimentSpec experiment;
};

/// JSON with top-level sections `package`, `mttf`, `experiment`, the fields
/// mirroring the corresponding struct names.
ToolConfig parse_config(const std::string& json_text);
ToolConfig load_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path); // throws IoError
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace spreadersim
