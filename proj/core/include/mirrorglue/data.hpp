#pragma once

#include <string>

namespace mg {

// MIRRORGLUE_DATA_DIR overrides; otherwise the source tree, then the install prefix
std::string data_dir();
std::string read_file(const std::string& path);

} // namespace mg
