#pragma once

#include <string>

namespace bpgeo::presets {

// returns the embedded config text for a named preset, or nullptr
const char* find(const std::string& name);

}  // namespace bpgeo::presets
