#pragma once

#include <span>
#include <string_view>

namespace diamond::cli {

/// A figure reproduction recipe: a run config plus the headline analysis and
/// the checks applied to it, all as JSON text.
struct Preset {
  std::string_view id;
  std::string_view text;
};

std::span<const Preset> presets();

/// Throws UnknownFigure.
const Preset& find_preset(std::string_view id);

}  // namespace diamond::cli
