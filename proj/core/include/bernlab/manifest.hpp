#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "bernlab/version.hpp"

namespace bernlab {

/// Run provenance attached to every CLI output. Identical manifests imply
/// bit-identical result files; CSV tables never embed the timing, so re-runs
/// of the same command are byte-comparable.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json params;
  std::uint64_t seed = 0;
  double timing_ms = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = seed;
    j["version"] = kVersion;
    j["conventions"] = {{"circle_measure", "dt/(2pi)"},
                        {"area_measure", "Lebesgue dA, total mass pi on the unit disk"}};
    j["timing_ms"] = timing_ms;
    return j;
  }
};

}  // namespace bernlab
