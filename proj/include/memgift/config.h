#ifndef MEMGIFT_CONFIG_H_
#define MEMGIFT_CONFIG_H_

// Parameter files for `--params`. A JSON object with up to three sections,
// each optional and each overriding only the keys it names:
//
//   {
//     "device": {"r_lrs": 2000, "sigma_c2c": 0.05, "seed": 7},
//     "sense":  {"topology": "divider", "sxor": {"m1": 2000}},
//     "energy": {"clock_hz": 2e7, "cell_read": 5e-15}
//   }
//
// Unknown sections or keys raise ConfigError, so a typo never silently
// falls back to a default.

#include <filesystem>
#include <istream>

#include "memgift/crossbar.h"
#include "memgift/energy.h"

namespace memgift {

struct ParamSet {
  DeviceParams device;
  SenseAmpParams sense;
  EnergyParams energy;
};

// Applies the overrides in `in` on top of `base` and validates the result.
ParamSet read_params(std::istream& in, const ParamSet& base = {});
// Throws InputError naming the path if the file cannot be opened.
ParamSet load_params(const std::filesystem::path& path,
                     const ParamSet& base = {});

}  // namespace memgift

#endif  // MEMGIFT_CONFIG_H_
