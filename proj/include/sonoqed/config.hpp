#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sonoqed/bubble.hpp"

namespace sonoqed {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr double kDefaultKobsR = 15.0;

using KeyValues = std::map<std::string, std::string>;

// Lower case, '-' -> '_', and the short aliases (n_in, n_out) folded onto the
// gas-index names used everywhere else.
std::string canonical_key(const std::string& key);

// `key = value` per line, `#` starts a comment. Throws IoError / ValidationError.
KeyValues parse_key_values(const std::string& text, const std::string& source);
KeyValues load_config_file(const std::string& path);

// Later maps win.
KeyValues merge(const KeyValues& base, const KeyValues& over);

enum class Model { infinite, finite, both };

struct RunConfig {
    std::string command;
    KeyValues effective; // merged and completed with defaults, echoed in output

    std::optional<double> n_gas_in, n_gas_out;
    double n_liquid = 1.3;
    double radius_nm = 500.0;
    // Observed cutoff, as a wavelength or as K_obs R. With neither given,
    // K_obs R = kDefaultKobsR. When both are given k_obs_r wins.
    std::optional<double> cutoff_nm;
    std::optional<double> k_obs_r;
    double t0_fs = 1.0;
    Model model = Model::both;
    FiniteSpectrumConfig finite;
    double target = 1e6;
    double n_out_min = 1.0, n_out_max = 100.0;
    std::string output;
    int threads = 0; // 0 keeps the OpenMP default
};

// Typed, validated view of the merged key-value set. Unknown keys and
// out-of-range values are reported with the field name and accepted range.
// K_obs R implied by the cutoff settings.
double effective_k_obs_r(const RunConfig& c);
BubbleGeometry geometry_for(const RunConfig& c, double n_out);

RunConfig resolve(const std::string& command, const KeyValues& merged);

} // namespace sonoqed
