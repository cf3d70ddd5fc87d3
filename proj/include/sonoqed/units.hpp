#pragma once

#include <numbers>

// SI throughout. Conversions live here and are only used at the CLI edge.
namespace sonoqed::units {

inline constexpr double speed_of_light = 2.99792458e8;   // m/s, exact
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double electron_volt = 1.602176634e-19; // J, exact

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct PhysicalConstants {
    double c;
    double hbar;
};

constexpr PhysicalConstants physical_constants() { return {speed_of_light, hbar}; }

constexpr double nm_to_m(double nm) { return nm * 1e-9; }
constexpr double m_to_nm(double m) { return m * 1e9; }
constexpr double fs_to_s(double fs) { return fs * 1e-15; }
constexpr double s_to_fs(double s) { return s * 1e15; }
constexpr double ev_to_joule(double ev) { return ev * electron_volt; }
constexpr double joule_to_ev(double j) { return j / electron_volt; }

// PHz is an ordinary frequency; rad/s is angular.
constexpr double phz_to_rad_per_s(double phz) { return two_pi * phz * 1e15; }
constexpr double rad_per_s_to_phz(double w) { return w / (two_pi * 1e15); }
constexpr double rad_per_s_to_hz(double w) { return w / two_pi; }

} // namespace sonoqed::units
