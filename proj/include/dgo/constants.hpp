#ifndef DGO_CONSTANTS_HPP
#define DGO_CONSTANTS_HPP

#include <cmath>

namespace dgo::constants {

// CODATA 2018 / exact SI values.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J/K
inline constexpr double c_light = 299792458.0;         // m/s
inline constexpr double fine_structure = 7.2973525693e-3;

// Graphene Fermi velocity over c; the standard v_F ~ 1e6 m/s value.
inline constexpr double fermi_velocity_ratio_default = 1.0 / 300.0;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// All internal frequencies are angular (rad/s). Config and CSV boundaries
// use ordinary frequency (Hz) with explicit `_over_2pi` labels.
inline constexpr double angular_from_hz(double f) { return two_pi * f; }
inline constexpr double hz_from_angular(double w) { return w / two_pi; }

}  // namespace dgo::constants

#endif  // DGO_CONSTANTS_HPP
