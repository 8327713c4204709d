// constants.hpp
//
// Shared numerical constants. Lengths are micrometres, angles radians,
// and angular momentum is expressed in units of hbar throughout the
// library; the SI values live here for display-only conversions.

#pragma once

namespace whichpath {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Reduced Planck constant in the library's natural units.
inline constexpr double hbar = 1.0;

/// Reduced Planck constant, J s. Never used in assertions.
inline constexpr double hbar_si = 1.054571817e-34;

/// Vacuum speed of light in micrometres per second.
inline constexpr double c_um_per_s = 2.99792458e14;

/// Vacuum permittivity, F/m. Display-only.
inline constexpr double epsilon0_si = 8.8541878128e-12;

}  // namespace whichpath
