#pragma once

namespace effect_order::tol {

// Base residual tolerance; scaled by dimension and condition numbers at use sites.
inline constexpr double spectral = 1e-9;

// Eigenvalues in [-psd_clamp, 0) are treated as round-off and clamped to zero.
inline constexpr double psd_clamp = 1e-10;

// Smallest admissible |eigenvalue| or singular value for an inverse.
inline constexpr double invertibility = 1e-10;

// Fraction of the gap between 1 and the pole 1 - 1/p that is kept free when p < 0.
inline constexpr double domain_margin = 0.05;

// Largest admissible Moebius parameter; keeps 1 - p away from zero.
inline constexpr double moebius_p_max = 1.0 - 1e-12;

}  // namespace effect_order::tol
