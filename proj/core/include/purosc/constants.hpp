#pragma once

namespace purosc {

/// Physical constants. Natural units (hbar = k_B = 1) by default.
struct PhysConstants {
  double hbar = 1.0;
  double k_B = 1.0;
};

/// Relative tolerance on |sigma - hbar^2/4| below which a state counts as pure.
inline constexpr double kPurityRelTol = 1e-9;

void validate(const PhysConstants& c);

}  // namespace purosc
