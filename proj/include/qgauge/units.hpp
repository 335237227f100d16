#ifndef QGAUGE_UNITS_HPP
#define QGAUGE_UNITS_HPP

namespace qgauge::units {

// Hartree atomic units throughout: lengths in bohr, energies in hartree,
// times in hbar/hartree, fields in hartree/(e*bohr).
inline constexpr double hbar = 1.0;
inline constexpr double electron_mass = 1.0;
inline constexpr double elementary_charge = 1.0;
inline constexpr double coulomb_constant = 1.0; // 1/(4 pi eps0)
inline constexpr double speed_of_light = 137.035999;

} // namespace qgauge::units

#endif
