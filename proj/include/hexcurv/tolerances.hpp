#pragma once

namespace hexcurv::tol {

inline constexpr double causal = 1e-10;
inline constexpr double norm = 1e-9;
inline constexpr double rank = 1e-12;
inline constexpr double resid = 1e-12;

inline constexpr double law = 1e-10;
inline constexpr double compat = 1e-9;
inline constexpr double sign = 1e-9;
inline constexpr double len = 1e-8;

inline constexpr double eig = 1e-12;

}  // namespace hexcurv::tol
