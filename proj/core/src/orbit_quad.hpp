#pragma once

#include "bcdual/model.hpp"

namespace bcdual::detail {

// V = A^{-1/2} F evaluated in quad precision and rounded once. A is
// Cauchy-like and its condition number routinely exceeds 1e10, which in
// double would cost V*V = N most of its digits.
CVector orbit_vector_quad(const ModelParams& params, const PhasePointR& pt);

}  // namespace bcdual::detail
