#pragma once

#include "ballquad/complex_box.hpp"

namespace ballquad {

// Holomorphic extensions of piecewise real functions. Pieces are separated
// by vertical lines (cuts on the real part). With analytic == true a box
// touching a cut yields an indeterminate result; with analytic == false the
// result encloses every piece the box can reach.

/// sqrt(z^2): z for Re z > 0, -z for Re z < 0.
ComplexBox abs_ext(const ComplexBox& z, bool analytic);
ComplexBox sgn_ext(const ComplexBox& z, bool analytic);
/// Constant k on the strip k < Re z < k + 1.
ComplexBox floor_ext(const ComplexBox& z, bool analytic);
/// Constant k + 1 on the strip k < Re z < k + 1.
ComplexBox ceil_ext(const ComplexBox& z, bool analytic);
/// x where Re(x - y) > 0, y where Re(x - y) < 0.
ComplexBox max_ext(const ComplexBox& x, const ComplexBox& y, bool analytic, Precision prec);
ComplexBox min_ext(const ComplexBox& x, const ComplexBox& y, bool analytic, Precision prec);

/// Principal sqrt/log; indeterminate when analytic and z meets (-inf, 0].
ComplexBox sqrt_analytic(const ComplexBox& z, bool analytic, Precision prec);
ComplexBox log_analytic(const ComplexBox& z, bool analytic, Precision prec);

}  // namespace ballquad
