#ifndef SUBDUAL_RALPHS_HPP
#define SUBDUAL_RALPHS_HPP

#include "subdual/model.hpp"
#include "subdual/pwl.hpp"

namespace subdual {

/// The bundled one-row example from the integer-programming duality
/// literature (Ralphs et al.):
///
///   min  2 Y1 + Y2 + 1/2 X1
///   s.t. X1 - 3/2 X2 + Y1 - Y2 = b,  X integer >= 0,  Y >= 0
///
/// with desk-scale caps so the model can be solved and certified exactly.
/// Its value function near the origin is min(2b, 3/2 - b) for b >= 0 and -b
/// on [-1/2, 0], which makes it the standard probe for subadditive dual
/// machinery.
inline ConicMip ralphs_example(const Rational& rhs = 1, const Rational& int_cap = 10,
                               const Rational& cont_cap = 20) {
    ConicMip mip;
    mip.num_rows = 1;
    mip.A = {{Rational(1), Rational(-3, 2)}};
    mip.G = {{Rational(1), Rational(-1)}};
    mip.b = {rhs};
    mip.c = {Rational(1, 2), Rational(0)};
    mip.d = {Rational(2), Rational(1)};
    mip.row_sense = {RowSense::Eq};
    mip.int_bounds = {bounds(0, int_cap), bounds(0, int_cap)};
    mip.cont_bounds = {bounds(0, cont_cap), bounds(0, cont_cap)};
    return mip;
}

/// The two-segment near-origin approximation of the example's value function:
/// slope -1 left of the origin, slope 2 right of it.
inline PwlFunction ralphs_two_segment_approx() {
    return PwlFunction({Rational(-1), Rational(2)}, {Rational(0)});
}

} // namespace subdual

#endif // SUBDUAL_RALPHS_HPP
