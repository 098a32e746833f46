#pragma once

#include "srheat/free_lie.hpp"
#include "srheat/path.hpp"
#include "srheat/tensor_poly.hpp"

namespace srheat {

// Signature of a piecewise linear path truncated at the given step: the
// ordered tensor product over segments of the exponential of each segment's
// increment. Depends on the vertices only; time stamps never enter.
GrouplikeTensor pwl_signature(const PiecewiseLinearPath& path, int step);

// Hall coordinates of the logarithm of the signature.
LieElement log_signature(const PiecewiseLinearPath& path, int step);

// Chen product: the signature of a concatenation is the tensor product of
// the signatures. Both inputs must be group-like (scalar part 1).
GrouplikeTensor chen_concat(const GrouplikeTensor& a, const GrouplikeTensor& b);

// Signed area between the planar path and the chord from its start point:
// 0.5 * integral of (y1 dy2 - y2 dy1) with y the path relative to its start,
// accumulated in closed form per segment. Requires dim == 2.
double levy_area(const PiecewiseLinearPath& path);

}  // namespace srheat
