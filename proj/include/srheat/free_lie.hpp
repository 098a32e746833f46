#pragma once

#include "srheat/lie_element.hpp"
#include "srheat/tensor_poly.hpp"

namespace srheat {

// Embed a Lie element into the tensor algebra by expanding each basis
// bracket into words.
TensorPoly lie_to_tensor(const LieElement& u);

// Truncated exponential sum_k T(u)^k / k! of the embedded element. The
// result has scalar part exactly 1.
GrouplikeTensor exp_tensor(const LieElement& u);

// Truncated logarithm followed by extraction of Hall coordinates. Requires
// scalar part 1 (throws std::domain_error otherwise). For group-like input
// the word series of the logarithm lies in the Lie algebra and the
// extraction is exact; the triangularity of the Lyndon expansions makes it a
// single forward sweep in basis order.
LieElement log_tensor(const GrouplikeTensor& g);

// log(exp(a) exp(b)), the truncated Baker-Campbell-Hausdorff product.
LieElement bch(const LieElement& a, const LieElement& b);

// Scale grade k by c^k.
LieElement dilate(const LieElement& u, double c);

// Forget all coordinates of grade > new_step (new_step <= step).
LieElement project(const LieElement& u, int new_step);

}  // namespace srheat
