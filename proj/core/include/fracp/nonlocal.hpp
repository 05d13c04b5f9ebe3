#pragma once

#include "fracp/field.hpp"
#include "fracp/kernel.hpp"

namespace fracp {

// Discrete forms over D_Omega. Pairs are stored once (unordered); the double
// integral over ordered pairs is twice the unordered sum. The beyond-collar
// exterior enters as one extra pair per interior node with partner value 0 and
// weight w * tail_i.

/// |t|^(p-2) t, with the value 0 at t = 0 for every p > 1.
double signed_power(double t, double p);
/// |t|^p
double abs_power(double t, double p);

/// [u]^p = 2 * (sum_pairs sigma_ij |u_i - u_j|^p + sum_i w tail_i |u_i|^p).
double gagliardo_p(const KernelTable& kernel, const Field& u);

/// A(u) = [u]^p / (2p), convex, A(0) = 0.
double energy(const KernelTable& kernel, const Field& u);

/// Discrete (-Delta)_p^s u: the gradient of energy with respect to the
/// interior values, divided by w. Exterior entries are 0. Each interior node
/// sums its partners in a fixed order, so the result does not depend on the
/// thread count.
Field apply_operator(const KernelTable& kernel, const Field& u, int threads = 0);

/// <A u, v> = sum_pairs sigma_ij |du|^(p-2) du dv + sum_i w tail_i |u_i|^(p-2) u_i v_i
///          = w * sum_i apply_operator(u)_i v_i.
double pairing(const KernelTable& kernel, const Field& u, const Field& v);

}  // namespace fracp
