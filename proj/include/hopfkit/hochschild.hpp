#pragma once

#include <optional>

#include "hopfkit/families.hpp"

namespace hopfkit {

// Matrix of b^n : H^{(x) n} -> H^{(x) n+1} in row-major tensor bases.
// b^0 is the zero map k -> H (one column).
struct CobarDifferential {
  unsigned degree = 0;
  SparseMat matrix;
};

// b^n(t) = 1 (x) t + sum_{i=1}^{n} (-1)^i Delta_i(t) + (-1)^{n+1} t (x) 1, evaluated directly.
Tensor cobar_apply(const Tensor& t);
// n in {0, 1, 2, 3}.
CobarDifferential b_matrix(const HopfPtr& h, unsigned n);

// Z^n = ker b^n and B^n = im b^{n-1}, n in {1, 2}.
Subspace cocycles(const HopfPtr& h, unsigned n);
Subspace coboundaries(const HopfPtr& h, unsigned n);
long h_dim(const HopfPtr& h, unsigned n);

// alpha with b^1(alpha) = t, free coordinates zero; nullopt if t is not a coboundary.
std::optional<Elem> coboundary_preimage(const HopfPtr& h, const Tensor2& t);

// Z^2(E(n)) = B^2 (+) I with I spanned by g x_i (x) x_l, i <= l.
struct EnZ2Decomposition {
  std::size_t z2 = 0, b2 = 0, i_dim = 0, intersection = 0;
  VerificationReport report;
};
EnZ2Decomposition en_z2_decomposition(const HopfPtr& h, unsigned n);
// The tensors g x_i (x) x_l (i <= l) spanning I.
std::vector<Tensor2> en_i_generators(const HopfPtr& h, unsigned n);

}  // namespace hopfkit
