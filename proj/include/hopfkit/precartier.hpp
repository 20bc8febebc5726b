#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/families.hpp"

namespace hopfkit {

// Linear constraints on the unknown chi in H (x) H; every block has (dim H)^2 columns.
// Tags: cqtr1 (chi Delta(b) = Delta(b) chi for every basis b),
//       cqtr2 (R12 (Id(x)Delta)(chi) = R12 chi12 + chi13 R12),
//       cqtr3 (R23 (Delta(x)Id)(chi) = R23 chi23 + chi13 R23),
//       counit_left, counit_right, cartier (R chi = chi^op R), cocycle (b^2 chi = 0).
struct ChiSystem {
  HopfPtr h;
  std::optional<Tensor2> r;
  std::vector<std::pair<std::string, SparseMat>> blocks;
  const SparseMat& block(const std::string& tag) const;
  bool has(const std::string& tag) const;
};

// All blocks applicable to the given R (cqtr2, cqtr3 and cartier need R).
ChiSystem build_system(const HopfPtr& h, const std::optional<Tensor2>& r);
// Single block, assembled column by column.
SparseMat build_block(const HopfPtr& h, const std::optional<Tensor2>& r, const std::string& tag);
// Image of chi under a block's linear map, evaluated directly on tensors (R^{-1} form for cqtr2/cqtr3,
// multiplied back by R so the result is comparable with the block matrix).
SparseVec block_residual(const HopfPtr& h, const std::optional<Tensor2>& r, const std::string& tag,
                         const Tensor2& chi);

// Direct check of the infinitesimal axioms:
// chi Delta(.) = Delta(.) chi, (Id(x)Delta)(chi) = chi12 + R12^{-1} chi13 R12,
// (Delta(x)Id)(chi) = chi23 + R23^{-1} chi13 R23.
bool is_infinitesimal(const HopfPtr& h, const Tensor2& r, const Tensor2& chi);
bool counits_vanish(const Tensor2& chi);

Subspace solve_infinitesimal(const HopfPtr& h, const Tensor2& r);
// Kernel of cqtr1 and both counit blocks: an upper bound for every chi-space.
Subspace solve_rfree(const HopfPtr& h);
Subspace cartier_subspace(const HopfPtr& h, const Tensor2& r, const Subspace& chi_space);
// Cartier subspace equals chi_space intersected with B^2.
bool cartier_coboundary_check(const HopfPtr& h, const Tensor2& r, const Subspace& chi_space);
// m(S (x) Id)(chi).
Elem casimir(const HopfPtr& h, const Tensor2& chi);

std::vector<Tensor2> as_tensors(const HopfPtr& h, const Subspace& s);
// span{g x_p (x) x_q : 1 <= p, q <= n} in E(n).
Subspace en_chi_span(const HopfPtr& h, unsigned n);

}  // namespace hopfkit
