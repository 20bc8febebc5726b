#pragma once

#include <string>
#include <vector>

#include "hopfkit/families.hpp"

namespace hopfkit {

enum class RKind { EnA, AC22, H8pm, H8omega, AC4Dual, Bichar, Trivial, Explicit, None };

struct RSpec {
  RKind kind = RKind::None;
  std::vector<std::vector<std::string>> matrix;  // EnA entries (scalar text) or Bichar integers
  int q = 0;                                     // AC22
  std::string a = "0";                           // AC22 scalar text
  int alpha = 1, beta = 1;                       // H8pm
  std::string omega = "z8";                      // H8omega
  std::string expr;                              // Explicit

  // `en-a:[[0,1],[1,0]]`, `ac22:q=0,a=1`, `h8pm:+1,-1`, `h8omega:z8`, `ac4dual`,
  // `bichar:[[1,0],[0,1]]`, `trivial` (1 (x) 1, cocommutative algebras), `explicit:<tensor>`,
  // `none` (no R; R-free analysis).
  static RSpec parse(const std::string& text);
  std::string to_string() const;
  unsigned required_order() const;

  static RSpec en_a(const std::vector<std::vector<long>>& a);
  static RSpec bichar(const std::vector<std::vector<long>>& m);
};

Tensor2 build_r(const HopfPtr& h, const FamilySpec& fam, const RSpec& spec);

// R_A on E(n) with A given as field scalars.
Tensor2 build_en_r(const HopfPtr& h, unsigned n, const std::vector<std::vector<Scalar>>& A);
Tensor2 build_ac22_r(const HopfPtr& h, int q, const Scalar& a);
Tensor2 build_h8_pm(const HopfPtr& h, int alpha, int beta);
// R_omega in the leg order that satisfies the axioms for the co-opposite coproduct.
Tensor2 build_h8_omega_coop(const HopfPtr& h, const Scalar& omega);
// Flip of build_h8_omega_coop: a quasitriangular structure for the H8 coproduct used here.
Tensor2 build_h8_omega(const HopfPtr& h, const Scalar& omega);
Tensor2 build_ac4dual_r(const HopfPtr& h);
// R = sum_{a,b in Z_n^2} q^{a^T M b} e_a (x) e_b on the group part of H_{2n^2}.
Tensor2 build_bichar_r(const HopfPtr& h, unsigned n, const std::vector<std::vector<long>>& m);

// Checks: invertibility, R Delta(b) = Delta^op(b) R for every basis b, both hexagons,
// counit normalization, QYB, and the antipode form of the inverse.
VerificationReport verify_qtr(const HopfPtr& h, const Tensor2& r, bool fail_fast = false);
bool is_triangular(const HopfPtr& h, const Tensor2& r);
Tensor2 r_inverse(const HopfPtr& h, const Tensor2& r);
bool qyb_holds(const Tensor2& r);

// Conjugation identities for R_omega on H8 (both leg orders), z^2 and z^4, and a membership check.
VerificationReport conjugation_identities_h8(const HopfPtr& h, const Scalar& omega);
VerificationReport rswap_identities_en(const HopfPtr& h, const Tensor2& r);

struct EnumeratedR {
  std::vector<std::vector<long>> matrix;
  Tensor2 r;
};
// All bicharacter-supported R-matrices of H_{2n^2}(n) (n <= 4) that pass verify_qtr,
// ordered lexicographically by matrix.
std::vector<EnumeratedR> enumerate_group_rmatrices(const HopfPtr& h, unsigned n);

// Registered R-matrices of a family, used by `--r enumerate`.
std::vector<RSpec> registered_rspecs(const FamilySpec& fam);

}  // namespace hopfkit
