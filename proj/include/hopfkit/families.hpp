#pragma once

#include <string>
#include <vector>

#include "hopfkit/hopf.hpp"

namespace hopfkit {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FamilyKind { En, AC2n, H2n2, H8, Radford, AC4Dual, Group, Tensor };

struct FamilySpec {
  FamilyKind kind = FamilyKind::En;
  unsigned n = 1;  // E(n), A_{C_2^n}, H_{2n^2}, Radford nilpotency order
  unsigned r = 1;  // Radford: M = r n
  std::vector<unsigned> orders;     // group algebra
  std::vector<FamilySpec> factors;  // tensor product

  static FamilySpec parse(const std::string& text);
  std::string to_string() const;
  // Root-of-unity order needed by the structure constants.
  unsigned required_order() const;
  // Primes that must be invertible.
  std::vector<unsigned> required_units() const;
};

HopfPtr build(const FamilySpec& spec, const Field& f);

HopfPtr build_en(unsigned n, const Field& f);
HopfPtr build_ac22(const Field& f);
// A_{C_2^n} obtained from A_{C_2 x C_2} (x) kC_2^{n-2} relabelled by 1 (x) g_i -> g g_i.
HopfPtr build_ac2n(unsigned n, const Field& f);
// Same algebra from its presentation, used as an independent oracle.
HopfPtr build_ac2n_presented(unsigned n, const Field& f);
HopfPtr build_h2n2(unsigned n, const Field& f);
HopfPtr build_h8(const Field& f);
HopfPtr build_radford(unsigned r, unsigned n, const Field& f);
HopfPtr build_ac4dual(const Field& f);
HopfPtr build_group(const std::vector<unsigned>& orders, const Field& f,
                    const std::vector<std::string>& names = {});
HopfPtr tensor_product(const HopfPtr& a, const HopfPtr& b);

// Coproduct obtained by multiplying generator coproducts along basis words.
std::vector<SparseVec> coproduct_from_generators(const HopfPtr& h);
// Antipode obtained from generator images by anti-multiplicativity.
std::vector<SparseVec> antipode_from_generators(const HopfPtr& h);

Elem generator(const HopfPtr& h, const std::string& name);
Elem basis_elem(const HopfPtr& h, const std::string& label);

// Sign of moving the elements at positions F to the right inside x_P.
// F, P are bitmasks over {1..n}; F must be a subset of P.
int en_split_sign(unsigned F, unsigned P);
// x_P = sign * x_{P \ i} x_i
int en_removal_sign(unsigned P, unsigned i);
// Gaussian binomial coefficient (m choose u)_Q.
Scalar q_binomial(unsigned m, unsigned u, const Scalar& Q);

struct HopfMorphism {
  HopfPtr source;
  HopfPtr target;
  std::vector<SparseVec> images;  // image of each source basis vector
  Elem apply(const Elem& a) const;
  Tensor2 apply(const Tensor2& t, bool both_legs) const;
  VerificationReport verify() const;
};

// Projection onto the group-like coradical for En, AC2n and Radford families.
HopfMorphism coradical_projection(const FamilySpec& spec, const HopfPtr& h);

struct H8Idempotents {
  Elem e1, ex, ey, exy;
};
H8Idempotents h8_idempotents(const HopfPtr& h);

}  // namespace hopfkit
