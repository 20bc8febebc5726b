#pragma once

#include <random>
#include <string>

#include "hopfkit/expr.hpp"
#include "hopfkit/families.hpp"
#include "hopfkit/quasitriangular.hpp"
#include "hopfkit/report.hpp"

namespace testing {

using namespace hopfkit;

inline HopfPtr family(const std::string& spec, const std::string& field = "") {
  FamilySpec fam = FamilySpec::parse(spec);
  return build(fam, choose_field(fam, {}, field));
}

inline HopfPtr family_with_r(const std::string& spec, const std::string& r, const std::string& field = "") {
  FamilySpec fam = FamilySpec::parse(spec);
  return build(fam, choose_field(fam, {RSpec::parse(r)}, field));
}

inline Tensor2 rmatrix(const HopfPtr& h, const std::string& spec, const std::string& r) {
  return build_r(h, FamilySpec::parse(spec), RSpec::parse(r));
}

inline Tensor T(const HopfPtr& h, const std::string& text, int order = 0) { return parse_tensor(h, text, order); }

// Random tensor with small integer coefficients on every basis element.
inline Tensor random_tensor(const HopfPtr& h, int order, std::mt19937_64& rng, double density = 1.0) {
  return Tensor(h, order, random_vector(*h->field, ipow(h->dim, order), rng, density));
}

}  // namespace testing
