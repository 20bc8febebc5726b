#pragma once

#include <string>

#include "hopfkit/families.hpp"

namespace hopfkit {

// Element grammar, precedence from loosest to tightest:
//   sum    := tensor (('+'|'-') tensor)*
//   tensor := prod ('(x)' prod)*
//   prod   := unary (('*'|'/') unary)*
//   unary  := ('-'|'+') unary | power
//   power  := atom ('^' int)?
//   atom   := int | generator | 'z'int | '(' sum ')'
// Bare scalars are promoted to multiples of the unit where an element is needed.
// `expect_order` > 0 forces the result order (a scalar becomes scalar * 1^{(x) k}).
Tensor parse_tensor(const HopfPtr& h, const std::string& text, int expect_order = 0);
Scalar parse_scalar(const Field& f, const std::string& text);

// Canonical text: basis terms in index order, each written as coefficient times generator words.
std::string format_tensor(const Tensor& t);

}  // namespace hopfkit
