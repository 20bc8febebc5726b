#pragma once

#include <functional>

#include "hopfkit/families.hpp"

namespace hopfkit {

// Polynomial in hbar with coefficients in H^{(x) k}: sum_j hbar^j coeffs[j].
class PolyTensor {
 public:
  PolyTensor() = default;
  PolyTensor(HopfPtr h, int order) : h_(std::move(h)), order_(order) {}
  explicit PolyTensor(const Tensor& constant);

  const std::vector<Tensor>& coeffs() const { return c_; }
  // Degree of the highest nonzero coefficient; -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Tensor coeff(int j) const;
  int order() const { return order_; }
  const HopfPtr& hopf() const { return h_; }
  void set(int j, const Tensor& t);

  friend PolyTensor operator+(const PolyTensor& a, const PolyTensor& b);
  friend PolyTensor operator-(const PolyTensor& a, const PolyTensor& b);
  // Convolution of coefficient sequences.
  friend PolyTensor operator*(const PolyTensor& a, const PolyTensor& b);
  friend bool operator==(const PolyTensor& a, const PolyTensor& b) { return (a - b).c_.empty(); }
  friend bool operator!=(const PolyTensor& a, const PolyTensor& b) { return !(a == b); }

  // Coefficientwise maps.
  PolyTensor map(const std::function<Tensor(const Tensor&)>& fn, int new_order) const;

 private:
  void trim();
  HopfPtr h_;
  int order_ = 2;
  std::vector<Tensor> c_;
};
using PolyTensor2 = PolyTensor;

// Smallest k with chi^k = 0; throws MathError if chi^{(dim H)^2} != 0.
int nilpotency_degree(const HopfPtr& h, const Tensor2& chi);
// sum_{j < k} hbar^j chi^j / j!, k the nilpotency degree; scale multiplies chi (use -1 for exp(-hbar chi)).
PolyTensor2 exp_hbar(const HopfPtr& h, const Tensor2& chi, long scale = 1);

struct CommutationHypotheses {
  bool first = false;   // chi12 (R12^{-1} chi13 R12) = (R12^{-1} chi13 R12) chi12
  bool second = false;  // chi23 (R23^{-1} chi13 R23) = (R23^{-1} chi13 R23) chi23
  bool both() const { return first && second; }
};
CommutationHypotheses check_commutation_hypotheses(const HopfPtr& h, const Tensor2& r, const Tensor2& chi);

struct QuantizationReport {
  CommutationHypotheses hypotheses;
  bool infinitesimal = false;
  int nilpotency = 0;
  VerificationReport verification;  // axioms of R exp(hbar chi), degreewise
  bool first_order_recovers_chi = false;
  bool ok() const { return hypotheses.both() && infinitesimal && verification.ok && first_order_recovers_chi; }
};
QuantizationReport verify_quantized_qtr(const HopfPtr& h, const Tensor2& r, const Tensor2& chi);

}  // namespace hopfkit
