#include "hopfkit/quantize.hpp"

#include "hopfkit/precartier.hpp"
#include "hopfkit/quasitriangular.hpp"

namespace hopfkit {

PolyTensor::PolyTensor(const Tensor& constant) : h_(constant.hopf()), order_(constant.order()) {
  c_.push_back(constant);
  trim();
}

Tensor PolyTensor::coeff(int j) const {
  if (j >= 0 && j < static_cast<int>(c_.size())) return c_[j];
  return Tensor(h_, order_);
}

void PolyTensor::set(int j, const Tensor& t) {
  if (static_cast<int>(c_.size()) <= j) c_.resize(j + 1, Tensor(h_, order_));
  c_[j] = t;
  trim();
}

void PolyTensor::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyTensor operator+(const PolyTensor& a, const PolyTensor& b) {
  PolyTensor out(a.h_, a.order_);
  const int n = std::max(a.degree(), b.degree());
  for (int j = 0; j <= n; ++j) out.c_.push_back(a.coeff(j) + b.coeff(j));
  out.trim();
  return out;
}

PolyTensor operator-(const PolyTensor& a, const PolyTensor& b) {
  PolyTensor out(a.h_, a.order_);
  const int n = std::max(a.degree(), b.degree());
  for (int j = 0; j <= n; ++j) out.c_.push_back(a.coeff(j) - b.coeff(j));
  out.trim();
  return out;
}

PolyTensor operator*(const PolyTensor& a, const PolyTensor& b) {
  PolyTensor out(a.h_, a.order_);
  if (a.c_.empty() || b.c_.empty()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, Tensor(a.h_, a.order_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  out.trim();
  return out;
}

PolyTensor PolyTensor::map(const std::function<Tensor(const Tensor&)>& fn, int new_order) const {
  PolyTensor out(h_, new_order);
  for (const auto& c : c_) out.c_.push_back(fn(c));
  out.trim();
  return out;
}

int nilpotency_degree(const HopfPtr& h, const Tensor2& chi) {
  const std::size_t bound = h->dim * h->dim;
  Tensor2 p = Tensor::one(h, 2);
  for (std::size_t k = 1; k <= bound; ++k) {
    p = p * chi;
    if (p.is_zero()) return static_cast<int>(k);
  }
  throw MathError("element is not nilpotent");
}

PolyTensor2 exp_hbar(const HopfPtr& h, const Tensor2& chi, long scale) {
  const Field& f = *h->field;
  const int k = nilpotency_degree(h, chi);
  if (f.characteristic() != 0 && static_cast<std::uint64_t>(k) > f.characteristic())
    throw MathError("factorials up to " + std::to_string(k - 1) + " are not invertible in " + f.name());
  const Tensor2 c = f.from_int(scale) * chi;
  PolyTensor2 out(h, 2);
  Tensor2 p = Tensor::one(h, 2);
  Scalar fact = f.one();
  for (int j = 0; j < k; ++j) {
    if (j > 0) {
      p = p * c;
      fact *= f.from_int(j);
    }
    out.set(j, fact.inv() * p);
  }
  return out;
}

CommutationHypotheses check_commutation_hypotheses(const HopfPtr& h, const Tensor2& r, const Tensor2& chi) {
  Tensor2 inv = r_inverse(h, r);
  const Tensor3 c13 = leg(chi, Leg::L13);
  const Tensor3 a = leg(inv, Leg::L12) * c13 * leg(r, Leg::L12);
  const Tensor3 b = leg(inv, Leg::L23) * c13 * leg(r, Leg::L23);
  const Tensor3 c12 = leg(chi, Leg::L12), c23 = leg(chi, Leg::L23);
  return {c12 * a == a * c12, c23 * b == b * c23};
}

QuantizationReport verify_quantized_qtr(const HopfPtr& h, const Tensor2& r, const Tensor2& chi) {
  QuantizationReport rep;
  rep.hypotheses = check_commutation_hypotheses(h, r, chi);
  rep.infinitesimal = is_infinitesimal(h, r, chi);
  rep.nilpotency = nilpotency_degree(h, chi);
  VerificationReport& v = rep.verification;
  v.record("hypothesis_first", rep.hypotheses.first);
  v.record("hypothesis_second", rep.hypotheses.second);

  const PolyTensor2 e = exp_hbar(h, chi), em = exp_hbar(h, chi, -1);
  const PolyTensor2 rt = PolyTensor2(r) * e;
  const PolyTensor2 rinv = em * PolyTensor2(r_inverse(h, r));
  v.record("exp_inverse", e * em == PolyTensor2(Tensor::one(h, 2)));
  v.record("inverse_right", rt * rinv == PolyTensor2(Tensor::one(h, 2)));
  v.record("inverse_left", rinv * rt == PolyTensor2(Tensor::one(h, 2)));
  for (std::size_t b = 0; b < h->dim; ++b) {
    const Tensor2 db = delta(Tensor::basis(h, 1, b));
    v.record("quasi_cocommutative", rt * PolyTensor2(db) == PolyTensor2(flip(db)) * rt, h->labels[b]);
  }
  auto legmap = [&](Leg l) { return rt.map([l](const Tensor& t) { return leg(t, l); }, 3); };
  const PolyTensor r12 = legmap(Leg::L12), r13 = legmap(Leg::L13), r23 = legmap(Leg::L23);
  v.record("hexagon_id_delta", rt.map([](const Tensor& t) { return id_delta(t); }, 3) == r13 * r12);
  v.record("hexagon_delta_id", rt.map([](const Tensor& t) { return delta_id(t); }, 3) == r13 * r23);
  v.record("counit_left", rt.map([](const Tensor& t) { return counit_at(t, 0); }, 1) ==
                              PolyTensor(Tensor::one(h, 1)));
  v.record("counit_right", rt.map([](const Tensor& t) { return counit_at(t, 1); }, 1) ==
                               PolyTensor(Tensor::one(h, 1)));
  v.record("qyb", r12 * r13 * r23 == r23 * r13 * r12);

  const PolyTensor2 first = PolyTensor2(r_inverse(h, r)) * rt;
  rep.first_order_recovers_chi = first.coeff(0) == Tensor::one(h, 2) && first.coeff(1) == chi;
  v.record("first_order", rep.first_order_recovers_chi);
  return rep;
}

}  // namespace hopfkit
