#include "hopfkit/hopf.hpp"

#include <algorithm>

namespace hopfkit {

namespace {

Accumulator& scratch(std::size_t dim) {
  static thread_local std::map<std::size_t, Accumulator> pool;
  auto it = pool.find(dim);
  if (it == pool.end()) it = pool.emplace(dim, Accumulator(dim)).first;
  return it->second;
}

void require_same(const Tensor& a, const Tensor& b) {
  if (a.hopf() != b.hopf()) throw MathError("tensors over different Hopf algebras");
  if (a.order() != b.order()) throw MathError("tensor order mismatch");
}

}  // namespace

std::optional<std::size_t> HopfData::find_label(const std::string& l) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == l) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> HopfData::find_generator(const std::string& g) const {
  for (std::size_t i = 0; i < gen_names.size(); ++i) {
    if (gen_names[i] == g) return i;
  }
  return std::nullopt;
}

std::string HopfData::word_text(std::size_t i) const {
  if (words[i].empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < words[i].size(); ++k) {
    if (k) s += "*";
    s += gen_names[words[i][k]];
  }
  return s;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::size_t> split_index(std::size_t idx, std::size_t d, int order) {
  std::vector<std::size_t> parts(order);
  for (int k = order - 1; k >= 0; --k) {
    parts[k] = idx % d;
    idx /= d;
  }
  return parts;
}

std::size_t join_index(const std::vector<std::size_t>& parts, std::size_t d) {
  std::size_t idx = 0;
  for (auto p : parts) idx = idx * d + p;
  return idx;
}

Tensor::Tensor(HopfPtr h, int order) : h_(std::move(h)), order_(order) {
  if (order < 1 || order > 4) throw MathError("tensor order must be 1..4");
}

Tensor::Tensor(HopfPtr h, int order, SparseVec coeffs) : Tensor(std::move(h), order) {
  c_ = std::move(coeffs);
  if (!c_.empty() && c_.entries().back().first >= space_dim()) throw MathError("tensor index out of range");
}

Tensor Tensor::basis(HopfPtr h, int order, std::size_t index) {
  const Field& f = *h->field;
  return Tensor(std::move(h), order, SparseVec::unit(f, index));
}

Tensor Tensor::one(HopfPtr h, int order) {
  std::vector<std::size_t> parts(order, h->unit);
  std::size_t idx = join_index(parts, h->dim);
  return basis(std::move(h), order, idx);
}

Tensor Tensor::scalar(HopfPtr h, int order, const Scalar& s) {
  Tensor t = one(h, order);
  t.c_ = t.c_.scaled(s);
  return t;
}

void Tensor::check_compatible(const Tensor& o) const { require_same(*this, o); }

Tensor& Tensor::operator+=(const Tensor& o) {
  check_compatible(o);
  c_ += o.c_;
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  check_compatible(o);
  c_ -= o.c_;
  return *this;
}

Tensor Tensor::operator-() const { return Tensor(h_, order_, -c_); }

Tensor operator*(const Scalar& s, const Tensor& t) { return Tensor(t.h_, t.order_, t.c_.scaled(s)); }

Tensor operator*(const Tensor& a, const Tensor& b) {
  require_same(a, b);
  const HopfData& h = *a.h_;
  const std::size_t d = h.dim;
  const int k = a.order_;
  Accumulator& acc = scratch(a.space_dim());
  std::vector<std::pair<std::size_t, Scalar>> cur, next;
  for (const auto& [ia, ca] : a.c_.entries()) {
    auto pa = split_index(ia, d, k);
    for (const auto& [ib, cb] : b.c_.entries()) {
      auto pb = split_index(ib, d, k);
      cur.clear();
      cur.emplace_back(0, ca * cb);
      for (int s = 0; s < k && !cur.empty(); ++s) {
        const SparseVec& p = h.product(pa[s], pb[s]);
        next.clear();
        for (const auto& [idx, c] : cur) {
          for (const auto& [j, v] : p.entries()) next.emplace_back(idx * d + j, c * v);
        }
        std::swap(cur, next);
      }
      for (const auto& [idx, c] : cur) acc.add(idx, c);
    }
  }
  return Tensor(a.h_, k, acc.take());
}

bool operator==(const Tensor& a, const Tensor& b) {
  require_same(a, b);
  return a.c_ == b.c_;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  if (a.hopf() != b.hopf()) throw MathError("tensors over different Hopf algebras");
  const std::size_t db = b.space_dim();
  std::vector<SparseVec::Entry> e;
  e.reserve(a.coeffs().nnz() * b.coeffs().nnz());
  for (const auto& [i, ca] : a.coeffs().entries()) {
    for (const auto& [j, cb] : b.coeffs().entries()) e.emplace_back(i * db + j, ca * cb);
  }
  return Tensor(a.hopf(), a.order() + b.order(), SparseVec(std::move(e)));
}

Tensor outer(const Tensor& a, const Tensor& b, const Tensor& c) { return outer(outer(a, b), c); }

Tensor3 leg(const Tensor2& t, Leg which) {
  if (t.order() != 2) throw MathError("leg embedding expects a 2-tensor");
  const std::size_t d = t.data().dim;
  const std::size_t u = t.data().unit;
  std::vector<SparseVec::Entry> e;
  for (const auto& [idx, c] : t.coeffs().entries()) {
    std::size_t i = idx / d, j = idx % d;
    std::size_t n = 0;
    switch (which) {
      case Leg::L12: n = (i * d + j) * d + u; break;
      case Leg::L13: n = (i * d + u) * d + j; break;
      case Leg::L23: n = (u * d + i) * d + j; break;
    }
    e.emplace_back(n, c);
  }
  return Tensor(t.hopf(), 3, SparseVec(std::move(e)));
}

Tensor2 flip(const Tensor2& t) {
  if (t.order() != 2) throw MathError("flip expects a 2-tensor");
  const std::size_t d = t.data().dim;
  std::vector<SparseVec::Entry> e;
  for (const auto& [idx, c] : t.coeffs().entries()) e.emplace_back((idx % d) * d + idx / d, c);
  return Tensor(t.hopf(), 2, SparseVec(std::move(e)));
}

Tensor delta_at(const Tensor& t, int slot) {
  const HopfData& h = t.data();
  const std::size_t d = h.dim;
  const int k = t.order();
  if (slot < 0 || slot >= k) throw MathError("slot out of range");
  Tensor out(t.hopf(), k + 1);
  Accumulator& acc = scratch(out.space_dim());
  for (const auto& [idx, c] : t.coeffs().entries()) {
    auto parts = split_index(idx, d, k);
    std::vector<std::size_t> np(k + 1);
    for (const auto& [j, v] : h.comult[parts[slot]].entries()) {
      for (int s = 0, r = 0; s < k; ++s) {
        if (s == slot) {
          np[r++] = j / d;
          np[r++] = j % d;
        } else {
          np[r++] = parts[s];
        }
      }
      acc.add(join_index(np, d), c * v);
    }
  }
  return Tensor(t.hopf(), k + 1, acc.take());
}

Tensor2 delta(const Elem& a) {
  if (a.order() != 1) throw MathError("delta expects an element");
  return delta_at(a, 0);
}

Tensor counit_at(const Tensor& t, int slot) {
  const HopfData& h = t.data();
  const std::size_t d = h.dim;
  const int k = t.order();
  if (k < 2) throw MathError("counit_at needs order >= 2");
  std::vector<SparseVec::Entry> e;
  for (const auto& [idx, c] : t.coeffs().entries()) {
    auto parts = split_index(idx, d, k);
    const Scalar& eps = h.counit[parts[slot]];
    if (eps.is_zero()) continue;
    parts.erase(parts.begin() + slot);
    e.emplace_back(join_index(parts, d), c * eps);
  }
  return Tensor(t.hopf(), k - 1, SparseVec(std::move(e)));
}

Scalar counit(const Elem& a) {
  Scalar s = a.field().zero();
  for (const auto& [i, c] : a.coeffs().entries()) s += c * a.data().counit[i];
  return s;
}

Tensor antipode_at(const Tensor& t, int slot) {
  const HopfData& h = t.data();
  if (!h.antipode) throw MathError("antipode not available");
  const std::size_t d = h.dim;
  const int k = t.order();
  std::vector<SparseVec::Entry> e;
  for (const auto& [idx, c] : t.coeffs().entries()) {
    auto parts = split_index(idx, d, k);
    for (const auto& [j, v] : (*h.antipode)[parts[slot]].entries()) {
      parts[slot] = j;
      e.emplace_back(join_index(parts, d), c * v);
    }
  }
  return Tensor(t.hopf(), k, SparseVec(std::move(e)));
}

Elem antipode(const Elem& a) { return antipode_at(a, 0); }

Elem multiply_legs(const Tensor2& t) {
  const HopfData& h = t.data();
  const std::size_t d = h.dim;
  Accumulator& acc = scratch(d);
  for (const auto& [idx, c] : t.coeffs().entries()) acc.add(h.product(idx / d, idx % d), c);
  return Tensor(t.hopf(), 1, acc.take());
}

SparseMat left_mult_matrix(const Tensor& t) {
  const std::size_t n = t.space_dim();
  std::vector<SparseVec> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back((t * Tensor::basis(t.hopf(), t.order(), j)).coeffs());
  return SparseMat::from_columns(n, cols);
}

SparseMat right_mult_matrix(const Tensor& t) {
  const std::size_t n = t.space_dim();
  std::vector<SparseVec> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back((Tensor::basis(t.hopf(), t.order(), j) * t).coeffs());
  return SparseMat::from_columns(n, cols);
}

std::optional<Tensor> inverse(const Tensor& t) {
  Tensor one = Tensor::one(t.hopf(), t.order());
  auto x = solve(t.field(), left_mult_matrix(t), one.coeffs());
  if (!x) return std::nullopt;
  Tensor u(t.hopf(), t.order(), *x);
  if (t * u != one || u * t != one) return std::nullopt;
  return u;
}

void VerificationReport::record(const std::string& name, bool pass, const std::string& detail) {
  auto it = checks.find(name);
  if (it == checks.end()) {
    checks[name] = pass;
  } else {
    it->second = it->second && pass;
  }
  if (!pass) {
    ok = false;
    if (failures.size() < 50) failures.push_back(detail.empty() ? name : name + ": " + detail);
  }
}

void VerificationReport::merge(const VerificationReport& o, const std::string& prefix) {
  for (const auto& [k, v] : o.checks) record(prefix + k, v);
  if (!o.ok) {
    ok = false;
    for (const auto& f : o.failures) {
      if (failures.size() < 50) failures.push_back(prefix + f);
    }
  }
}

VerificationReport verify_bialgebra(const HopfPtr& hp) {
  const HopfData& h = *hp;
  const std::size_t d = h.dim;
  VerificationReport rep;
  auto e = [&](std::size_t i) { return Tensor::basis(hp, 1, i); };
  auto lab = [&](std::size_t i) { return h.labels[i]; };
  if (h.mult.size() != d * d || h.comult.size() != d || h.counit.size() != d || h.labels.size() != d)
    throw MathError("structure tables have inconsistent sizes");

  Tensor one = Tensor::one(hp, 1);
  for (std::size_t i = 0; i < d; ++i) {
    rep.record("unit", one * e(i) == e(i) && e(i) * one == e(i), lab(i));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Tensor ij(hp, 1, h.product(i, j));
      for (std::size_t k = 0; k < d; ++k) {
        Tensor jk(hp, 1, h.product(j, k));
        rep.record("associativity", ij * e(k) == e(i) * jk, lab(i) + "," + lab(j) + "," + lab(k));
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    Tensor di = delta(e(i));
    rep.record("coassociativity", delta_id(di) == id_delta(di), lab(i));
    rep.record("counit", counit_at(di, 0) == e(i) && counit_at(di, 1) == e(i), lab(i));
  }
  rep.record("delta_unit", delta(one) == Tensor::one(hp, 2));
  rep.record("counit_unit", counit(one).is_one());
  std::vector<Tensor> deltas;
  for (std::size_t i = 0; i < d; ++i) deltas.push_back(delta(e(i)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Tensor ij(hp, 1, h.product(i, j));
      rep.record("delta_multiplicative", delta(ij) == deltas[i] * deltas[j], lab(i) + "," + lab(j));
      rep.record("counit_multiplicative", counit(ij) == h.counit[i] * h.counit[j], lab(i) + "," + lab(j));
    }
  }
  return rep;
}

VerificationReport verify_hopf(const HopfPtr& hp) {
  VerificationReport rep = verify_bialgebra(hp);
  const HopfData& h = *hp;
  if (!h.antipode) {
    rep.record("antipode_present", false);
    return rep;
  }
  for (std::size_t i = 0; i < h.dim; ++i) {
    Tensor di = delta(Tensor::basis(hp, 1, i));
    Tensor expect = Tensor::scalar(hp, 1, h.counit[i]);
    bool left = multiply_legs(antipode_at(di, 0)) == expect;
    bool right = multiply_legs(antipode_at(di, 1)) == expect;
    rep.record("antipode", left && right, h.labels[i]);
  }
  return rep;
}

Subspace centralizer_of_coproduct(HopfPtr h, const Elem& a) {
  Tensor da = delta(a);
  const std::size_t n = ipow(h->dim, 2);
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    Tensor b = Tensor::basis(h, 2, j);
    cols.push_back((b * da - da * b).coeffs());
  }
  return kernel(*h->field, SparseMat::from_columns(n, cols));
}

std::vector<SparseVec> extend_multiplicatively(const HopfPtr& h, int order, const std::vector<Tensor>& gen_images) {
  std::vector<SparseVec> out;
  out.reserve(h->dim);
  for (std::size_t i = 0; i < h->dim; ++i) {
    Tensor t = Tensor::one(h, order);
    for (auto g : h->words[i]) t = t * gen_images.at(g);
    out.push_back(t.coeffs());
  }
  return out;
}

std::vector<SparseVec> extend_antimultiplicatively(const HopfPtr& h, const std::vector<Tensor>& gen_images) {
  std::vector<SparseVec> out;
  out.reserve(h->dim);
  for (std::size_t i = 0; i < h->dim; ++i) {
    Tensor t = Tensor::one(h, 1);
    for (auto g : h->words[i]) t = gen_images.at(g) * t;
    out.push_back(t.coeffs());
  }
  return out;
}

}  // namespace hopfkit
