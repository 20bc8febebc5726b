#include "hopfkit/families.hpp"

#include <bit>
#include <numeric>

namespace hopfkit {

namespace {

std::shared_ptr<HopfData> skeleton(const Field& f, const std::string& name, std::size_t d) {
  auto h = std::make_shared<HopfData>();
  h->field = &f;
  h->name = name;
  h->dim = d;
  h->mult.assign(d * d, SparseVec());
  h->counit.assign(d, f.zero());
  h->words.assign(d, {});
  h->labels.assign(d, "");
  return h;
}

void set_product(HopfData& h, std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  h.mult[i * h.dim + j] = SparseVec({{k, c}});
}

Tensor gen_tensor(const HopfPtr& h, std::size_t g) { return Tensor::basis(h, 1, h->gen_index[g]); }

Tensor power(const Tensor& t, unsigned e) {
  Tensor r = Tensor::one(t.hopf(), t.order());
  for (unsigned i = 0; i < e; ++i) r = r * t;
  return r;
}

// Transport all structure tables along a basis permutation.
std::shared_ptr<HopfData> relabel(const HopfData& src, const std::vector<std::size_t>& perm,
                                  std::shared_ptr<HopfData> layout) {
  const std::size_t d = src.dim;
  auto map1 = [&](const SparseVec& v) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [i, c] : v.entries()) e.emplace_back(perm[i], c);
    return SparseVec(std::move(e));
  };
  auto map2 = [&](const SparseVec& v) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [i, c] : v.entries()) e.emplace_back(perm[i / d] * d + perm[i % d], c);
    return SparseVec(std::move(e));
  };
  auto h = layout;
  h->unit = perm[src.unit];
  h->comult.assign(d, SparseVec());
  if (src.antipode) h->antipode = std::vector<SparseVec>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) h->mult[perm[i] * d + perm[j]] = map1(src.product(i, j));
    h->comult[perm[i]] = map2(src.comult[i]);
    h->counit[perm[i]] = src.counit[i];
    if (src.antipode) (*h->antipode)[perm[i]] = map1((*src.antipode)[i]);
  }
  return h;
}

std::string join_exponents(const std::vector<std::string>& names, const std::vector<unsigned>& exps) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += "*";
    s += names[i] + "^" + std::to_string(exps[i]);
  }
  return s;
}

// Group generator names of A_{C_2^n}: g, h, g1, ..., g_{n-2}.
std::vector<std::string> ac_group_names(unsigned n) {
  std::vector<std::string> names = {"g", "h"};
  for (unsigned i = 1; i + 2 <= n; ++i) names.push_back("g" + std::to_string(i));
  return names;
}

// H_{2n^2} algebra with antipode; comultiplication left to the caller.
std::shared_ptr<HopfData> h2n2_algebra(unsigned n, const Field& f, const std::string& name) {
  const std::size_t d = 2 * n * n;
  auto h = skeleton(f, name, d);
  auto idx = [n](unsigned i, unsigned j, unsigned t) -> std::size_t { return t * n * n + (i % n) * n + (j % n); };
  const Scalar q = f.root(n);
  const Scalar inv_n = f.from_fraction(1, static_cast<long>(n));
  h->unit = 0;
  h->gen_names = {"x", "y", "z"};
  h->gen_index = {idx(1, 0, 0), idx(0, 1, 0), idx(0, 0, 1)};
  for (unsigned t = 0; t < 2; ++t) {
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        std::size_t k = idx(i, j, t);
        h->labels[k] = "x^" + std::to_string(i) + "*y^" + std::to_string(j) + "*z^" + std::to_string(t);
        h->words[k].insert(h->words[k].end(), i, 0);
        h->words[k].insert(h->words[k].end(), j, 1);
        h->words[k].insert(h->words[k].end(), t, 2);
        h->counit[k] = f.one();
      }
    }
  }
  for (unsigned s = 0; s < 2; ++s)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        for (unsigned t = 0; t < 2; ++t)
          for (unsigned k = 0; k < n; ++k)
            for (unsigned l = 0; l < n; ++l) {
              std::size_t a = idx(i, j, s), b = idx(k, l, t);
              if (s == 0) {
                set_product(*h, a, b, idx(i + k, j + l, t), f.one());
              } else if (t == 0) {
                set_product(*h, a, b, idx(i + l, j + k, 1), f.one());
              } else {
                // z^2 = (1/n) sum q^{-uv} x^u y^v
                std::vector<SparseVec::Entry> e;
                for (unsigned u = 0; u < n; ++u)
                  for (unsigned v = 0; v < n; ++v)
                    e.emplace_back(idx(i + l + u, j + k + v, 0), inv_n * q.pow(-static_cast<long>(u * v)));
                h->mult[a * d + b] = SparseVec(std::move(e));
              }
            }
  HopfPtr hp = h;
  std::vector<Tensor> s = {power(gen_tensor(hp, 0), n - 1), power(gen_tensor(hp, 1), n - 1), gen_tensor(hp, 2)};
  h->antipode = extend_antimultiplicatively(hp, s);
  return h;
}

}  // namespace

int en_split_sign(unsigned F, unsigned P) {
  unsigned pos = 0, sum = 0, r = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if (!(P >> i & 1)) continue;
    ++pos;
    if (F >> i & 1) {
      sum += pos;
      ++r;
    }
  }
  return ((sum - r * (r + 1) / 2) % 2) ? -1 : 1;
}

int en_removal_sign(unsigned P, unsigned i) {
  unsigned after = std::popcount(P >> i);  // elements of P above i (1-based i)
  return (after % 2) ? -1 : 1;
}

Scalar q_binomial(unsigned m, unsigned u, const Scalar& Q) {
  const Field& f = Q.field();
  if (u > m) return f.zero();
  std::vector<std::vector<Scalar>> t(m + 1, std::vector<Scalar>(m + 1, f.zero()));
  for (unsigned a = 0; a <= m; ++a) {
    t[a][0] = f.one();
    for (unsigned b = 1; b <= a; ++b) t[a][b] = t[a - 1][b - 1] + Q.pow(b) * t[a - 1][b];
  }
  return t[m][u];
}

HopfPtr build_en(unsigned n, const Field& f) {
  if (n < 1 || n > 8) throw ConfigError("E(n) requires 1 <= n <= 8");
  const std::size_t d = std::size_t(2) << n;
  auto h = skeleton(f, "E(" + std::to_string(n) + ")", d);
  auto idx = [](unsigned j, unsigned P) -> std::size_t { return 2 * P + (j % 2); };
  h->unit = 0;
  h->gen_names = {"g"};
  h->gen_index = {idx(1, 0)};
  for (unsigned i = 1; i <= n; ++i) {
    h->gen_names.push_back("x" + std::to_string(i));
    h->gen_index.push_back(idx(0, 1u << (i - 1)));
  }
  const unsigned full = (1u << n);
  for (unsigned P = 0; P < full; ++P) {
    for (unsigned j = 0; j < 2; ++j) {
      std::size_t k = idx(j, P);
      std::string set;
      if (j) h->words[k].push_back(0);
      for (unsigned i = 1; i <= n; ++i) {
        if (P >> (i - 1) & 1) {
          if (!set.empty()) set += ",";
          set += std::to_string(i);
          h->words[k].push_back(i);
        }
      }
      h->labels[k] = "g^" + std::to_string(j) + "*x{" + set + "}";
      h->counit[k] = P == 0 ? f.one() : f.zero();
    }
  }
  for (unsigned P = 0; P < full; ++P)
    for (unsigned a = 0; a < 2; ++a)
      for (unsigned Q = 0; Q < full; ++Q)
        for (unsigned b = 0; b < 2; ++b) {
          if (P & Q) continue;
          unsigned inv = b * std::popcount(P);
          for (unsigned p = 0; p < n; ++p) {
            if (P >> p & 1) inv += std::popcount(Q & ((1u << p) - 1));
          }
          set_product(*h, idx(a, P), idx(b, Q), idx(a + b, P | Q), f.from_int(inv % 2 ? -1 : 1));
        }
  // Delta(g^j x_P) = sum_F (-1)^{S(F,P)} g^{|F|+j} x_{P\F} (x) g^j x_F
  h->comult.assign(d, SparseVec());
  h->antipode = std::vector<SparseVec>(d);
  for (unsigned P = 0; P < full; ++P) {
    for (unsigned j = 0; j < 2; ++j) {
      std::vector<SparseVec::Entry> e;
      for (unsigned F = P;; F = (F - 1) & P) {
        std::size_t left = idx(std::popcount(F) + j, P ^ F);
        std::size_t right = idx(j, F);
        e.emplace_back(left * d + right, f.from_int(en_split_sign(F, P)));
        if (F == 0) break;
      }
      h->comult[idx(j, P)] = SparseVec(std::move(e));
      const unsigned sz = std::popcount(P);
      (*h->antipode)[idx(j, P)] = SparseVec({{idx(sz + j, P), f.from_int((sz * (j + 1)) % 2 ? -1 : 1)}});
    }
  }
  return h;
}

HopfPtr build_ac2n_presented(unsigned n, const Field& f) {
  if (n < 2 || n > 8) throw ConfigError("A_{C_2^n} requires 2 <= n <= 8");
  const std::size_t G = std::size_t(1) << n;
  const std::size_t d = 2 * G;
  auto h = skeleton(f, n == 2 ? "A_{C2xC2}" : "A_{C2^" + std::to_string(n) + "}", d);
  auto idx = [G](unsigned m, std::size_t mask) { return m * G + mask; };
  auto names = ac_group_names(n);
  h->unit = 0;
  h->gen_names = {"x"};
  h->gen_index = {idx(1, 0)};
  for (unsigned b = 0; b < n; ++b) {
    h->gen_names.push_back(names[b]);
    h->gen_index.push_back(idx(0, std::size_t(1) << b));
  }
  for (unsigned m = 0; m < 2; ++m) {
    for (std::size_t mask = 0; mask < G; ++mask) {
      std::size_t k = idx(m, mask);
      std::string lab = "x^" + std::to_string(m);
      if (m) h->words[k].push_back(0);
      for (unsigned b = 0; b < n; ++b) {
        unsigned c = mask >> b & 1;
        lab += "*" + names[b] + "^" + std::to_string(c);
        if (c) h->words[k].push_back(b + 1);
      }
      h->labels[k] = lab;
      h->counit[k] = m == 0 ? f.one() : f.zero();
    }
  }
  for (unsigned m = 0; m < 2; ++m)
    for (std::size_t A = 0; A < G; ++A)
      for (unsigned m2 = 0; m2 < 2; ++m2)
        for (std::size_t B = 0; B < G; ++B) {
          if (m + m2 == 2) continue;
          int sign = (std::popcount(A) * m2) % 2 ? -1 : 1;
          set_product(*h, idx(m, A), idx(m2, B), idx(m + m2, A ^ B), f.from_int(sign));
        }
  HopfPtr hp = h;
  Tensor one = Tensor::one(hp, 1);
  std::vector<Tensor> dg, sg;
  Tensor x = gen_tensor(hp, 0), g = gen_tensor(hp, 1);
  dg.push_back(outer(one, x) + outer(x, g));
  sg.push_back(-(x * g));
  for (unsigned b = 0; b < n; ++b) {
    Tensor t = gen_tensor(hp, b + 1);
    dg.push_back(outer(t, t));
    sg.push_back(t);
  }
  h->comult = extend_multiplicatively(hp, 2, dg);
  h->antipode = extend_antimultiplicatively(hp, sg);
  return h;
}

HopfPtr build_ac22(const Field& f) { return build_ac2n_presented(2, f); }

HopfPtr build_ac2n(unsigned n, const Field& f) {
  if (n == 2) return build_ac22(f);
  if (n < 2 || n > 8) throw ConfigError("A_{C_2^n} requires 2 <= n <= 8");
  std::vector<std::string> knames;
  for (unsigned i = 1; i + 2 <= n; ++i) knames.push_back("g" + std::to_string(i));
  HopfPtr t = tensor_product(build_ac22(f), build_group(std::vector<unsigned>(n - 2, 2), f, knames));
  HopfPtr layout_src = build_ac2n_presented(n, f);
  auto layout = skeleton(f, layout_src->name, layout_src->dim);
  layout->labels = layout_src->labels;
  layout->gen_names = layout_src->gen_names;
  layout->gen_index = layout_src->gen_index;
  layout->words = layout_src->words;
  const std::size_t dK = std::size_t(1) << (n - 2);
  const std::size_t G = std::size_t(1) << n;
  // f(x^m g^a h^b (x) g1^c1 ...) = x^m g^{a + sum c} h^b g1^c1 ...
  std::vector<std::size_t> perm(t->dim);
  for (std::size_t iA = 0; iA < 8; ++iA) {
    unsigned m = static_cast<unsigned>(iA / 4);
    std::size_t ab = iA % 4;
    for (std::size_t iK = 0; iK < dK; ++iK) {
      std::size_t mask = ab;
      unsigned parity = 0;
      for (unsigned i = 0; i + 2 < n; ++i) {
        unsigned c = (iK >> (n - 3 - i)) & 1;  // row-major: g1 most significant
        parity ^= c;
        if (c) mask |= std::size_t(1) << (i + 2);
      }
      mask ^= parity;
      perm[iA * dK + iK] = m * G + mask;
    }
  }
  return relabel(*t, perm, layout);
}

HopfPtr build_h2n2(unsigned n, const Field& f) {
  if (n < 2 || n > 6) throw ConfigError("H_{2n^2} requires 2 <= n <= 6");
  auto h = h2n2_algebra(n, f, "H_{2n^2}(" + std::to_string(n) + ")");
  HopfPtr hp = h;
  const Scalar q = f.root(n);
  const Scalar inv_n = f.from_fraction(1, static_cast<long>(n));
  Tensor x = gen_tensor(hp, 0), y = gen_tensor(hp, 1), z = gen_tensor(hp, 2);
  Tensor dz(hp, 2);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      dz += (inv_n * q.pow(-static_cast<long>(i * j))) * outer(power(x, i), power(y, j));
  dz = dz * outer(z, z);
  h->comult = extend_multiplicatively(hp, 2, {outer(x, x), outer(y, y), dz});
  return h;
}

HopfPtr build_h8(const Field& f) {
  auto h = h2n2_algebra(2, f, "H8");
  HopfPtr hp = h;
  Tensor one = Tensor::one(hp, 1);
  Tensor x = gen_tensor(hp, 0), y = gen_tensor(hp, 1), z = gen_tensor(hp, 2);
  // Delta(z) = 1/2 (z (x) z)(1 (x) 1 + y (x) 1 + 1 (x) x - y (x) x)
  Tensor dz = f.from_fraction(1, 2) * (outer(z, z) * (outer(one, one) + outer(y, one) + outer(one, x) - outer(y, x)));
  h->comult = extend_multiplicatively(hp, 2, {outer(x, x), outer(y, y), dz});
  return h;
}

HopfPtr build_radford(unsigned r, unsigned n, const Field& f) {
  if (r < 1 || n < 2 || r * n > 64) throw ConfigError("Radford algebra requires r >= 1, n >= 2, rn <= 64");
  const unsigned M = r * n;
  const std::size_t d = std::size_t(M) * n;
  auto h = skeleton(f, "Radford(" + std::to_string(r) + "," + std::to_string(n) + ")", d);
  auto idx = [M](unsigned l, unsigned m) -> std::size_t { return std::size_t(m) * M + (l % M); };
  const Scalar q = f.root(M);
  const Scalar Q = q.pow(r);
  h->unit = 0;
  h->gen_names = {"g", "x"};
  h->gen_index = {idx(1, 0), idx(0, 1)};
  for (unsigned m = 0; m < n; ++m) {
    for (unsigned l = 0; l < M; ++l) {
      std::size_t k = idx(l, m);
      h->labels[k] = "g^" + std::to_string(l) + "*x^" + std::to_string(m);
      h->words[k].insert(h->words[k].end(), l, 0);
      h->words[k].insert(h->words[k].end(), m, 1);
      h->counit[k] = m == 0 ? f.one() : f.zero();
    }
  }
  for (unsigned m = 0; m < n; ++m)
    for (unsigned l = 0; l < M; ++l)
      for (unsigned m2 = 0; m2 < n; ++m2)
        for (unsigned l2 = 0; l2 < M; ++l2) {
          if (m + m2 >= n) continue;
          set_product(*h, idx(l, m), idx(l2, m2), idx(l + l2, m + m2), q.pow(static_cast<long>(m * l2)));
        }
  h->comult.assign(d, SparseVec());
  for (unsigned m = 0; m < n; ++m) {
    for (unsigned l = 0; l < M; ++l) {
      std::vector<SparseVec::Entry> e;
      for (unsigned u = 0; u <= m; ++u) {
        Scalar c = q_binomial(m, u, Q);
        if (c.is_zero()) continue;
        e.emplace_back(idx(l, m - u) * d + idx(l + r * (m - u), u), c);
      }
      h->comult[idx(l, m)] = SparseVec(std::move(e));
    }
  }
  HopfPtr hp = h;
  Tensor sg = Tensor::basis(hp, 1, idx(M - 1, 0));
  // S(x) = -x g^{M-r} = -q^{M-r} g^{M-r} x
  Tensor sx = (-q.pow(static_cast<long>(M - r))) * Tensor::basis(hp, 1, idx(M - r, 1));
  h->antipode = extend_antimultiplicatively(hp, {sg, sx});
  return h;
}

HopfPtr build_ac4dual(const Field& f) {
  const std::size_t d = 8;
  auto h = skeleton(f, "(A''_{C4})*", d);
  auto idx = [](unsigned m, unsigned a) -> std::size_t { return m * 4 + (a % 4); };
  const Scalar w = f.root(4);
  h->unit = 0;
  h->gen_names = {"x", "g"};
  h->gen_index = {idx(1, 0), idx(0, 1)};
  for (unsigned m = 0; m < 2; ++m) {
    for (unsigned a = 0; a < 4; ++a) {
      std::size_t k = idx(m, a);
      h->labels[k] = "x^" + std::to_string(m) + "*g^" + std::to_string(a);
      h->words[k].insert(h->words[k].end(), m, 0);
      h->words[k].insert(h->words[k].end(), a, 1);
      h->counit[k] = m == 0 ? f.one() : f.zero();
    }
  }
  // g^a x = w^{-a} x g^a
  for (unsigned m = 0; m < 2; ++m)
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned m2 = 0; m2 < 2; ++m2)
        for (unsigned a2 = 0; a2 < 4; ++a2) {
          if (m + m2 == 2) continue;
          set_product(*h, idx(m, a), idx(m2, a2), idx(m + m2, a + a2), w.pow(-static_cast<long>(a * m2)));
        }
  HopfPtr hp = h;
  Tensor one = Tensor::one(hp, 1);
  Tensor x = gen_tensor(hp, 0), g = gen_tensor(hp, 1);
  Tensor g2 = g * g, g3 = g2 * g;
  Tensor dx = outer(one, x) + outer(x, g2);
  Tensor dg = outer(g, g) - f.from_int(2) * outer(g * x, g3 * x);
  h->comult = extend_multiplicatively(hp, 2, {dx, dg});
  h->antipode = extend_antimultiplicatively(hp, {-(x * g2), g3});
  return h;
}

HopfPtr build_group(const std::vector<unsigned>& orders, const Field& f, const std::vector<std::string>& names_in) {
  std::vector<std::string> names = names_in;
  if (names.empty()) {
    for (std::size_t i = 0; i < orders.size(); ++i) names.push_back("g" + std::to_string(i + 1));
  }
  if (names.size() != orders.size()) throw ConfigError("group generator names do not match invariants");
  std::size_t d = 1;
  for (auto o : orders) {
    if (o < 1) throw ConfigError("group invariants must be positive");
    d *= o;
  }
  if (d > 4096) throw ConfigError("group algebra too large");
  std::string name = "kG(";
  for (std::size_t i = 0; i < orders.size(); ++i) name += (i ? "," : "") + std::to_string(orders[i]);
  auto h = skeleton(f, name + ")", d);
  const std::size_t k = orders.size();
  auto exps = [&](std::size_t i) {
    std::vector<unsigned> e(k);
    for (std::size_t s = k; s-- > 0;) {
      e[s] = static_cast<unsigned>(i % orders[s]);
      i /= orders[s];
    }
    return e;
  };
  auto index = [&](const std::vector<unsigned>& e) {
    std::size_t i = 0;
    for (std::size_t s = 0; s < k; ++s) i = i * orders[s] + e[s] % orders[s];
    return i;
  };
  h->unit = 0;
  h->gen_names = names;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<unsigned> e(k, 0);
    e[s] = 1;
    h->gen_index.push_back(index(e));
  }
  h->comult.assign(d, SparseVec());
  h->antipode = std::vector<SparseVec>(d);
  for (std::size_t i = 0; i < d; ++i) {
    auto e = exps(i);
    h->labels[i] = k == 0 ? "1" : join_exponents(names, e);
    for (std::size_t s = 0; s < k; ++s) h->words[i].insert(h->words[i].end(), e[s], s);
    h->counit[i] = f.one();
    h->comult[i] = SparseVec({{i * d + i, f.one()}});
    std::vector<unsigned> inv(k);
    for (std::size_t s = 0; s < k; ++s) inv[s] = (orders[s] - e[s]) % orders[s];
    (*h->antipode)[i] = SparseVec({{index(inv), f.one()}});
    for (std::size_t j = 0; j < d; ++j) {
      auto e2 = exps(j);
      for (std::size_t s = 0; s < k; ++s) e2[s] += e[s];
      set_product(*h, i, j, index(e2), f.one());
    }
  }
  return h;
}

HopfPtr tensor_product(const HopfPtr& a, const HopfPtr& b) {
  if (a->field != b->field) throw ConfigError("tensor factors over different fields");
  const Field& f = *a->field;
  const std::size_t da = a->dim, db = b->dim, d = da * db;
  auto h = skeleton(f, a->name + " (x) " + b->name, d);
  auto idx = [db](std::size_t i, std::size_t j) { return i * db + j; };
  h->unit = idx(a->unit, b->unit);
  for (std::size_t g = 0; g < a->gen_names.size(); ++g) {
    h->gen_names.push_back(a->gen_names[g]);
    h->gen_index.push_back(idx(a->gen_index[g], b->unit));
  }
  for (std::size_t g = 0; g < b->gen_names.size(); ++g) {
    std::string nm = b->gen_names[g];
    while (h->find_generator(nm)) nm += "_2";
    h->gen_names.push_back(nm);
    h->gen_index.push_back(idx(a->unit, b->gen_index[g]));
  }
  const std::size_t shift = a->gen_names.size();
  h->comult.assign(d, SparseVec());
  bool anti = a->antipode && b->antipode;
  if (anti) h->antipode = std::vector<SparseVec>(d);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      std::size_t k = idx(i, j);
      h->labels[k] = a->labels[i] + "|" + b->labels[j];
      h->words[k] = a->words[i];
      for (auto w : b->words[j]) h->words[k].push_back(w + shift);
      h->counit[k] = a->counit[i] * b->counit[j];
      std::vector<SparseVec::Entry> e;
      for (const auto& [u, cu] : a->comult[i].entries()) {
        for (const auto& [v, cv] : b->comult[j].entries()) {
          std::size_t l = idx(u / da, v / db), r = idx(u % da, v % db);
          e.emplace_back(l * d + r, cu * cv);
        }
      }
      h->comult[k] = SparseVec(std::move(e));
      if (anti) {
        std::vector<SparseVec::Entry> s;
        for (const auto& [u, cu] : (*a->antipode)[i].entries())
          for (const auto& [v, cv] : (*b->antipode)[j].entries()) s.emplace_back(idx(u, v), cu * cv);
        (*h->antipode)[k] = SparseVec(std::move(s));
      }
      for (std::size_t i2 = 0; i2 < da; ++i2) {
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          std::vector<SparseVec::Entry> m;
          for (const auto& [u, cu] : a->product(i, i2).entries())
            for (const auto& [v, cv] : b->product(j, j2).entries()) m.emplace_back(idx(u, v), cu * cv);
          h->mult[k * d + idx(i2, j2)] = SparseVec(std::move(m));
        }
      }
    }
  }
  return h;
}

std::vector<SparseVec> coproduct_from_generators(const HopfPtr& h) {
  std::vector<Tensor> imgs;
  for (auto gi : h->gen_index) imgs.emplace_back(h, 2, h->comult[gi]);
  return extend_multiplicatively(h, 2, imgs);
}

std::vector<SparseVec> antipode_from_generators(const HopfPtr& h) {
  if (!h->antipode) throw MathError("antipode not available");
  std::vector<Tensor> imgs;
  for (auto gi : h->gen_index) imgs.emplace_back(h, 1, (*h->antipode)[gi]);
  return extend_antimultiplicatively(h, imgs);
}

Elem generator(const HopfPtr& h, const std::string& name) {
  auto g = h->find_generator(name);
  if (!g) throw ConfigError("unknown generator '" + name + "' in " + h->name);
  return Tensor::basis(h, 1, h->gen_index[*g]);
}

Elem basis_elem(const HopfPtr& h, const std::string& label) {
  auto i = h->find_label(label);
  if (!i) throw ConfigError("unknown basis label '" + label + "' in " + h->name);
  return Tensor::basis(h, 1, *i);
}

Elem HopfMorphism::apply(const Elem& a) const {
  std::vector<SparseVec::Entry> e;
  for (const auto& [i, c] : a.coeffs().entries())
    for (const auto& [j, v] : images[i].entries()) e.emplace_back(j, c * v);
  return Tensor(target, 1, SparseVec(std::move(e)));
}

Tensor2 HopfMorphism::apply(const Tensor2& t, bool both_legs) const {
  const std::size_t ds = source->dim, dt = target->dim;
  std::vector<SparseVec::Entry> e;
  if (!both_legs) throw MathError("only (f (x) f) is supported");
  for (const auto& [idx, c] : t.coeffs().entries())
    for (const auto& [u, cu] : images[idx / ds].entries())
      for (const auto& [v, cv] : images[idx % ds].entries()) e.emplace_back(u * dt + v, c * cu * cv);
  return Tensor(target, 2, SparseVec(std::move(e)));
}

VerificationReport HopfMorphism::verify() const {
  VerificationReport rep;
  const std::size_t d = source->dim;
  auto src = [&](std::size_t i) { return Tensor::basis(source, 1, i); };
  rep.record("unit", apply(Tensor::one(source, 1)) == Tensor::one(target, 1));
  for (std::size_t i = 0; i < d; ++i) {
    Elem fi = apply(src(i));
    rep.record("comultiplicative", apply(delta(src(i)), true) == delta(fi), source->labels[i]);
    rep.record("counit", counit(fi) == source->counit[i], source->labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      Elem prod(source, 1, source->product(i, j));
      rep.record("multiplicative", apply(prod) == fi * apply(src(j)), source->labels[i] + "," + source->labels[j]);
    }
  }
  return rep;
}

HopfMorphism coradical_projection(const FamilySpec& spec, const HopfPtr& h) {
  const Field& f = *h->field;
  HopfMorphism p;
  p.source = h;
  p.images.assign(h->dim, SparseVec());
  switch (spec.kind) {
    case FamilyKind::En: {
      p.target = build_group({2}, f, {"g"});
      for (std::size_t i = 0; i < h->dim; ++i) {
        if (i / 2 == 0) p.images[i] = SparseVec::unit(f, i % 2);
      }
      break;
    }
    case FamilyKind::AC2n: {
      const unsigned n = spec.n;
      const std::size_t G = std::size_t(1) << n;
      p.target = build_group(std::vector<unsigned>(n, 2), f, ac_group_names(n));
      for (std::size_t mask = 0; mask < G; ++mask) {
        std::size_t t = 0;
        for (unsigned b = 0; b < n; ++b) t = t * 2 + (mask >> b & 1);
        p.images[mask] = SparseVec::unit(f, t);
      }
      break;
    }
    case FamilyKind::Radford: {
      const unsigned M = spec.r * spec.n;
      p.target = build_group({M}, f, {"g"});
      for (unsigned l = 0; l < M; ++l) p.images[l] = SparseVec::unit(f, l);
      break;
    }
    default:
      throw ConfigError("no coradical projection for family " + spec.to_string());
  }
  return p;
}

H8Idempotents h8_idempotents(const HopfPtr& h) {
  const Field& f = *h->field;
  Elem one = Tensor::one(h, 1);
  Elem x = generator(h, "x"), y = generator(h, "y");
  Elem xy = x * y;
  Scalar q = f.from_fraction(1, 4);
  return {q * (one + x + y + xy), q * (one - x + y - xy), q * (one + x - y - xy), q * (one - x - y + xy)};
}

namespace {

std::vector<unsigned> parse_uint_list(const std::string& s) {
  std::vector<unsigned> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto c = s.find(',', pos);
    std::string tok = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("expected a comma-separated list of positive integers: '" + s + "'");
    out.push_back(static_cast<unsigned>(std::stoul(tok)));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  FamilySpec s;
  if (text.rfind("tensor(", 0) == 0) {
    if (text.back() != ')') throw ConfigError("unbalanced tensor spec: " + text);
    std::string inner = text.substr(7, text.size() - 8);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        // Only split at a comma that starts a new family spec.
        std::string rest = trim(inner.substr(i + 1));
        bool starts_spec = !rest.empty() && std::isalpha(static_cast<unsigned char>(rest[0]));
        if (!starts_spec) continue;
        s.kind = FamilyKind::Tensor;
        s.factors = {parse(inner.substr(0, i)), parse(rest)};
        return s;
      }
    }
    throw ConfigError("tensor spec needs two factors: " + text);
  }
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto one_arg = [&]() {
    auto v = parse_uint_list(arg);
    if (v.size() != 1) throw ConfigError("family '" + kind + "' takes one parameter");
    return v[0];
  };
  if (kind == "en") {
    s.kind = FamilyKind::En;
    s.n = one_arg();
  } else if (kind == "ac2n") {
    s.kind = FamilyKind::AC2n;
    s.n = one_arg();
  } else if (kind == "h2n2") {
    s.kind = FamilyKind::H2n2;
    s.n = one_arg();
  } else if (kind == "h8") {
    if (!arg.empty()) throw ConfigError("h8 takes no parameters");
    s.kind = FamilyKind::H8;
    s.n = 2;
  } else if (kind == "radford") {
    auto v = parse_uint_list(arg);
    if (v.size() != 2) throw ConfigError("radford takes r,n");
    s.kind = FamilyKind::Radford;
    s.r = v[0];
    s.n = v[1];
  } else if (kind == "ac4dual") {
    if (!arg.empty()) throw ConfigError("ac4dual takes no parameters");
    s.kind = FamilyKind::AC4Dual;
  } else if (kind == "group") {
    s.kind = FamilyKind::Group;
    s.orders = arg.empty() ? std::vector<unsigned>{} : parse_uint_list(arg);
  } else {
    throw ConfigError("unknown family '" + text + "'");
  }
  return s;
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::En: return "en:" + std::to_string(n);
    case FamilyKind::AC2n: return "ac2n:" + std::to_string(n);
    case FamilyKind::H2n2: return "h2n2:" + std::to_string(n);
    case FamilyKind::H8: return "h8";
    case FamilyKind::Radford: return "radford:" + std::to_string(r) + "," + std::to_string(n);
    case FamilyKind::AC4Dual: return "ac4dual";
    case FamilyKind::Group: {
      std::string s = "group:";
      for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "," : "") + std::to_string(orders[i]);
      return s;
    }
    case FamilyKind::Tensor: return "tensor(" + factors[0].to_string() + "," + factors[1].to_string() + ")";
  }
  return "";
}

unsigned FamilySpec::required_order() const {
  switch (kind) {
    case FamilyKind::H2n2: return n;
    case FamilyKind::H8: return 2;
    case FamilyKind::Radford: return r * n;
    case FamilyKind::AC4Dual: return 4;
    case FamilyKind::Tensor: return std::lcm(factors[0].required_order(), factors[1].required_order());
    default: return 1;
  }
}

std::vector<unsigned> FamilySpec::required_units() const {
  switch (kind) {
    case FamilyKind::En:
    case FamilyKind::AC2n:
    case FamilyKind::H8:
    case FamilyKind::AC4Dual: return {2};
    case FamilyKind::H2n2: return {2, n};
    case FamilyKind::Tensor: {
      auto a = factors[0].required_units();
      auto b = factors[1].required_units();
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    default: return {};
  }
}

HopfPtr build(const FamilySpec& spec, const Field& f) {
  const unsigned need = spec.required_order();
  if (f.order() % need != 0)
    throw ConfigError("family " + spec.to_string() + " needs a primitive " + std::to_string(need) +
                      "-th root of unity; field " + f.name() + " does not provide one");
  if (f.kind() == Field::Kind::Prime) {
    for (auto u : spec.required_units()) {
      if (u % f.characteristic() == 0)
        throw ConfigError("characteristic " + std::to_string(f.characteristic()) + " divides " + std::to_string(u));
    }
  }
  switch (spec.kind) {
    case FamilyKind::En: return build_en(spec.n, f);
    case FamilyKind::AC2n: return build_ac2n(spec.n, f);
    case FamilyKind::H2n2: return build_h2n2(spec.n, f);
    case FamilyKind::H8: return build_h8(f);
    case FamilyKind::Radford: return build_radford(spec.r, spec.n, f);
    case FamilyKind::AC4Dual: return build_ac4dual(f);
    case FamilyKind::Group: return build_group(spec.orders, f);
    case FamilyKind::Tensor: return tensor_product(build(spec.factors[0], f), build(spec.factors[1], f));
  }
  throw ConfigError("unknown family");
}

}  // namespace hopfkit
