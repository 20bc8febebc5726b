#include "hopfkit/quasitriangular.hpp"

#include <bit>
#include <random>

#include "hopfkit/expr.hpp"

namespace hopfkit {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// "[[a,b],[c,d]]" -> rows of entry strings
std::vector<std::vector<std::string>> parse_matrix(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
    throw ConfigError("matrix must look like [[a,b],[c,d]]: " + raw);
  s = s.substr(2, s.size() - 4);
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (true) {
    auto end = s.find("],[", pos);
    std::string row = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::vector<std::string> entries;
    std::size_t p = 0;
    while (true) {
      auto c = row.find(',', p);
      std::string e = trim(row.substr(p, c == std::string::npos ? std::string::npos : c - p));
      if (e.empty()) throw ConfigError("empty matrix entry in " + raw);
      entries.push_back(e);
      if (c == std::string::npos) break;
      p = c + 1;
    }
    rows.push_back(entries);
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw ConfigError("matrix must be square: " + raw);
  }
  return rows;
}

std::string format_matrix(const std::vector<std::vector<std::string>>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + m[i][j];
    s += "]";
  }
  return s + "]";
}

long parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer: '" + s + "'");
  }
}

Scalar determinant(std::vector<std::vector<Scalar>> m) {
  const std::size_t n = m.size();
  const Field& f = m[0][0].field();
  Scalar det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return f.zero();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inv();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Scalar k = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

std::vector<unsigned> members(unsigned mask) {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < 32; ++i) {
    if (mask >> i & 1) out.push_back(i);
  }
  return out;
}

Tensor power(const Tensor& t, unsigned e) {
  Tensor r = Tensor::one(t.hopf(), t.order());
  for (unsigned i = 0; i < e; ++i) r = r * t;
  return r;
}

}  // namespace

RSpec RSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  RSpec s;
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "en-a") {
    s.kind = RKind::EnA;
    s.matrix = parse_matrix(arg);
  } else if (kind == "ac22") {
    s.kind = RKind::AC22;
    bool got_q = false, got_a = false;
    std::size_t p = 0;
    while (p <= arg.size()) {
      auto c = arg.find(',', p);
      std::string kv = trim(arg.substr(p, c == std::string::npos ? std::string::npos : c - p));
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("ac22 parameters look like q=0,a=1: " + text);
      std::string k = trim(kv.substr(0, eq)), v = trim(kv.substr(eq + 1));
      if (k == "q") {
        s.q = static_cast<int>(parse_int(v));
        if (s.q != 0 && s.q != 1) throw ConfigError("ac22 q must be 0 or 1");
        got_q = true;
      } else if (k == "a") {
        s.a = v;
        got_a = true;
      } else {
        throw ConfigError("unknown ac22 parameter '" + k + "'");
      }
      if (c == std::string::npos) break;
      p = c + 1;
    }
    if (!got_q || !got_a) throw ConfigError("ac22 needs q and a");
  } else if (kind == "h8pm") {
    s.kind = RKind::H8pm;
    auto c = arg.find(',');
    if (c == std::string::npos) throw ConfigError("h8pm takes alpha,beta");
    s.alpha = static_cast<int>(parse_int(trim(arg.substr(0, c))));
    s.beta = static_cast<int>(parse_int(trim(arg.substr(c + 1))));
    if ((s.alpha != 1 && s.alpha != -1) || (s.beta != 1 && s.beta != -1))
      throw ConfigError("h8pm parameters must be +1 or -1");
  } else if (kind == "h8omega") {
    s.kind = RKind::H8omega;
    s.omega = trim(arg);
    if (s.omega.empty()) throw ConfigError("h8omega needs a root, e.g. z8^3");
  } else if (kind == "ac4dual") {
    s.kind = RKind::AC4Dual;
  } else if (kind == "bichar") {
    s.kind = RKind::Bichar;
    s.matrix = parse_matrix(arg);
    if (s.matrix.size() != 2) throw ConfigError("bichar matrix must be 2x2");
    for (auto& r : s.matrix)
      for (auto& e : r) e = std::to_string(parse_int(e));
  } else if (kind == "trivial") {
    s.kind = RKind::Trivial;
  } else if (kind == "explicit") {
    s.kind = RKind::Explicit;
    s.expr = arg;
  } else if (kind == "none") {
    s.kind = RKind::None;
  } else {
    throw ConfigError("unknown R spec '" + text + "'");
  }
  return s;
}

std::string RSpec::to_string() const {
  switch (kind) {
    case RKind::EnA: return "en-a:" + format_matrix(matrix);
    case RKind::AC22: return "ac22:q=" + std::to_string(q) + ",a=" + a;
    case RKind::H8pm:
      return std::string("h8pm:") + (alpha > 0 ? "+1" : "-1") + "," + (beta > 0 ? "+1" : "-1");
    case RKind::H8omega: return "h8omega:" + omega;
    case RKind::AC4Dual: return "ac4dual";
    case RKind::Bichar: return "bichar:" + format_matrix(matrix);
    case RKind::Trivial: return "trivial";
    case RKind::Explicit: return "explicit:" + expr;
    case RKind::None: return "none";
  }
  return "";
}

unsigned RSpec::required_order() const { return kind == RKind::H8omega ? 8 : 1; }

RSpec RSpec::en_a(const std::vector<std::vector<long>>& a) {
  RSpec s;
  s.kind = RKind::EnA;
  for (const auto& row : a) {
    s.matrix.emplace_back();
    for (auto v : row) s.matrix.back().push_back(std::to_string(v));
  }
  return s;
}

RSpec RSpec::bichar(const std::vector<std::vector<long>>& m) {
  RSpec s = en_a(m);
  s.kind = RKind::Bichar;
  return s;
}

Tensor2 build_en_r(const HopfPtr& h, unsigned n, const std::vector<std::vector<Scalar>>& A) {
  const Field& f = *h->field;
  if (A.size() != n) throw ConfigError("R_A needs an n x n matrix");
  for (const auto& row : A) {
    if (row.size() != n) throw ConfigError("R_A needs an n x n matrix");
  }
  auto e = [&](unsigned j, unsigned P) { return Tensor::basis(h, 1, 2 * P + (j % 2)); };
  const Scalar half = f.from_fraction(1, 2);
  Tensor2 r = half * (outer(e(0, 0), e(0, 0)) + outer(e(0, 0), e(1, 0)) + outer(e(1, 0), e(0, 0)) -
                      outer(e(1, 0), e(1, 0)));
  const unsigned full = 1u << n;
  for (unsigned P = 1; P < full; ++P) {
    const unsigned k = std::popcount(P);
    auto rows = members(P);
    for (unsigned F = 1; F < full; ++F) {
      if (static_cast<unsigned>(std::popcount(F)) != k) continue;
      auto cols = members(F);
      std::vector<std::vector<Scalar>> sub(k, std::vector<Scalar>(k));
      for (unsigned a = 0; a < k; ++a)
        for (unsigned b = 0; b < k; ++b) sub[a][b] = A[rows[a]][cols[b]];
      Scalar det = determinant(sub);
      if (det.is_zero()) continue;
      if ((k * (k - 1) / 2) % 2) det = -det;
      Tensor2 t = outer(e(k, F), e(0, P)) + outer(e(k, F), e(1, P)) + outer(e(k + 1, F), e(0, P)) -
                  outer(e(k + 1, F), e(1, P));
      r += (half * det) * t;
    }
  }
  return r;
}

Tensor2 build_ac22_r(const HopfPtr& h, int q, const Scalar& a) {
  const Field& f = *h->field;
  Elem g = generator(h, "g"), hh = generator(h, "h"), x = generator(h, "x");
  Elem one = Tensor::one(h, 1);
  Tensor2 rq(h, 2);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j)
      for (unsigned k = 0; k < 2; ++k)
        for (unsigned l = 0; l < 2; ++l) {
          int sign = ((i * j + k * l) % 2) ? -1 : 1;
          unsigned qe = static_cast<unsigned>(q) * (j + l);
          Elem left = power(g, i) * power(hh, k);
          Elem right = power(g, j + qe) * power(hh, qe);
          rq += f.from_fraction(sign, 4) * outer(left, right);
        }
  return rq * (Tensor::one(h, 2) + a * outer(x, g * x));
}

Tensor2 build_h8_pm(const HopfPtr& h, int alpha, int beta) {
  const Field& f = *h->field;
  auto [e1, ex, ey, exy] = h8_idempotents(h);
  Scalar a = f.from_int(alpha), b = f.from_int(beta), ab = a * b;
  return outer(e1, e1 + ex + ey + exy) + outer(ex, e1 + a * ex + b * ey + ab * exy) +
         outer(ey, e1 - b * ex + a * ey - ab * exy) + outer(exy, e1 - ab * ex + ab * ey - exy);
}

Tensor2 build_h8_omega_coop(const HopfPtr& h, const Scalar& w) {
  auto [e1, ex, ey, exy] = h8_idempotents(h);
  Elem one = Tensor::one(h, 1);
  Elem z = generator(h, "z");
  Scalar w2 = w * w;
  Tensor2 r = outer(e1, e1) + outer(e1, exy) + outer(exy, e1) - outer(exy, exy);
  r += (outer(e1, ex) + outer(e1, ey) - w2 * outer(exy, ex) + w2 * outer(exy, ey)) * outer(z, one);
  r += (outer(ex, e1) + outer(ey, e1) + w2 * outer(ex, exy) - w2 * outer(ey, exy)) * outer(one, z);
  r += (w.inv() * outer(ex, ex) + w * outer(ex, ey) + w * outer(ey, ex) + w.inv() * outer(ey, ey)) * outer(z, z);
  return r;
}

Tensor2 build_h8_omega(const HopfPtr& h, const Scalar& w) { return flip(build_h8_omega_coop(h, w)); }

Tensor2 build_ac4dual_r(const HopfPtr& h) {
  return parse_tensor(h,
                      "1/2*(1 (x) 1 + g^2 (x) 1 + 1 (x) g^2 - g^2 (x) g^2) - x (x) x - x (x) g^2*x"
                      " + g^2*x (x) x - g^2*x (x) g^2*x",
                      2);
}

Tensor2 build_bichar_r(const HopfPtr& h, unsigned n, const std::vector<std::vector<long>>& m) {
  const Field& f = *h->field;
  const Scalar q = f.root(n);
  Elem x = generator(h, "x"), y = generator(h, "y");
  const Scalar norm = f.from_fraction(1, static_cast<long>(n * n));
  std::vector<Elem> idem;
  for (unsigned a1 = 0; a1 < n; ++a1) {
    for (unsigned a2 = 0; a2 < n; ++a2) {
      Elem e(h, 1);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          e += (norm * q.pow(-static_cast<long>(a1 * i + a2 * j))) * (power(x, i) * power(y, j));
      idem.push_back(e);
    }
  }
  Tensor2 r(h, 2);
  for (unsigned a = 0; a < n * n; ++a) {
    for (unsigned b = 0; b < n * n; ++b) {
      long a1 = a / n, a2 = a % n, b1 = b / n, b2 = b % n;
      long ex = a1 * m[0][0] * b1 + a1 * m[0][1] * b2 + a2 * m[1][0] * b1 + a2 * m[1][1] * b2;
      r += q.pow(((ex % n) + n) % n) * outer(idem[a], idem[b]);
    }
  }
  return r;
}

Tensor2 build_r(const HopfPtr& h, const FamilySpec& fam, const RSpec& spec) {
  const Field& f = *h->field;
  auto mismatch = [&]() {
    return ConfigError("R spec " + spec.to_string() + " does not apply to family " + fam.to_string());
  };
  switch (spec.kind) {
    case RKind::EnA: {
      if (fam.kind != FamilyKind::En) throw mismatch();
      if (spec.matrix.size() != fam.n) throw ConfigError("R_A needs an n x n matrix for " + fam.to_string());
      std::vector<std::vector<Scalar>> A;
      for (const auto& row : spec.matrix) {
        A.emplace_back();
        for (const auto& e : row) A.back().push_back(parse_scalar(f, e));
      }
      return build_en_r(h, fam.n, A);
    }
    case RKind::AC22:
      if (fam.kind != FamilyKind::AC2n) throw mismatch();
      return build_ac22_r(h, spec.q, parse_scalar(f, spec.a));
    case RKind::H8pm:
      if (fam.kind != FamilyKind::H8 && !(fam.kind == FamilyKind::H2n2 && fam.n == 2)) throw mismatch();
      return build_h8_pm(h, spec.alpha, spec.beta);
    case RKind::H8omega: {
      if (fam.kind != FamilyKind::H8 && !(fam.kind == FamilyKind::H2n2 && fam.n == 2)) throw mismatch();
      Scalar w = parse_scalar(f, spec.omega);
      if (w.pow(4) != -f.one()) throw ConfigError("h8omega needs a primitive 8th root of unity");
      return build_h8_omega(h, w);
    }
    case RKind::AC4Dual:
      if (fam.kind != FamilyKind::AC4Dual) throw mismatch();
      return build_ac4dual_r(h);
    case RKind::Bichar: {
      if (fam.kind != FamilyKind::H2n2 && fam.kind != FamilyKind::H8) throw mismatch();
      std::vector<std::vector<long>> m(2, std::vector<long>(2));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = parse_int(spec.matrix[i][j]);
      return build_bichar_r(h, fam.kind == FamilyKind::H8 ? 2 : fam.n, m);
    }
    case RKind::Trivial:
      return Tensor::one(h, 2);
    case RKind::Explicit:
      return parse_tensor(h, spec.expr, 2);
    case RKind::None:
      throw ConfigError("no R-matrix requested");
  }
  throw mismatch();
}

VerificationReport verify_qtr(const HopfPtr& h, const Tensor2& r, bool fail_fast) {
  VerificationReport rep;
  const Tensor one1 = Tensor::one(h, 1);
  rep.record("counit_left", counit_at(r, 0) == one1);
  rep.record("counit_right", counit_at(r, 1) == one1);
  if (fail_fast && !rep.ok) return rep;
  for (std::size_t b = 0; b < h->dim; ++b) {
    Tensor2 db = delta(Tensor::basis(h, 1, b));
    rep.record("quasi_cocommutative", r * db == flip(db) * r, h->labels[b]);
    if (fail_fast && !rep.ok) return rep;
  }
  const Tensor3 r12 = leg(r, Leg::L12), r13 = leg(r, Leg::L13), r23 = leg(r, Leg::L23);
  rep.record("hexagon_id_delta", id_delta(r) == r13 * r12);
  rep.record("hexagon_delta_id", delta_id(r) == r13 * r23);
  if (fail_fast && !rep.ok) return rep;
  auto inv = inverse(r);
  rep.record("invertible", inv.has_value());
  if (inv && h->antipode) rep.record("antipode_inverse", antipode_at(r, 0) == *inv);
  rep.record("qyb", r12 * r13 * r23 == r23 * r13 * r12);
  return rep;
}

bool qyb_holds(const Tensor2& r) {
  const Tensor3 r12 = leg(r, Leg::L12), r13 = leg(r, Leg::L13), r23 = leg(r, Leg::L23);
  return r12 * r13 * r23 == r23 * r13 * r12;
}

bool is_triangular(const HopfPtr& h, const Tensor2& r) {
  Tensor2 one = Tensor::one(h, 2);
  Tensor2 op = flip(r);
  return op * r == one && r * op == one;
}

Tensor2 r_inverse(const HopfPtr& h, const Tensor2& r) {
  (void)h;
  auto inv = inverse(r);
  if (!inv) throw MathError("R is not invertible");
  return *inv;
}

VerificationReport conjugation_identities_h8(const HopfPtr& h, const Scalar& w) {
  const Field& f = *h->field;
  VerificationReport rep;
  auto [e1, ex, ey, exy] = h8_idempotents(h);
  Elem one = Tensor::one(h, 1);
  Elem x = generator(h, "x"), y = generator(h, "y"), z = generator(h, "z");
  Elem xy = x * y;
  const Scalar w2 = w * w;
  const Scalar half = f.from_fraction(1, 2);
  rep.record("z_squared", z * z == e1 + ex + ey - exy);
  rep.record("z_fourth", z * z * z * z == one);
  // The identities only involve the algebra structure; check both leg orders of R_omega.
  for (int flipped = 0; flipped < 2; ++flipped) {
    const std::string tag = flipped ? "flipped." : "coop.";
    Tensor2 r = flipped ? build_h8_omega(h, w) : build_h8_omega_coop(h, w);
    Tensor2 rinv = r_inverse(h, r);
    rep.record(tag + "inverse_is_antipode", antipode_at(r, 0) == rinv);
    auto conj = [&](const Elem& a) { return rinv * outer(a, one) * r; };
    rep.record(tag + "e1", conj(e1) == outer(e1, one));
    rep.record(tag + "exy", conj(exy) == outer(exy, one));
    rep.record(tag + "ex", conj(ex) == outer(ey, one) + outer(ex - ey, e1 + exy));
    rep.record(tag + "ey", conj(ey) == outer(ex, one) - outer(ex - ey, e1 + exy));
    // Coefficient of e_xy in the middle factor is +2: the -2 form is false (see z_minus_two_form).
    auto z_rhs = [&](long c) {
      return outer(z, one) * (Tensor::one(h, 2) - outer(ex + ey, ex + ey + f.from_int(c) * exy) -
                              w2 * outer(ex - ey, ex - ey));
    };
    rep.record(tag + "z", conj(z) == z_rhs(2));
    rep.checks[tag + "z_minus_two_form"] = conj(z) == z_rhs(-2);
    rep.record(tag + "remark_ex", conj(ex) == half * outer(ex + ey, one) + half * outer(ex - ey, xy));
    rep.record(tag + "remark_ey", conj(ey) == half * outer(ex + ey, one) - half * outer(ex - ey, xy));
    // R^{-1}(a (x) 1)R lies in A (x) (k1 + k xy) for a in the group part A.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coef(-3, 3);
    Subspace allowed = Subspace::span(f, h->dim * h->dim, [&] {
      std::vector<SparseVec> v;
      for (const auto& g : {one, x, y, xy}) {
        v.push_back(outer(g, one).coeffs());
        v.push_back(outer(g, xy).coeffs());
      }
      return v;
    }());
    for (int trial = 0; trial < 8; ++trial) {
      Elem a = f.from_int(coef(rng)) * one + f.from_int(coef(rng)) * x + f.from_int(coef(rng)) * y +
               f.from_int(coef(rng)) * xy;
      rep.record(tag + "membership", allowed.contains(conj(a).coeffs()));
    }
  }
  return rep;
}

VerificationReport rswap_identities_en(const HopfPtr& h, const Tensor2& r) {
  VerificationReport rep;
  Elem g = generator(h, "g");
  Elem one = Tensor::one(h, 1);
  rep.record("gg", r * outer(g, g) == outer(g, g) * r);
  for (std::size_t i = 1; i < h->gen_names.size(); ++i) {
    Elem xp = generator(h, h->gen_names[i]);
    rep.record("x_left", r * outer(xp, one) == outer(xp, g) * r, h->gen_names[i]);
    rep.record("x_right", r * outer(g, xp) == outer(one, xp) * r, h->gen_names[i]);
  }
  return rep;
}

std::vector<EnumeratedR> enumerate_group_rmatrices(const HopfPtr& h, unsigned n) {
  if (n < 2 || n > 4) throw ConfigError("bicharacter enumeration supports 2 <= n <= 4");
  std::vector<EnumeratedR> out;
  for (long a = 0; a < static_cast<long>(n); ++a)
    for (long b = 0; b < static_cast<long>(n); ++b)
      for (long c = 0; c < static_cast<long>(n); ++c)
        for (long d = 0; d < static_cast<long>(n); ++d) {
          std::vector<std::vector<long>> m = {{a, b}, {c, d}};
          Tensor2 r = build_bichar_r(h, n, m);
          if (verify_qtr(h, r, true).ok) out.push_back({m, r});
        }
  return out;
}

std::vector<RSpec> registered_rspecs(const FamilySpec& fam) {
  std::vector<RSpec> out;
  switch (fam.kind) {
    case FamilyKind::En: {
      const unsigned n = fam.n;
      std::vector<std::vector<long>> zero(n, std::vector<long>(n, 0)), id = zero, anti = zero, mixed = zero;
      for (unsigned i = 0; i < n; ++i) {
        id[i][i] = 1;
        for (unsigned j = 0; j < n; ++j) {
          if (i < j) anti[i][j] = static_cast<long>(i + j + 1);
          if (i > j) anti[i][j] = -static_cast<long>(i + j + 1);
          mixed[i][j] = static_cast<long>((3 * i + 5 * j + 2) % 7) - 3;
          if (n == 1) mixed[i][j] = 2;
        }
      }
      out = {RSpec::en_a(zero), RSpec::en_a(id), RSpec::en_a(anti), RSpec::en_a(mixed)};
      break;
    }
    case FamilyKind::AC2n:
      out = {RSpec::parse("ac22:q=0,a=1"), RSpec::parse("ac22:q=1,a=1")};
      break;
    case FamilyKind::H8:
      for (const char* s : {"h8pm:+1,+1", "h8pm:+1,-1", "h8pm:-1,+1", "h8pm:-1,-1", "h8omega:z8", "h8omega:z8^3",
                            "h8omega:z8^5", "h8omega:z8^7"})
        out.push_back(RSpec::parse(s));
      break;
    case FamilyKind::AC4Dual:
      out = {RSpec::parse("ac4dual")};
      break;
    case FamilyKind::Group:
      out = {RSpec::parse("trivial")};
      break;
    default:
      out = {RSpec::parse("none")};
  }
  return out;
}

}  // namespace hopfkit
