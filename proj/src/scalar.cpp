#include "hopfkit/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace hopfkit {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

using Poly = std::vector<mpz_class>;

void trim_poly(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
  trim_poly(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  Poly q(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    mpz_class c = num[k];
    if (c == 0) continue;
    q[k - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
  }
  trim_poly(num);
  if (!num.empty()) throw MathError("cyclotomic division left a remainder");
  return q;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

std::uint64_t to_residue(const mpq_class& q, std::uint64_t p) {
  mpz_class pm = static_cast<unsigned long>(p);
  mpz_class n = q.get_num() % pm;
  if (n < 0) n += pm;
  mpz_class d = q.get_den() % pm;
  if (d == 0) throw MathError("denominator vanishes modulo p");
  std::uint64_t nr = n.get_ui();
  std::uint64_t dr = d.get_ui();
  return mulmod(nr, powmod(dr, p - 2, p), p);
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw MathError("cyclotomic order must be positive");
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  }
  return p;
}

const Field& Field::cyclotomic(unsigned order) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<Field>> cache;
  if (order == 0) throw MathError("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) {
    auto f = std::unique_ptr<Field>(new Field());
    f->kind_ = Kind::Cyclotomic;
    f->order_ = order;
    Poly phi = cyclotomic_polynomial(order);
    f->phi_ = static_cast<unsigned>(phi.size() - 1);
    const unsigned n = f->phi_;
    // t^n = -sum phi_i t^i
    std::vector<mpq_class> cur(n);
    for (unsigned i = 0; i < n; ++i) cur[i] = -phi[i];
    for (unsigned k = n; k + 1 < 2 * n || k == n; ++k) {
      f->reduce_.push_back(cur);
      std::vector<mpq_class> next(n);
      for (unsigned i = 0; i + 1 < n; ++i) next[i + 1] = cur[i];
      const mpq_class top = n ? cur[n - 1] : mpq_class(0);
      for (unsigned i = 0; i < n; ++i) next[i] -= top * phi[i];
      cur = std::move(next);
    }
    slot = std::move(f);
  }
  return *slot;
}

const Field& Field::prime(std::uint64_t p, unsigned order) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<Field>> cache;
  if (!is_prime_u64(p)) throw MathError("modulus " + std::to_string(p) + " is not prime");
  if (order == 0 || (p - 1) % order != 0)
    throw MathError("prime " + std::to_string(p) + " is not 1 mod " + std::to_string(order));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, order}];
  if (!slot) {
    auto f = std::unique_ptr<Field>(new Field());
    f->kind_ = Kind::Prime;
    f->order_ = order;
    f->phi_ = 1;
    f->p_ = p;
    std::uint64_t g = 1;
    if (p > 2) {
      auto fac = prime_factors(p - 1);
      for (g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : fac) {
          if (powmod(g, (p - 1) / q, p) == 1) {
            ok = false;
            break;
          }
        }
        if (ok) break;
      }
    }
    f->zeta_ = powmod(g, (p - 1) / order, p);
    slot = std::move(f);
  }
  return *slot;
}

const Field& Field::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw MathError("field spec needs a ':' separator: " + text);
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  try {
    if (kind == "cyclotomic") return cyclotomic(static_cast<unsigned>(std::stoul(rest)));
    if (kind == "prime") {
      auto c2 = rest.find(':');
      std::uint64_t p = std::stoull(rest.substr(0, c2));
      unsigned m = c2 == std::string::npos ? 1u : static_cast<unsigned>(std::stoul(rest.substr(c2 + 1)));
      return prime(p, m);
    }
  } catch (const std::invalid_argument&) {
    throw MathError("malformed field spec: " + text);
  }
  throw MathError("unknown field kind: " + kind);
}

std::string Field::name() const {
  if (kind_ == Kind::Cyclotomic) return "cyclotomic:" + std::to_string(order_);
  return "prime:" + std::to_string(p_) + ":" + std::to_string(order_);
}

Scalar Field::zero() const { return Scalar(*this); }

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const { return from_rational(mpq_class(v)); }

Scalar Field::from_fraction(long num, long den) const {
  if (den == 0) throw MathError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return from_rational(q);
}

Scalar Field::from_rational(const mpq_class& v) const {
  Scalar s(*this);
  if (kind_ == Kind::Prime) {
    s.r_ = to_residue(v, p_);
  } else if (v != 0) {
    s.c_.push_back(v);
  }
  return s;
}

Scalar Field::zeta_power(long k) const {
  long m = static_cast<long>(order_);
  long e = ((k % m) + m) % m;
  Scalar s(*this);
  if (kind_ == Kind::Prime) {
    s.r_ = powmod(zeta_, static_cast<std::uint64_t>(e), p_);
    return s;
  }
  if (static_cast<unsigned>(e) < phi_) {
    s.c_.assign(e + 1, mpq_class(0));
    s.c_[e] = 1;
    return s;
  }
  Scalar t(*this);
  t.c_ = {mpq_class(0), mpq_class(1)};
  if (phi_ == 1) t = from_rational(reduce_[0][0]);
  return t.pow(e);
}

Scalar Field::root(unsigned m) const {
  if (!has_root(m))
    throw MathError("root of order " + std::to_string(m) + " not available in " + name());
  return zeta_power(static_cast<long>(order_ / m));
}

std::vector<Scalar> Field::primitive_roots(unsigned m) const {
  Scalar z = root(m);
  std::vector<Scalar> out;
  for (unsigned a = 1; a <= m; ++a) {
    if (std::gcd(a, m) == 1) out.push_back(z.pow(a));
  }
  return out;
}

void Scalar::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) throw MathError("scalars from different fields");
}

bool Scalar::is_zero() const {
  if (field_ && field_->kind() == Field::Kind::Prime) return r_ == 0;
  return c_.empty();
}

bool Scalar::is_one() const {
  if (field_ && field_->kind() == Field::Kind::Prime) return r_ == 1 % field_->characteristic();
  return c_.size() == 1 && c_[0] == 1;
}

bool Scalar::is_rational() const {
  if (field_ && field_->kind() == Field::Kind::Prime) return true;
  return c_.size() <= 1;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_->kind() == Field::Kind::Prime) {
    std::uint64_t p = field_->characteristic();
    r_ = (r_ + o.r_) % p;
    return *this;
  }
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_->kind() == Field::Kind::Prime) {
    std::uint64_t p = field_->characteristic();
    r_ = (r_ + p - o.r_) % p;
    return *this;
  }
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (field_->kind() == Field::Kind::Prime) {
    std::uint64_t p = field_->characteristic();
    s.r_ = (p - r_) % p;
    return s;
  }
  for (auto& c : s.c_) c = -c;
  return s;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  const Field& f = *a.field_;
  Scalar s(f);
  if (f.kind() == Field::Kind::Prime) {
    s.r_ = mulmod(a.r_, b.r_, f.characteristic());
    return s;
  }
  if (a.c_.empty() || b.c_.empty()) return s;
  if (a.c_.size() == 1) {
    s.c_ = b.c_;
    for (auto& c : s.c_) c *= a.c_[0];
    return s;
  }
  if (b.c_.size() == 1) {
    s.c_ = a.c_;
    for (auto& c : s.c_) c *= b.c_[0];
    return s;
  }
  const unsigned n = f.degree();
  std::vector<mpq_class> prod(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
  }
  s.c_.assign(n, mpq_class(0));
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < n) {
      s.c_[k] += prod[k];
    } else {
      const auto& row = f.reduction_row(static_cast<unsigned>(k));
      for (unsigned i = 0; i < n; ++i) s.c_[i] += prod[k] * row[i];
    }
  }
  s.trim();
  return s;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this * o.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.field_ && a.field_->kind() == Field::Kind::Prime) return a.r_ == b.r_;
  return a.c_ == b.c_;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw MathError("division by zero");
  const Field& f = *field_;
  Scalar s(f);
  if (f.kind() == Field::Kind::Prime) {
    s.r_ = powmod(r_, f.characteristic() - 2, f.characteristic());
    return s;
  }
  if (c_.size() == 1) {
    s.c_ = {1 / c_[0]};
    return s;
  }
  // Solve a * b = 1 via the multiplication matrix of a.
  const unsigned n = f.degree();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  Scalar basis(f);
  for (unsigned j = 0; j < n; ++j) {
    basis.c_.assign(j + 1, mpq_class(0));
    basis.c_[j] = 1;
    Scalar col = *this * basis;
    for (unsigned i = 0; i < col.c_.size(); ++i) m[i][j] = col.c_[i];
  }
  m[0][n] = 1;
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw MathError("singular multiplication matrix");
    std::swap(m[c], m[piv]);
    mpq_class d = m[c][c];
    for (auto& v : m[c]) v /= d;
    for (unsigned r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class k = m[r][c];
      for (unsigned j = c; j <= n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  s.c_.resize(n);
  for (unsigned i = 0; i < n; ++i) s.c_[i] = m[i][n];
  s.trim();
  return s;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r = field_->one();
  Scalar b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<mpq_class, unsigned>> Scalar::terms() const {
  std::vector<std::pair<mpq_class, unsigned>> out;
  if (field_->kind() == Field::Kind::Prime) {
    if (r_ != 0) out.emplace_back(mpq_class(static_cast<unsigned long>(r_)), 0u);
    return out;
  }
  for (unsigned k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) out.emplace_back(c_[k], k);
  }
  return out;
}

std::string Scalar::to_string() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::string out;
  const std::string z = "z" + std::to_string(field_->order());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& [q, k] = ts[i];
    std::string piece;
    mpq_class a = abs(q);
    bool neg = q < 0;
    if (k == 0) {
      piece = a.get_str();
    } else {
      std::string zk = k == 1 ? z : z + "^" + std::to_string(k);
      piece = a == 1 ? zk : a.get_str() + "*" + zk;
    }
    if (neg) {
      out += "-";
    } else if (i > 0) {
      out += "+";
    }
    out += piece;
  }
  return out;
}

std::size_t Scalar::hash() const {
  std::size_t h = std::hash<std::uint64_t>()(r_);
  for (const auto& c : c_) {
    h = h * 1000003u ^ std::hash<std::string>()(c.get_str());
  }
  return h;
}

}  // namespace hopfkit
