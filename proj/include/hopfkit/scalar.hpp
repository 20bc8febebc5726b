#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfkit {

class Scalar;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar field: Q(zeta_M) reduced modulo the M-th cyclotomic polynomial,
// or F_p with a fixed element of multiplicative order M standing in for zeta_M.
// Instances are interned and live for the whole process.
class Field {
 public:
  enum class Kind { Cyclotomic, Prime };

  static const Field& cyclotomic(unsigned order);
  static const Field& prime(std::uint64_t p, unsigned order);
  // "cyclotomic:8", "prime:97" or "prime:97:8"
  static const Field& parse(const std::string& text);

  Kind kind() const { return kind_; }
  unsigned order() const { return order_; }
  unsigned degree() const { return phi_; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_rational(const mpq_class& v) const;
  Scalar from_fraction(long num, long den) const;
  // Primitive m-th root of unity; m must divide the ambient order.
  Scalar root(unsigned m) const;
  // All primitive m-th roots zeta_m^a, gcd(a, m) = 1, in increasing a.
  std::vector<Scalar> primitive_roots(unsigned m) const;
  // zeta_M^k for the ambient order M.
  Scalar zeta_power(long k) const;
  bool has_root(unsigned m) const { return m != 0 && order_ % m == 0; }

  // Cyclotomic internals.
  const std::vector<mpq_class>& reduction_row(unsigned k) const { return reduce_[k - phi_]; }
  std::uint64_t zeta_residue() const { return zeta_; }

 private:
  Field() = default;
  Kind kind_ = Kind::Cyclotomic;
  unsigned order_ = 1;
  unsigned phi_ = 1;
  std::uint64_t p_ = 0;
  std::uint64_t zeta_ = 1;
  // reduce_[k - phi] holds t^k mod Phi_M for phi <= k <= 2 phi - 2.
  std::vector<std::vector<mpq_class>> reduce_;
};

std::vector<mpz_class> cyclotomic_polynomial(unsigned m);

class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const Field& f) : field_(&f) {}

  const Field& field() const { return *field_; }
  bool has_field() const { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  // Power-basis coordinates (cyclotomic), trailing zeros trimmed.
  const std::vector<mpq_class>& coeffs() const { return c_; }
  std::uint64_t residue() const { return r_; }
  // Rational value if the element lies in Q (cyclotomic mode only).
  bool is_rational() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inv() const;
  Scalar pow(long e) const;

  // Grammar-compatible text, e.g. "-1/2", "1/2*z8^3+2", "0".
  std::string to_string() const;
  // Decomposition into rational multiples of zeta_M^k (cyclotomic mode).
  std::vector<std::pair<mpq_class, unsigned>> terms() const;
  std::size_t hash() const;

 private:
  friend class Field;
  void trim();
  void check_same(const Scalar& o) const;
  const Field* field_ = nullptr;
  std::vector<mpq_class> c_;
  std::uint64_t r_ = 0;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);

}  // namespace hopfkit
