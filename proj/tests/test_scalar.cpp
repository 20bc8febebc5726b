#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hopfkit/expr.hpp"
#include "hopfkit/scalar.hpp"

using namespace hopfkit;

namespace {

Scalar random_scalar(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
  Scalar s = f.zero();
  for (unsigned k = 0; k < f.order(); ++k) s += f.from_fraction(num(rng), den(rng)) * f.zeta_power(k);
  return s;
}

// Image of a cyclotomic scalar in F_p under zeta_M -> the chosen order-M residue.
Scalar to_prime(const Scalar& s, const Field& fp) {
  Scalar out = fp.zero();
  for (const auto& [q, k] : s.terms()) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class p(std::to_string(fp.characteristic()));
    mpz_class n = ((num % p) + p) % p, d = den % p;
    Scalar v = fp.from_int(n.get_si()) / fp.from_int(d.get_si());
    out += v * fp.zeta_power(k);
  }
  return out;
}

// Reduction mod p is defined when no denominator is divisible by p.
bool reducible(const Scalar& s, const Field& fp) {
  for (const auto& [q, k] : s.terms())
    if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), fp.characteristic())) return false;
  return true;
}

}  // namespace

TEST_CASE("make_root") {
  const Field& f8 = Field::cyclotomic(8);
  CHECK(f8.root(1) == f8.one());
  CHECK(f8.root(2) == f8.from_int(-1));
  Scalar z = f8.root(8);
  CHECK(z.pow(4) == f8.from_int(-1));
  CHECK(z.pow(8).is_one());
  for (unsigned d : {1u, 2u, 4u}) CHECK_FALSE(z.pow(d).is_one());
  CHECK_THROWS_AS(f8.root(3), MathError);
  CHECK_THROWS_AS(Field::cyclotomic(4).root(8), MathError);
}

TEST_CASE("make_root has exact order for every divisor") {
  for (unsigned m = 1; m <= 24; ++m) {
    const Field& f = Field::cyclotomic(m);
    Scalar z = f.root(m);
    CHECK(z.pow(m).is_one());
    for (unsigned d = 1; d < m; ++d) {
      if (m % d == 0) CHECK_FALSE(z.pow(d).is_one());
    }
    CHECK(f.degree() == f.primitive_roots(m).size());
  }
}

TEST_CASE("field operations") {
  const Field& q = Field::cyclotomic(1);
  CHECK(q.from_int(2).inv() == q.from_fraction(1, 2));
  for (unsigned m : {3u, 5u, 8u, 12u}) {
    const Field& f = Field::cyclotomic(m);
    CHECK((f.root(m) * f.root(m).pow(m - 1)).is_one());
  }
  const Field& f4 = Field::cyclotomic(4);
  Scalar i = f4.root(4);
  CHECK((f4.one() + i) * (f4.one() - i) == f4.from_int(2));
  CHECK_THROWS_AS(f4.zero().inv(), MathError);
  CHECK_THROWS_AS(f4.one() / f4.zero(), MathError);
  CHECK_THROWS_AS(f4.one() + Field::cyclotomic(8).one(), MathError);
}

TEST_CASE("cyclotomic product matches polynomial reduction oracle") {
  // Multiply as polynomials in t, reduce modulo Phi_M by long division, compare coordinates.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-5, 5);
  for (unsigned m : {4u, 5u, 8u, 9u, 12u}) {
    const Field& f = Field::cyclotomic(m);
    auto phi = cyclotomic_polynomial(m);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<mpq_class> a(f.degree()), b(f.degree());
      Scalar sa = f.zero(), sb = f.zero();
      for (unsigned k = 0; k < f.degree(); ++k) {
        a[k] = c(rng);
        b[k] = c(rng);
        sa += f.from_rational(a[k]) * f.zeta_power(k);
        sb += f.from_rational(b[k]) * f.zeta_power(k);
      }
      std::vector<mpq_class> prod(2 * f.degree(), 0);
      for (unsigned i = 0; i < a.size(); ++i)
        for (unsigned j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
      const std::size_t deg = phi.size() - 1;
      for (std::size_t k = prod.size(); k-- > deg;) {
        mpq_class lead = prod[k];
        if (lead == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) prod[k - deg + j] -= lead * mpq_class(phi[j]);
      }
      prod.resize(deg);
      while (!prod.empty() && prod.back() == 0) prod.pop_back();
      CHECK((sa * sb).coeffs() == prod);
    }
  }
}

TEST_CASE("primitive_roots") {
  const Field& f8 = Field::cyclotomic(8);
  auto r2 = f8.primitive_roots(2);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == f8.from_int(-1));
  auto r8 = f8.primitive_roots(8);
  CHECK(r8.size() == 4);
  for (std::size_t i = 0; i < r8.size(); ++i) {
    CHECK(r8[i].pow(4) == f8.from_int(-1));
    for (std::size_t j = i + 1; j < r8.size(); ++j) CHECK(r8[i] != r8[j]);
  }
  auto r4 = f8.primitive_roots(4);
  CHECK(r4.size() == 2);
  for (const auto& w : r4) CHECK(w * w == f8.from_int(-1));
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(11);
  for (unsigned m : {1u, 7u, 8u, 9u, 12u}) {
    const Field& f = Field::cyclotomic(m);
    for (int t = 0; t < 30; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK((a * a.inv()).is_one());
      CHECK(a - a == f.zero());
    }
  }
}

TEST_CASE("canonical form is idempotent and round-trips through text") {
  std::mt19937_64 rng(5);
  const Field& f = Field::cyclotomic(8);
  for (int t = 0; t < 30; ++t) {
    Scalar a = random_scalar(f, rng);
    Scalar b = a + f.zero();
    CHECK(a.coeffs() == b.coeffs());
    CHECK(parse_scalar(f, a.to_string()) == a);
    CHECK(a.hash() == b.hash());
  }
  CHECK(f.from_fraction(1, 2).to_string() == "1/2");
  CHECK(f.zero().to_string() == "0");
}

TEST_CASE("prime field mode") {
  const Field& fp = Field::prime(97, 8);
  Scalar z = fp.root(8);
  CHECK(z.pow(8).is_one());
  CHECK(z.pow(4) == fp.from_int(-1));
  CHECK(fp.from_int(2).inv() * fp.from_int(2) == fp.one());
  CHECK(fp.characteristic() == 97);
  CHECK_THROWS(Field::prime(97, 5));
  CHECK_THROWS(Field::prime(91, 2));
  CHECK(&Field::parse("prime:97:8") == &fp);
  CHECK(Field::parse("cyclotomic:8").order() == 8);
  CHECK_THROWS(Field::parse("banana"));
}

TEST_CASE("identities in Q(zeta_8) also hold in F_97") {
  std::mt19937_64 rng(21);
  const Field& f = Field::cyclotomic(8);
  const Field& fp = Field::prime(97, 8);
  for (int t = 0; t < 40; ++t) {
    Scalar a = random_scalar(f, rng), b = random_scalar(f, rng);
    Scalar prod = a * b, sum = a + b;
    CHECK(to_prime(prod, fp) == to_prime(a, fp) * to_prime(b, fp));
    CHECK(to_prime(sum, fp) == to_prime(a, fp) + to_prime(b, fp));
    if (!a.is_zero() && reducible(a.inv(), fp)) CHECK(to_prime(a.inv(), fp) == to_prime(a, fp).inv());
  }
}
