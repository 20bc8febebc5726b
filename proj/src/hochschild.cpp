#include "hopfkit/hochschild.hpp"

#include "hopfkit/expr.hpp"

namespace hopfkit {

namespace {

void check_degree(unsigned n, unsigned max) {
  if (n > max) throw ConfigError("unsupported cobar degree " + std::to_string(n));
}

}  // namespace

Tensor cobar_apply(const Tensor& t) {
  const int n = t.order();
  if (n > 3) throw ConfigError("unsupported cobar degree " + std::to_string(n));
  const Field& f = t.field();
  Tensor one = Tensor::one(t.hopf(), 1);
  Tensor out = outer(one, t);
  for (int i = 1; i <= n; ++i) {
    Tensor d = delta_at(t, i - 1);
    out += i % 2 ? -d : d;
  }
  Tensor last = outer(t, one);
  out += (n + 1) % 2 ? f.from_int(-1) * last : last;
  return out;
}

CobarDifferential b_matrix(const HopfPtr& h, unsigned n) {
  check_degree(n, 3);
  CobarDifferential b;
  b.degree = n;
  if (n == 0) {
    b.matrix = SparseMat(h->dim, 1);
    return b;
  }
  const std::size_t cols = ipow(h->dim, static_cast<int>(n));
  std::vector<SparseVec> images(cols);
  for (std::size_t c = 0; c < cols; ++c) images[c] = cobar_apply(Tensor::basis(h, static_cast<int>(n), c)).coeffs();
  b.matrix = SparseMat::from_columns(ipow(h->dim, static_cast<int>(n) + 1), images);
  return b;
}

Subspace cocycles(const HopfPtr& h, unsigned n) {
  check_degree(n, 2);
  if (n == 0) return Subspace::whole(*h->field, 1);
  return kernel(*h->field, b_matrix(h, n).matrix);
}

Subspace coboundaries(const HopfPtr& h, unsigned n) {
  check_degree(n, 2);
  if (n == 0) return Subspace(*h->field, 1);
  return image(*h->field, b_matrix(h, n - 1).matrix);
}

long h_dim(const HopfPtr& h, unsigned n) {
  Subspace z = cocycles(h, n), b = coboundaries(h, n);
  if (!z.contains(b)) throw MathError("coboundaries are not cocycles");
  return static_cast<long>(z.dim()) - static_cast<long>(b.dim());
}

std::optional<Elem> coboundary_preimage(const HopfPtr& h, const Tensor2& t) {
  auto x = solve(*h->field, b_matrix(h, 1).matrix, t.coeffs());
  if (!x) return std::nullopt;
  return Elem(h, 1, *x);
}

std::vector<Tensor2> en_i_generators(const HopfPtr& h, unsigned n) {
  std::vector<Tensor2> out;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned l = i; l <= n; ++l) {
      out.push_back(parse_tensor(h, "g*x" + std::to_string(i) + " (x) x" + std::to_string(l), 2));
    }
  }
  return out;
}

EnZ2Decomposition en_z2_decomposition(const HopfPtr& h, unsigned n) {
  const Field& f = *h->field;
  EnZ2Decomposition d;
  Subspace z2 = cocycles(h, 2), b2 = coboundaries(h, 2);
  std::vector<SparseVec> gens;
  for (const auto& t : en_i_generators(h, n)) gens.push_back(t.coeffs());
  Subspace i = Subspace::span(f, z2.ambient(), gens);
  d.z2 = z2.dim();
  d.b2 = b2.dim();
  d.i_dim = i.dim();
  d.intersection = i.intersect(b2).dim();
  const std::size_t expected = n * (n + 1) / 2;
  d.report.record("b2_in_z2", z2.contains(b2));
  d.report.record("i_in_z2", z2.contains(i));
  d.report.record("i_independent", i.dim() == expected);
  d.report.record("i_meets_b2_trivially", d.intersection == 0);
  d.report.record("z2_is_b2_plus_i", z2 == b2 + i);
  d.report.record("dim_z2", d.z2 == d.b2 + expected);
  d.report.record("dim_b2", d.b2 == (std::size_t{1} << (n + 1)));
  return d;
}

}  // namespace hopfkit
