#include "hopfkit/precartier.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

#include "hopfkit/expr.hpp"
#include "hopfkit/hochschild.hpp"
#include "hopfkit/quasitriangular.hpp"

namespace hopfkit {

namespace {

const std::vector<std::string> kTags = {"cqtr1",        "cqtr2",   "cqtr3",  "counit_left",
                                        "counit_right", "cartier", "cocycle"};

bool needs_r(const std::string& tag) { return tag == "cqtr2" || tag == "cqtr3" || tag == "cartier"; }

// Concatenate per-basis residuals into one coordinate vector.
SparseVec concat(const std::vector<SparseVec>& parts, std::size_t stride) {
  std::vector<SparseVec::Entry> e;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& [i, s] : parts[k].entries()) e.emplace_back(k * stride + i, s);
  return SparseVec(std::move(e));
}

std::size_t block_rows(const HopfData& h, const std::string& tag) {
  const std::size_t d = h.dim;
  if (tag == "cqtr1") return d * d * d;
  if (tag == "cqtr2" || tag == "cqtr3" || tag == "cocycle") return d * d * d;
  if (tag == "counit_left" || tag == "counit_right") return d;
  if (tag == "cartier") return d * d;
  throw std::invalid_argument("unknown block tag " + tag);
}

struct Context {
  HopfPtr h;
  std::optional<Tensor2> r;
  std::vector<Tensor2> deltas;
  Tensor3 r12, r23;
  std::optional<Tensor3> r12inv, r23inv;

  Context(const HopfPtr& hp, const std::optional<Tensor2>& rr, bool need_inverse) : h(hp), r(rr) {
    for (std::size_t b = 0; b < h->dim; ++b) deltas.push_back(delta(Tensor::basis(h, 1, b)));
    if (r) {
      r12 = leg(*r, Leg::L12);
      r23 = leg(*r, Leg::L23);
      if (need_inverse) {
        Tensor2 inv = r_inverse(h, *r);
        r12inv = leg(inv, Leg::L12);
        r23inv = leg(inv, Leg::L23);
      }
    }
  }

  // Matrix form of a block applied to chi.
  SparseVec apply(const std::string& tag, const Tensor2& chi) const {
    const std::size_t d = h->dim;
    if (tag == "cqtr1") {
      std::vector<SparseVec> parts;
      for (const auto& db : deltas) parts.push_back((chi * db - db * chi).coeffs());
      return concat(parts, d * d);
    }
    if (tag == "cqtr2") {
      return (r12 * id_delta(chi) - r12 * leg(chi, Leg::L12) - leg(chi, Leg::L13) * r12).coeffs();
    }
    if (tag == "cqtr3") {
      return (r23 * delta_id(chi) - r23 * leg(chi, Leg::L23) - leg(chi, Leg::L13) * r23).coeffs();
    }
    if (tag == "counit_left") return counit_at(chi, 0).coeffs();
    if (tag == "counit_right") return counit_at(chi, 1).coeffs();
    if (tag == "cartier") return (*r * chi - flip(chi) * *r).coeffs();
    if (tag == "cocycle") return cobar_apply(chi).coeffs();
    throw std::invalid_argument("unknown block tag " + tag);
  }

  // Independent evaluation: R^{-1} form, multiplied back by R; cocycle from legs.
  SparseVec direct(const std::string& tag, const Tensor2& chi) const {
    if (tag == "cqtr2") {
      Tensor3 res = id_delta(chi) - leg(chi, Leg::L12) - *r12inv * leg(chi, Leg::L13) * r12;
      return (r12 * res).coeffs();
    }
    if (tag == "cqtr3") {
      Tensor3 res = delta_id(chi) - leg(chi, Leg::L23) - *r23inv * leg(chi, Leg::L13) * r23;
      return (r23 * res).coeffs();
    }
    if (tag == "cocycle") {
      return (leg(chi, Leg::L23) + id_delta(chi) - leg(chi, Leg::L12) - delta_id(chi)).coeffs();
    }
    if (tag == "counit_left" || tag == "counit_right") {
      // Counit contracted term by term.
      const int slot = tag == "counit_left" ? 0 : 1;
      Accumulator acc(h->dim);
      for (const auto& [idx, c] : chi.coeffs().entries()) {
        auto p = split_index(idx, h->dim, 2);
        Scalar e = h->counit[p[slot]];
        if (!e.is_zero()) acc.add(p[1 - slot], c * e);
      }
      return acc.take();
    }
    if (tag == "cqtr1") {
      std::vector<SparseVec> parts;
      for (const auto& db : deltas) {
        Tensor2 lhs = chi * db, rhs = db * chi;
        parts.push_back((lhs - rhs).coeffs());
      }
      return concat(parts, h->dim * h->dim);
    }
    if (tag == "cartier") {
      Tensor2 op = flip(chi);
      return (*r * chi - op * *r).coeffs();
    }
    throw std::invalid_argument("unknown block tag " + tag);
  }
};

SparseMat assemble(const Context& ctx, const std::string& tag) {
  const HopfPtr& h = ctx.h;
  const std::size_t cols = h->dim * h->dim;
  std::vector<SparseVec> images(cols);
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t c = w; c < cols; c += workers) images[c] = ctx.apply(tag, Tensor::basis(h, 2, c));
    }));
  }
  for (auto& j : jobs) j.get();
  return SparseMat::from_columns(block_rows(*h, tag), images);
}

Subspace kernel_of(const Field& f, const std::vector<const SparseMat*>& blocks) {
  return kernel(f, SparseMat::stack(blocks));
}

}  // namespace

const SparseMat& ChiSystem::block(const std::string& tag) const {
  for (const auto& [t, m] : blocks)
    if (t == tag) return m;
  throw std::invalid_argument("block " + tag + " not present");
}

bool ChiSystem::has(const std::string& tag) const {
  return std::any_of(blocks.begin(), blocks.end(), [&](const auto& b) { return b.first == tag; });
}

SparseMat build_block(const HopfPtr& h, const std::optional<Tensor2>& r, const std::string& tag) {
  if (needs_r(tag) && !r) throw std::invalid_argument("block " + tag + " needs an R-matrix");
  return assemble(Context(h, r, false), tag);
}

ChiSystem build_system(const HopfPtr& h, const std::optional<Tensor2>& r) {
  if (r && !verify_qtr(h, *r, true).ok) throw MathError("R is not quasitriangular");
  Context ctx(h, r, false);
  ChiSystem sys{h, r, {}};
  for (const auto& tag : kTags) {
    if (needs_r(tag) && !r) continue;
    sys.blocks.emplace_back(tag, assemble(ctx, tag));
  }
  return sys;
}

SparseVec block_residual(const HopfPtr& h, const std::optional<Tensor2>& r, const std::string& tag,
                         const Tensor2& chi) {
  if (needs_r(tag) && !r) throw std::invalid_argument("block " + tag + " needs an R-matrix");
  return Context(h, r, r.has_value()).direct(tag, chi);
}

bool is_infinitesimal(const HopfPtr& h, const Tensor2& r, const Tensor2& chi) {
  for (std::size_t b = 0; b < h->dim; ++b) {
    Tensor2 db = delta(Tensor::basis(h, 1, b));
    if (chi * db != db * chi) return false;
  }
  Tensor2 inv = r_inverse(h, r);
  const Tensor3 r12 = leg(r, Leg::L12), r23 = leg(r, Leg::L23);
  const Tensor3 i12 = leg(inv, Leg::L12), i23 = leg(inv, Leg::L23);
  const Tensor3 c13 = leg(chi, Leg::L13);
  if (id_delta(chi) != leg(chi, Leg::L12) + i12 * c13 * r12) return false;
  return delta_id(chi) == leg(chi, Leg::L23) + i23 * c13 * r23;
}

bool counits_vanish(const Tensor2& chi) { return counit_at(chi, 0).is_zero() && counit_at(chi, 1).is_zero(); }

Subspace solve_infinitesimal(const HopfPtr& h, const Tensor2& r) {
  Context ctx(h, r, false);
  SparseMat b1 = assemble(ctx, "cqtr1"), b2 = assemble(ctx, "cqtr2"), b3 = assemble(ctx, "cqtr3");
  Subspace s = kernel_of(*h->field, {&b1, &b2, &b3});
  for (const auto& t : as_tensors(h, s)) {
    if (!counits_vanish(t)) throw MathError("infinitesimal R-matrix with nonzero counit");
  }
  return s;
}

Subspace solve_rfree(const HopfPtr& h) {
  Context ctx(h, std::nullopt, false);
  SparseMat b1 = assemble(ctx, "cqtr1"), cl = assemble(ctx, "counit_left"), cr = assemble(ctx, "counit_right");
  return kernel_of(*h->field, {&b1, &cl, &cr});
}

Subspace cartier_subspace(const HopfPtr& h, const Tensor2& r, const Subspace& chi_space) {
  return chi_space.intersect(kernel(*h->field, build_block(h, r, "cartier")));
}

bool cartier_coboundary_check(const HopfPtr& h, const Tensor2& r, const Subspace& chi_space) {
  return cartier_subspace(h, r, chi_space) == chi_space.intersect(coboundaries(h, 2));
}

Elem casimir(const HopfPtr& h, const Tensor2& chi) {
  if (!h->antipode) throw MathError("casimir needs an antipode");
  return multiply_legs(antipode_at(chi, 0));
}

std::vector<Tensor2> as_tensors(const HopfPtr& h, const Subspace& s) {
  std::vector<Tensor2> out;
  for (const auto& v : s.basis()) out.emplace_back(h, 2, v);
  return out;
}

Subspace en_chi_span(const HopfPtr& h, unsigned n) {
  std::vector<SparseVec> v;
  for (unsigned p = 1; p <= n; ++p)
    for (unsigned q = 1; q <= n; ++q)
      v.push_back(parse_tensor(h, "g*x" + std::to_string(p) + " (x) x" + std::to_string(q), 2).coeffs());
  return Subspace::span(*h->field, h->dim * h->dim, v);
}

}  // namespace hopfkit
