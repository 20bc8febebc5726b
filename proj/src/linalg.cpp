#include "hopfkit/linalg.hpp"

#include <algorithm>

namespace hopfkit {

SparseVec::SparseVec(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& en : entries) {
    if (!e_.empty() && e_.back().first == en.first) {
      e_.back().second += en.second;
    } else {
      e_.push_back(std::move(en));
    }
  }
  e_.erase(std::remove_if(e_.begin(), e_.end(), [](const Entry& x) { return x.second.is_zero(); }),
           e_.end());
}

Scalar SparseVec::get(const Field& f, std::size_t i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const Entry& a, std::size_t k) { return a.first < k; });
  if (it != e_.end() && it->first == i) return it->second;
  return f.zero();
}

void SparseVec::axpy(SparseVec& a, const Scalar& s, const SparseVec& b) {
  if (s.is_zero() || b.e_.empty()) return;
  std::vector<Entry> out;
  out.reserve(a.e_.size() + b.e_.size());
  std::size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first)) {
      out.push_back(std::move(a.e_[i++]));
    } else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first) {
      out.emplace_back(b.e_[j].first, s * b.e_[j].second);
      ++j;
    } else {
      Scalar v = a.e_[i].second + s * b.e_[j].second;
      if (!v.is_zero()) out.emplace_back(a.e_[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a.e_ = std::move(out);
}

SparseVec& SparseVec::operator+=(const SparseVec& o) {
  if (o.e_.empty()) return *this;
  axpy(*this, o.e_.front().second.field().one(), o);
  return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& o) {
  if (o.e_.empty()) return *this;
  axpy(*this, -o.e_.front().second.field().one(), o);
  return *this;
}

SparseVec SparseVec::scaled(const Scalar& s) const {
  SparseVec r;
  if (s.is_zero()) return r;
  r.e_.reserve(e_.size());
  for (const auto& [i, v] : e_) r.e_.emplace_back(i, v * s);
  return r;
}

SparseVec SparseVec::operator-() const {
  SparseVec r;
  r.e_.reserve(e_.size());
  for (const auto& [i, v] : e_) r.e_.emplace_back(i, -v);
  return r;
}

void Accumulator::add(std::size_t i, const Scalar& s) {
  if (!used_[i]) {
    used_[i] = 1;
    buf_[i] = s;
    touched_.push_back(i);
  } else {
    buf_[i] += s;
  }
}

void Accumulator::add(const SparseVec& v, const Scalar& s) {
  for (const auto& [i, c] : v.entries()) add(i, c * s);
}

SparseVec Accumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  std::vector<SparseVec::Entry> out;
  out.reserve(touched_.size());
  for (auto i : touched_) {
    used_[i] = 0;
    if (!buf_[i].is_zero()) out.emplace_back(i, std::move(buf_[i]));
    buf_[i] = Scalar();
  }
  touched_.clear();
  return SparseVec(std::move(out));
}

SparseMat SparseMat::from_columns(std::size_t nrows, const std::vector<SparseVec>& cols) {
  SparseMat m(nrows, cols.size());
  std::vector<std::vector<SparseVec::Entry>> rows(nrows);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [i, v] : cols[j].entries()) rows[i].emplace_back(j, v);
  }
  for (std::size_t i = 0; i < nrows; ++i) m.rows_[i] = SparseVec(std::move(rows[i]));
  return m;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
  std::vector<SparseVec::Entry> out;
  for (std::size_t i = 0; i < nrows_; ++i) {
    const auto& r = rows_[i].entries();
    if (r.empty()) continue;
    std::optional<Scalar> acc;
    std::size_t a = 0, b = 0;
    const auto& ve = v.entries();
    while (a < r.size() && b < ve.size()) {
      if (r[a].first < ve[b].first) {
        ++a;
      } else if (ve[b].first < r[a].first) {
        ++b;
      } else {
        Scalar t = r[a].second * ve[b].second;
        if (acc) {
          *acc += t;
        } else {
          acc = t;
        }
        ++a;
        ++b;
      }
    }
    if (acc && !acc->is_zero()) out.emplace_back(i, *acc);
  }
  return SparseVec(std::move(out));
}

SparseMat SparseMat::stack(const std::vector<const SparseMat*>& blocks) {
  std::size_t nr = 0, nc = blocks.empty() ? 0 : blocks.front()->ncols();
  for (auto* b : blocks) {
    if (b->ncols() != nc) throw MathError("stacked blocks differ in column count");
    nr += b->nrows();
  }
  SparseMat m(nr, nc);
  std::size_t k = 0;
  for (auto* b : blocks) {
    for (const auto& r : b->rows()) m.rows_[k++] = r;
  }
  return m;
}

std::vector<SparseVec> SparseMat::columns() const {
  std::vector<std::vector<SparseVec::Entry>> cols(ncols_);
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (const auto& [j, v] : rows_[i].entries()) cols[j].emplace_back(i, v);
  }
  std::vector<SparseVec> out;
  out.reserve(ncols_);
  for (auto& c : cols) out.emplace_back(std::move(c));
  return out;
}

Echelon::Echelon(const Field& f, std::size_t ncols)
    : field_(&f), ncols_(ncols), pivot_row_(ncols, -1), acc_(ncols) {}

SparseVec Echelon::reduce(const SparseVec& v) const {
  bool hit = false;
  for (const auto& [i, c] : v.entries()) {
    if (i >= ncols_) throw MathError("vector index out of range");
    if (pivot_row_[i] >= 0) {
      hit = true;
      break;
    }
  }
  if (!hit) return v;
  acc_.add(v, field_->one());
  for (const auto& [i, c] : v.entries()) {
    if (pivot_row_[i] >= 0) acc_.add(rows_[pivot_row_[i]], -c);
  }
  return acc_.take();
}

bool Echelon::add(const SparseVec& row) {
  if (full()) return false;
  SparseVec r = reduce(row);
  if (r.empty()) return false;
  const std::size_t lead = r.lead();
  Scalar inv = r.entries().front().second.inv();
  if (!inv.is_one()) r = r.scaled(inv);
  for (auto& existing : rows_) {
    const auto& e = existing.entries();
    auto it = std::lower_bound(e.begin(), e.end(), lead,
                               [](const SparseVec::Entry& a, std::size_t k) { return a.first < k; });
    if (it != e.end() && it->first == lead) {
      Scalar c = -it->second;
      SparseVec::axpy(existing, c, r);
    }
  }
  pivot_row_[lead] = static_cast<std::ptrdiff_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> p;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] >= 0) p.push_back(c);
  }
  return p;
}

std::vector<SparseVec> Echelon::rref() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] >= 0) out.push_back(rows_[pivot_row_[c]]);
  }
  return out;
}

std::vector<SparseVec> Echelon::kernel_basis() const {
  std::vector<std::vector<SparseVec::Entry>> by_col(ncols_);
  for (const auto& r : rows_) {
    const std::size_t p = r.lead();
    for (const auto& [c, v] : r.entries()) {
      if (c != p) by_col[c].emplace_back(p, -v);
    }
  }
  std::vector<SparseVec> out;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (pivot_row_[c] >= 0) continue;
    auto entries = std::move(by_col[c]);
    entries.emplace_back(c, field_->one());
    out.emplace_back(std::move(entries));
  }
  return out;
}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<SparseVec>& vecs) {
  Echelon e(f, ambient);
  for (const auto& v : vecs) {
    e.add(v);
    if (e.full()) break;
  }
  Subspace s(f, ambient);
  s.basis_ = e.rref();
  return s;
}

Subspace Subspace::whole(const Field& f, std::size_t ambient) {
  Subspace s(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(SparseVec::unit(f, i));
  return s;
}

bool Subspace::contains(const SparseVec& v) const {
  if (v.empty()) return true;
  // Basis rows are in RREF: subtract multiples at pivot positions.
  std::vector<std::ptrdiff_t> piv(ambient_, -1);
  for (std::size_t k = 0; k < basis_.size(); ++k) piv[basis_[k].lead()] = static_cast<std::ptrdiff_t>(k);
  Accumulator acc(ambient_);
  acc.add(v, field_->one());
  for (const auto& [i, c] : v.entries()) {
    if (i >= ambient_) return false;
    if (piv[i] >= 0) acc.add(basis_[piv[i]], -c);
  }
  return acc.take().empty();
}

bool Subspace::contains(const Subspace& o) const {
  if (o.dim() > dim()) return false;
  Echelon e(*field_, ambient_);
  for (const auto& b : basis_) e.add(b);
  for (const auto& v : o.basis_) {
    if (!e.reduce(v).empty()) return false;
  }
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  std::vector<SparseVec> all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return span(*field_, ambient_, all);
}

Subspace Subspace::annihilator() const {
  Echelon e(*field_, ambient_);
  for (const auto& b : basis_) e.add(b);
  return span(*field_, ambient_, e.kernel_basis());
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw MathError("subspaces in different ambient spaces");
  return (annihilator() + o.annihilator()).annihilator();
}

RrefResult rref(const Field& f, const SparseMat& m) {
  Echelon e(f, m.ncols());
  for (const auto& r : m.rows()) {
    e.add(r);
    if (e.full()) break;
  }
  auto rows = e.rref();
  RrefResult out{rows.size(), SparseMat(rows.size(), m.ncols())};
  for (std::size_t i = 0; i < rows.size(); ++i) out.reduced.row(i) = rows[i];
  return out;
}

std::size_t rank(const Field& f, const SparseMat& m) {
  Echelon e(f, m.ncols());
  for (const auto& r : m.rows()) {
    e.add(r);
    if (e.full()) break;
  }
  return e.rank();
}

Subspace kernel(const Field& f, const SparseMat& m) {
  Echelon e(f, m.ncols());
  for (const auto& r : m.rows()) {
    e.add(r);
    if (e.full()) break;
  }
  return Subspace::span(f, m.ncols(), e.kernel_basis());
}

Subspace row_space(const Field& f, const SparseMat& m) {
  return Subspace::span(f, m.ncols(), m.rows());
}

Subspace image(const Field& f, const SparseMat& m) {
  return Subspace::span(f, m.nrows(), m.columns());
}

std::optional<SparseVec> solve(const Field& f, const SparseMat& m, const SparseVec& b) {
  const std::size_t n = m.ncols();
  Echelon e(f, n + 1);
  for (std::size_t i = 0; i < m.nrows(); ++i) {
    std::vector<SparseVec::Entry> row = m.row(i).entries();
    Scalar bi = b.get(f, i);
    if (!bi.is_zero()) row.emplace_back(n, bi);
    if (!row.empty()) e.add(SparseVec(std::move(row)));
  }
  std::vector<SparseVec::Entry> x;
  for (const auto& r : e.rref()) {
    if (r.lead() == n) return std::nullopt;
    Scalar v = r.get(f, n);
    if (!v.is_zero()) x.emplace_back(r.lead(), v);
  }
  return SparseVec(std::move(x));
}

SparseVec random_vector(const Field& f, std::size_t n, std::mt19937_64& rng, double density, int range) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> val(-range, range);
  std::vector<SparseVec::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng) > density) continue;
    int v = 0;
    while (v == 0) v = val(rng);
    e.emplace_back(i, f.from_int(v));
  }
  return SparseVec(std::move(e));
}

SparseVec random_in(const Subspace& s, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> val(-range, range);
  SparseVec out;
  for (const auto& b : s.basis()) SparseVec::axpy(out, s.field().from_int(val(rng)), b);
  return out;
}

}  // namespace hopfkit
