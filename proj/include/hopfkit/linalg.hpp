#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hopfkit/scalar.hpp"

namespace hopfkit {

// Sparse vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries);  // any order, duplicates summed

  static SparseVec unit(const Field& f, std::size_t i) { return SparseVec({{i, f.one()}}); }

  const std::vector<Entry>& entries() const { return e_; }
  std::size_t nnz() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  Scalar get(const Field& f, std::size_t i) const;
  std::size_t lead() const { return e_.front().first; }

  SparseVec& operator+=(const SparseVec& o);
  SparseVec& operator-=(const SparseVec& o);
  SparseVec scaled(const Scalar& s) const;
  SparseVec operator-() const;
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

  // a += s * b
  static void axpy(SparseVec& a, const Scalar& s, const SparseVec& b);

 private:
  std::vector<Entry> e_;
};

// Dense scratch accumulator keyed by index, used to build sparse vectors.
class Accumulator {
 public:
  Accumulator() = default;
  explicit Accumulator(std::size_t dim) : buf_(dim), used_(dim, 0) {}
  void add(std::size_t i, const Scalar& s);
  void add(const SparseVec& v, const Scalar& s);
  SparseVec take();  // resets to empty
  std::size_t dim() const { return buf_.size(); }

 private:
  std::vector<Scalar> buf_;
  std::vector<char> used_;
  std::vector<std::size_t> touched_;
};

class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t nrows, std::size_t ncols) : nrows_(nrows), ncols_(ncols), rows_(nrows) {}
  static SparseMat from_columns(std::size_t nrows, const std::vector<SparseVec>& cols);

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  SparseVec& row(std::size_t i) { return rows_[i]; }
  const SparseVec& row(std::size_t i) const { return rows_[i]; }

  SparseVec apply(const SparseVec& v) const;
  // Vertical concatenation (same column count).
  static SparseMat stack(const std::vector<const SparseMat*>& blocks);
  std::vector<SparseVec> columns() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<SparseVec> rows_;
};

// Incremental row echelon form kept fully reduced: every stored row has
// pivot coefficient 1 and zero in all other pivot columns.
class Echelon {
 public:
  Echelon(const Field& f, std::size_t ncols);

  // Returns true if the row increased the rank.
  bool add(const SparseVec& row);
  // Remainder of v after reduction by the stored rows.
  SparseVec reduce(const SparseVec& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  bool full() const { return rows_.size() == ncols_; }
  // Canonical RREF rows ordered by pivot column.
  std::vector<SparseVec> rref() const;
  std::vector<std::size_t> pivots() const;
  // Basis of the null space of the stored rows: one vector per free column.
  std::vector<SparseVec> kernel_basis() const;
  const Field& field() const { return *field_; }

 private:
  const Field* field_;
  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::vector<std::ptrdiff_t> pivot_row_;  // column -> row index or -1
  mutable Accumulator acc_;
};

// Subspace of k^n represented by its canonical RREF basis.
class Subspace {
 public:
  Subspace(const Field& f, std::size_t ambient) : field_(&f), ambient_(ambient) {}
  static Subspace span(const Field& f, std::size_t ambient, const std::vector<SparseVec>& vecs);
  static Subspace whole(const Field& f, std::size_t ambient);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const Field& field() const { return *field_; }

  bool contains(const SparseVec& v) const;
  bool contains(const Subspace& o) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // {w : <w, v> = 0 for all v in this} under the coordinate pairing.
  Subspace annihilator() const;
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  const Field* field_;
  std::size_t ambient_;
  std::vector<SparseVec> basis_;
};

struct RrefResult {
  std::size_t rank = 0;
  SparseMat reduced;  // rank rows in canonical reduced row-echelon form
};
RrefResult rref(const Field& f, const SparseMat& m);
std::size_t rank(const Field& f, const SparseMat& m);
Subspace kernel(const Field& f, const SparseMat& m);
// Row space of the matrix, canonical RREF.
Subspace row_space(const Field& f, const SparseMat& m);
// Column space of the matrix.
Subspace image(const Field& f, const SparseMat& m);
// Solution of m x = b with all free coordinates zero, or nullopt if inconsistent.
std::optional<SparseVec> solve(const Field& f, const SparseMat& m, const SparseVec& b);

// Random vector with small integer coefficients, density in (0,1].
SparseVec random_vector(const Field& f, std::size_t n, std::mt19937_64& rng, double density = 1.0, int range = 3);
// Random element of a subspace: combination of its basis with small coefficients.
SparseVec random_in(const Subspace& s, std::mt19937_64& rng, int range = 3);

}  // namespace hopfkit
