#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfkit/linalg.hpp"

namespace hopfkit {

// Finite-dimensional Hopf algebra given by structure constants in a fixed basis.
// mult[i*d + j] is e_i e_j, comult[i] is Delta(e_i) in row-major H (x) H coordinates.
struct HopfData {
  const Field* field = nullptr;
  std::string name;
  std::size_t dim = 0;
  std::size_t unit = 0;
  std::vector<std::string> labels;
  // Generators: printable name and basis index.
  std::vector<std::string> gen_names;
  std::vector<std::size_t> gen_index;
  // Each basis element equals the ordered product of these generators (empty = unit).
  std::vector<std::vector<std::size_t>> words;
  std::vector<SparseVec> mult;
  std::vector<SparseVec> comult;
  std::vector<Scalar> counit;
  std::optional<std::vector<SparseVec>> antipode;

  const SparseVec& product(std::size_t i, std::size_t j) const { return mult[i * dim + j]; }
  std::optional<std::size_t> find_label(const std::string& l) const;
  std::optional<std::size_t> find_generator(const std::string& g) const;
  std::string word_text(std::size_t i) const;
};

using HopfPtr = std::shared_ptr<const HopfData>;

std::size_t ipow(std::size_t b, int e);

// Element of H^{(x) order}, order 1..4. Coordinates are row-major.
class Tensor {
 public:
  Tensor() = default;
  Tensor(HopfPtr h, int order);
  Tensor(HopfPtr h, int order, SparseVec coeffs);

  static Tensor basis(HopfPtr h, int order, std::size_t index);
  static Tensor one(HopfPtr h, int order);
  static Tensor scalar(HopfPtr h, int order, const Scalar& s);

  const HopfPtr& hopf() const { return h_; }
  const HopfData& data() const { return *h_; }
  int order() const { return order_; }
  const SparseVec& coeffs() const { return c_; }
  std::size_t space_dim() const { return ipow(h_->dim, order_); }
  bool is_zero() const { return c_.empty(); }
  const Field& field() const { return *h_->field; }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor operator-() const;
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Scalar& s, const Tensor& t);
  // Product in the algebra H^{(x) order}.
  friend Tensor operator*(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b);
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

 private:
  void check_compatible(const Tensor& o) const;
  HopfPtr h_;
  int order_ = 1;
  SparseVec c_;
};

using Elem = Tensor;
using Tensor2 = Tensor;
using Tensor3 = Tensor;

// a (x) b
Tensor outer(const Tensor& a, const Tensor& b);
Tensor outer(const Tensor& a, const Tensor& b, const Tensor& c);

enum class Leg { L12, L13, L23 };
// Embedding of a 2-tensor into H (x) H (x) H with the unit in the remaining slot.
Tensor3 leg(const Tensor2& t, Leg which);
// Swap the two factors.
Tensor2 flip(const Tensor2& t);
Tensor2 delta(const Elem& a);
// Delta applied at a given slot of a tensor (order increases by one).
Tensor delta_at(const Tensor& t, int slot);
inline Tensor3 delta_id(const Tensor2& t) { return delta_at(t, 0); }
inline Tensor3 id_delta(const Tensor2& t) { return delta_at(t, 1); }
// Counit applied at a slot (order decreases by one).
Tensor counit_at(const Tensor& t, int slot);
Scalar counit(const Elem& a);
// Antipode applied at a slot.
Tensor antipode_at(const Tensor& t, int slot);
Elem antipode(const Elem& a);
// Multiply the factors of a 2-tensor: m(a (x) b) = ab.
Elem multiply_legs(const Tensor2& t);

// Matrix (columns indexed by basis of H^{(x) k}) of left multiplication by t.
SparseMat left_mult_matrix(const Tensor& t);
SparseMat right_mult_matrix(const Tensor& t);

// Inverse of an element of H^{(x) k} by exact linear solve; nullopt if singular.
std::optional<Tensor> inverse(const Tensor& t);

struct VerificationReport {
  bool ok = true;
  std::map<std::string, bool> checks;
  std::vector<std::string> failures;
  void record(const std::string& name, bool pass, const std::string& detail = "");
  void merge(const VerificationReport& o, const std::string& prefix = "");
};

VerificationReport verify_bialgebra(const HopfPtr& h);
VerificationReport verify_hopf(const HopfPtr& h);

// Subspace of H (x) H commuting with Delta(a).
Subspace centralizer_of_coproduct(HopfPtr h, const Elem& a);

// Images of basis elements obtained by multiplying images of generators along each word.
std::vector<SparseVec> extend_multiplicatively(const HopfPtr& h, int order,
                                               const std::vector<Tensor>& gen_images);
// Anti-multiplicative extension (used for the antipode).
std::vector<SparseVec> extend_antimultiplicatively(const HopfPtr& h, const std::vector<Tensor>& gen_images);

// Basis decomposition of a multi-index.
std::vector<std::size_t> split_index(std::size_t idx, std::size_t d, int order);
std::size_t join_index(const std::vector<std::size_t>& parts, std::size_t d);

}  // namespace hopfkit
