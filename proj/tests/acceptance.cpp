// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <future>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hopfkit/expr.hpp"
#include "hopfkit/hochschild.hpp"
#include "hopfkit/precartier.hpp"
#include "hopfkit/quantize.hpp"
#include "hopfkit/report.hpp"

using namespace hopfkit;

namespace {

using Matrix = std::vector<std::vector<long>>;

struct Log {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

HopfPtr make(const std::string& spec, const std::vector<RSpec>& rs = {}, const std::string& field = "") {
  FamilySpec fam = FamilySpec::parse(spec);
  return build(fam, choose_field(fam, rs, field));
}

Tensor2 make_r(const HopfPtr& h, const std::string& spec, const RSpec& r) {
  return build_r(h, FamilySpec::parse(spec), r);
}

Matrix zero(unsigned n) { return Matrix(n, std::vector<long>(n, 0)); }
Matrix identity(unsigned n) {
  Matrix a = zero(n);
  for (unsigned i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}
Matrix random_matrix(unsigned n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  Matrix a = zero(n);
  for (auto& row : a)
    for (auto& v : row) v = d(rng);
  return a;
}
Matrix symmetrized(Matrix a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) a[i][j] = a[j][i];
  return a;
}
Matrix antisymmetric(unsigned n, std::mt19937_64& rng) {
  Matrix a = random_matrix(n, rng);
  for (unsigned i = 0; i < n; ++i) {
    a[i][i] = 0;
    for (unsigned j = 0; j < i; ++j) a[i][j] = -a[j][i];
  }
  if (n >= 2 && a[0][1] == 0) a[0][1] = 1, a[1][0] = -1;
  return a;
}
bool is_symmetric(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != a[j][i]) return false;
  return true;
}

// Sample of A matrices used for E(n): 0, I, random, antisymmetric.
std::vector<Matrix> en_sample(unsigned n, std::mt19937_64& rng) {
  std::vector<Matrix> out{zero(n), identity(n), random_matrix(n, rng)};
  if (n >= 2) out.push_back(antisymmetric(n, rng));
  return out;
}

std::string en(unsigned n) { return "en:" + std::to_string(n); }
std::string ac(unsigned n) { return "ac2n:" + std::to_string(n); }

const std::vector<std::string> kHopfFamilies = {"en:1",        "en:2",        "en:3",        "en:4",   "ac2n:2",
                                                 "ac2n:3",      "ac2n:4",      "h8",          "h2n2:2", "h2n2:3",
                                                 "radford:2,2", "radford:2,3", "radford:3,2", "ac4dual", "group:2",
                                                 "group:2,2,2"};

// Criterion 1.
void construction(Log& log) {
  for (const auto& s : kHopfFamilies) {
    auto r = verify_hopf(make(s));
    log.check(r.ok, s + " verify_hopf" + (r.failures.empty() ? "" : ": " + r.failures.front()));
  }
}

// Criterion 2.
void quasitriangularity(Log& log) {
  std::mt19937_64 rng(2024);
  for (unsigned n = 1; n <= 3; ++n) {
    auto h = make(en(n));
    for (const auto& a : en_sample(n, rng)) {
      auto r = make_r(h, en(n), RSpec::en_a(a));
      log.check(verify_qtr(h, r).ok, en(n) + " R_A " + RSpec::en_a(a).to_string());
    }
    // Six matrices: three symmetric, three not.
    for (int t = 0; t < 6; ++t) {
      Matrix a = random_matrix(n, rng);
      if (t < 3) a = symmetrized(a);
      else if (n == 1) a = {{static_cast<long>(t)}};
      else if (is_symmetric(a)) a[0][1] += 1;
      auto r = make_r(h, en(n), RSpec::en_a(a));
      log.check(is_triangular(h, r) == is_symmetric(a), en(n) + " triangular iff symmetric for " +
                                                             RSpec::en_a(a).to_string());
    }
  }
  auto a2 = make("ac2n:2");
  for (const char* rs : {"ac22:q=0,a=1", "ac22:q=0,a=-2/3", "ac22:q=1,a=1", "ac22:q=1,a=5"})
    log.check(verify_qtr(a2, make_r(a2, "ac2n:2", RSpec::parse(rs))).ok, std::string("ac2n:2 ") + rs);
  auto h8 = make("h8", {RSpec::parse("h8omega:z8")});
  for (const auto& rs : registered_rspecs(FamilySpec::parse("h8")))
    log.check(verify_qtr(h8, make_r(h8, "h8", rs)).ok, "h8 " + rs.to_string());
  log.check(registered_rspecs(FamilySpec::parse("h8")).size() == 8, "h8 has 8 registered R");
  auto d = make("ac4dual");
  log.check(verify_qtr(d, make_r(d, "ac4dual", RSpec::parse("ac4dual"))).ok, "ac4dual R");
}

// Chi-space checks shared by criteria 3 and 6.
struct ChiCase {
  std::string family;
  RSpec r;
};

// Criterion 3 (and the counit part of 6 via `outputs`).
void classification(Log& log, std::vector<std::pair<HopfPtr, Tensor2>>& outputs) {
  std::mt19937_64 rng(77);
  auto record = [&](const HopfPtr& h, const Subspace& s) {
    for (const auto& t : as_tensors(h, s)) outputs.emplace_back(h, t);
  };
  for (unsigned n = 1; n <= 4; ++n) {
    auto h = make(en(n));
    const Subspace span = en_chi_span(h, n);
    std::vector<Matrix> as{zero(n), identity(n), random_matrix(n, rng)};
    if (n == 4) as.resize(1);
    for (const auto& a : as) {
      auto r = make_r(h, en(n), RSpec::en_a(a));
      Subspace chi = solve_infinitesimal(h, r);
      log.check(chi.dim() == n * n, en(n) + " precartier dim " + std::to_string(chi.dim()));
      log.check(chi == span, en(n) + " chi-space equals span{g x_p (x) x_q}");
      record(h, chi);
    }
  }
  auto a2 = make("ac2n:2");
  const Subspace xg = Subspace::span(*a2->field, 64, {parse_tensor(a2, "x (x) x*g", 2).coeffs()});
  for (const char* rs : {"ac22:q=0,a=1", "ac22:q=0,a=3", "ac22:q=1,a=1", "ac22:q=1,a=-1/2"}) {
    Subspace chi = solve_infinitesimal(a2, make_r(a2, "ac2n:2", RSpec::parse(rs)));
    log.check(chi == xg, std::string("ac2n:2 ") + rs + " chi-space is span{x (x) x*g}");
    record(a2, chi);
  }
  auto h8 = make("h8", {RSpec::parse("h8omega:z8")});
  for (const auto& rs : registered_rspecs(FamilySpec::parse("h8"))) {
    Subspace chi = solve_infinitesimal(h8, make_r(h8, "h8", rs));
    log.check(chi.dim() == 0, "h8 " + rs.to_string() + " precartier 0");
  }
  auto h18 = make("h2n2:3");
  auto rs18 = enumerate_group_rmatrices(h18, 3);
  log.check(!rs18.empty(), "h2n2:3 has enumerated R");
  for (const auto& e : rs18) log.check(solve_infinitesimal(h18, e.r).dim() == 0, "h2n2:3 bichar precartier 0");
  for (const char* s : {"radford:2,2", "radford:2,3", "radford:3,2"})
    log.check(solve_rfree(make(s)).dim() == 0, std::string(s) + " R-free bound 0");
  auto d = make("ac4dual");
  log.check(solve_infinitesimal(d, make_r(d, "ac4dual", RSpec::parse("ac4dual"))).dim() == 0, "ac4dual precartier 0");
}

// Criterion 4.
void cartier(Log& log) {
  for (unsigned n = 1; n <= 3; ++n) {
    auto h = make(en(n));
    auto r = make_r(h, en(n), RSpec::en_a(identity(n)));
    Subspace chi = solve_infinitesimal(h, r);
    std::vector<SparseVec> anti;
    for (unsigned p = 1; p <= n; ++p)
      for (unsigned q = p + 1; q <= n; ++q)
        anti.push_back(parse_tensor(h, "g*x" + std::to_string(p) + " (x) x" + std::to_string(q) + " - g*x" +
                                           std::to_string(q) + " (x) x" + std::to_string(p),
                                    2)
                           .coeffs());
    Subspace cart = cartier_subspace(h, r, chi);
    log.check(cart.dim() == n * (n - 1) / 2, en(n) + " cartier dim " + std::to_string(cart.dim()));
    log.check(cart == Subspace::span(*h->field, h->dim * h->dim, anti), en(n) + " cartier = antisymmetric Gamma");
    log.check(cartier_coboundary_check(h, r, chi), en(n) + " cartier iff coboundary");
  }
  auto a2 = make("ac2n:2");
  for (const char* rs : {"ac22:q=0,a=1", "ac22:q=1,a=1"}) {
    auto r = make_r(a2, "ac2n:2", RSpec::parse(rs));
    log.check(cartier_subspace(a2, r, solve_infinitesimal(a2, r)).dim() == 0, std::string("ac2n:2 cartier 0 ") + rs);
  }
}

// Criterion 5.
void cohomology(Log& log) {
  for (unsigned n = 1; n <= 4; ++n) {
    auto h = make(en(n));
    auto d = en_z2_decomposition(h, n);
    log.check(static_cast<std::size_t>(h_dim(h, 2)) == n * (n + 1) / 2, en(n) + " dim H^2");
    log.check(d.report.ok, en(n) + " Z^2 = B^2 (+) I");
    log.check(d.b2 == (std::size_t{1} << (n + 1)), en(n) + " dim B^2");
    log.check(d.z2 == d.b2 + d.i_dim && d.intersection == 0, en(n) + " direct sum");
  }
  auto h8 = make("h8");
  log.check(cocycles(h8, 2) == coboundaries(h8, 2), "h8 Z^2 = B^2");
  log.check(h_dim(h8, 2) == 0, "h8 dim H^2 = 0");
  for (const auto& s : kHopfFamilies) {
    auto h = make(s);
    Subspace z1 = cocycles(h, 1);
    bool primitive = true;
    for (const auto& v : z1.basis()) {
      Elem x(h, 1, v);
      primitive = primitive && delta(x) == outer(x, Tensor::one(h, 1)) + outer(Tensor::one(h, 1), x);
    }
    log.check(z1.dim() == 0 && primitive, s + " dim Z^1 = dim P(H) = 0");
  }
}

// Criterion 6.
void identities(Log& log, const std::vector<std::pair<HopfPtr, Tensor2>>& outputs) {
  auto h8 = make("h8", {RSpec::parse("h8omega:z8")});
  for (const auto& w : h8->field->primitive_roots(8)) {
    auto rep = conjugation_identities_h8(h8, w);
    log.check(rep.ok, "h8 conjugation identities" + (rep.failures.empty() ? "" : ": " + rep.failures.front()));
  }
  std::mt19937_64 rng(6);
  for (unsigned n = 1; n <= 3; ++n) {
    auto h = make(en(n));
    for (const auto& a : en_sample(n, rng)) {
      auto rep = rswap_identities_en(h, make_r(h, en(n), RSpec::en_a(a)));
      log.check(rep.ok, en(n) + " Rswap identities " + RSpec::en_a(a).to_string());
    }
  }
  for (const auto& [h, chi] : outputs) log.check(counits_vanish(chi), h->name + " counit conditions on solver output");
  // QYB for every R verified in criterion 2.
  for (unsigned n = 1; n <= 3; ++n) {
    auto h = make(en(n));
    for (const auto& a : en_sample(n, rng)) log.check(qyb_holds(make_r(h, en(n), RSpec::en_a(a))), en(n) + " QYB");
  }
  for (const auto& [s, rs] : std::vector<std::pair<std::string, std::vector<RSpec>>>{
           {"ac2n:2", registered_rspecs(FamilySpec::parse("ac2n:2"))},
           {"h8", registered_rspecs(FamilySpec::parse("h8"))},
           {"ac4dual", {RSpec::parse("ac4dual")}}}) {
    auto h = make(s, rs);
    for (const auto& r : rs) log.check(qyb_holds(make_r(h, s, r)), s + " QYB " + r.to_string());
  }
}

// Criterion 7.
void quantization(Log& log) {
  std::mt19937_64 rng(7);
  auto run = [&](const HopfPtr& h, const Tensor2& r, const Tensor2& chi, const std::string& what) {
    auto rep = verify_quantized_qtr(h, r, chi);
    log.check(rep.hypotheses.both(), what + " hypotheses");
    log.check(rep.verification.ok, what + " quantized axioms" +
                                       (rep.verification.failures.empty() ? "" : ": " + rep.verification.failures.front()));
    log.check(rep.first_order_recovers_chi, what + " first-order coefficient");
    log.check(rep.ok(), what);
  };
  for (unsigned n : {2u, 3u}) {
    auto h = make(ac(n));
    for (const char* rs : {"ac22:q=0,a=1", "ac22:q=1,a=2"})
      for (const char* alpha : {"1", "-5/3"})
        run(h, make_r(h, ac(n), RSpec::parse(rs)), parse_tensor(h, std::string(alpha) + "*(x (x) x*g)", 2),
            ac(n) + " " + rs + " alpha=" + alpha);
  }
  for (unsigned n = 1; n <= 2; ++n) {
    auto h = make(en(n));
    for (const auto& a : en_sample(n, rng)) {
      auto r = make_r(h, en(n), RSpec::en_a(a));
      Subspace chi = solve_infinitesimal(h, r);
      for (const auto& t : as_tensors(h, chi)) run(h, r, t, en(n) + " basis chi " + format_tensor(t));
      for (int k = 0; k < 3; ++k) run(h, r, Tensor2(h, 2, random_in(chi, rng)), en(n) + " random chi");
    }
  }
}

// Criterion 8.
void oracles(Log& log) {
  struct Case {
    std::string family;
    std::optional<RSpec> r;
  };
  const std::vector<Case> cases = {
      {"en:1", RSpec::en_a({{3}})},
      {"en:2", RSpec::en_a({{1, 2}, {-1, 0}})},
      {"en:3", RSpec::en_a({{1, 0, 2}, {0, 1, 0}, {-1, 0, 1}})},
      {"ac2n:2", RSpec::parse("ac22:q=0,a=1")},
      {"ac2n:2", RSpec::parse("ac22:q=1,a=-2")},
      {"h8", RSpec::parse("h8pm:-1,+1")},
      {"h8", RSpec::parse("h8omega:z8^3")},
      {"h2n2:2", RSpec::bichar(enumerate_group_rmatrices(make("h2n2:2"), 2).front().matrix)},
      {"ac4dual", RSpec::parse("ac4dual")},
      {"radford:2,2", std::nullopt},
      {"group:2,2", RSpec::parse("trivial")},
  };
  // One independent task per (family, block tag), each with its own seed.
  struct Job {
    std::string what;
    std::future<bool> agree;
  };
  std::vector<Job> jobs;
  std::uint64_t seed = 8;
  for (const auto& c : cases) {
    auto h = c.r ? make(c.family, {*c.r}) : make(c.family);
    std::optional<Tensor2> r;
    if (c.r) r = make_r(h, c.family, *c.r);
    auto sys = std::make_shared<const ChiSystem>(build_system(h, r));
    for (const auto& [tag, m] : sys->blocks) {
      jobs.push_back({c.family + " block " + tag + " matrix = direct evaluation on 100 tensors",
                      std::async(std::launch::async, [sys, h, r, tag = tag, &m = m, s = seed++] {
                        std::mt19937_64 rng(s);
                        bool agree = true;
                        for (int t = 0; t < 100; ++t) {
                          Tensor2 chi(h, 2, random_vector(*h->field, h->dim * h->dim, rng, t < 50 ? 0.05 : 0.5));
                          agree = agree && m.apply(chi.coeffs()) == block_residual(h, r, tag, chi);
                        }
                        return agree;
                      })});
    }
  }
  for (auto& j : jobs) log.check(j.agree.get(), j.what);
  const ExpectedTable table = default_expected_table();
  auto prime = [&](const std::string& spec, const RSpec& rs, const std::map<std::string, long>& want) {
    FamilySpec fam = FamilySpec::parse(spec);
    const Field& f = choose_field(fam, {rs}, "prime:97");
    auto rep = classify(fam, rs, f, table);
    log.check(rep.ok(), spec + " " + rs.to_string() + " over " + f.name() + " matches the table");
    for (const auto& [k, v] : want) {
      auto it = rep.dims.find(k);
      log.check(it != rep.dims.end() && it->second == v,
                spec + " " + rs.to_string() + " over " + f.name() + " dim " + k + " = " + std::to_string(v));
    }
  };
  prime("en:2", RSpec::en_a({{1, 0}, {0, 1}}), {{"precartier", 4}, {"cartier", 1}, {"h2", 3}, {"b2", 8}, {"z2", 11}, {"z1", 0}});
  for (const auto& rs : registered_rspecs(FamilySpec::parse("h8")))
    prime("h8", rs, {{"precartier", 0}, {"cartier", 0}, {"h2", 0}, {"z1", 0}});
  prime("radford:2,2", RSpec::parse("none"), {{"rfree", 0}, {"z1", 0}});
  {
    auto h8 = build(FamilySpec::parse("h8"), Field::prime(97, 8));
    log.check(cocycles(h8, 2) == coboundaries(h8, 2), "h8 over F_97 Z^2 = B^2");
    auto e2 = build(FamilySpec::parse("en:2"), Field::prime(97, 2));
    log.check(en_z2_decomposition(e2, 2).report.ok, "en:2 over F_97 Z^2 = B^2 (+) I");
  }
}

// Criterion 9.
void partial(Log& log) {
  const ExpectedTable table = default_expected_table();
  for (unsigned n : {3u, 4u}) {
    FamilySpec fam = FamilySpec::parse(ac(n));
    for (const auto& rs : registered_rspecs(fam)) {
      auto h = build(fam, choose_field(fam, {rs}, ""));
      auto rep = classify(fam, h, rs, table, ClassifyOptions{false, false});
      std::vector<SparseVec> vs;
      for (const auto& b : rep.basis) vs.push_back(parse_tensor(h, b, 2).coeffs());
      Subspace s = Subspace::span(*h->field, h->dim * h->dim, vs);
      log.check(s.contains(parse_tensor(h, "x (x) x*g", 2).coeffs()), ac(n) + " " + rs.to_string() + " basis contains x (x) x*g");
      log.check(rep.flags["paper_partial"], ac(n) + " " + rs.to_string() + " flagged partial");
      log.check(rep.ok(), ac(n) + " " + rs.to_string() + " report ok");
    }
  }
}

}  // namespace

int main() {
  std::vector<std::pair<HopfPtr, Tensor2>> outputs;
  const std::vector<std::pair<std::string, std::function<void(Log&)>>> criteria = {
      {"construction suite", construction},
      {"quasitriangularity suite", quasitriangularity},
      {"chi-classification dimensions", [&](Log& l) { classification(l, outputs); }},
      {"Cartier subspaces", cartier},
      {"cohomology", cohomology},
      {"identity suites", [&](Log& l) { identities(l, outputs); }},
      {"quantization", quantization},
      {"oracle equivalences", oracles},
      {"partial-result handling", partial},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Log log;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(log);
    } catch (const std::exception& e) {
      log.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = log.failures.empty() && log.checks > 0;
    all = all && ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " " << criteria[i].first << " (" << log.checks
         << " checks, " << secs << " s)";
    std::cout << line.str() << std::endl;
    for (const auto& f : log.failures) std::cout << "    failed: " << f << std::endl;
  }
  return all ? 0 : 1;
}
