#include "hopfkit/report.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hopfkit/expr.hpp"
#include "hopfkit/hochschild.hpp"
#include "hopfkit/precartier.hpp"

namespace hopfkit {

namespace {

const std::vector<std::string> kDimKeys = {"precartier", "cartier", "z2", "b2", "h2", "rfree", "z1"};

Json params_of(const FamilySpec& fam) {
  Json p = Json::object();
  switch (fam.kind) {
    case FamilyKind::En:
    case FamilyKind::AC2n:
    case FamilyKind::H2n2:
      p["n"] = fam.n;
      break;
    case FamilyKind::H8:
    case FamilyKind::AC4Dual:
      break;
    case FamilyKind::Radford:
      p["r"] = fam.r;
      p["n"] = fam.n;
      break;
    case FamilyKind::Group:
      p["orders"] = fam.orders;
      break;
    case FamilyKind::Tensor:
      p["factors"] = Json::array({fam.factors[0].to_string(), fam.factors[1].to_string()});
      break;
  }
  return p;
}

std::string family_name(const FamilySpec& fam) {
  const std::string s = fam.to_string();
  return s.substr(0, s.find_first_of(":("));
}

}  // namespace

const Field& select_field(unsigned order, const std::string& text);

std::string rkind_name(RKind k) {
  switch (k) {
    case RKind::EnA: return "en-a";
    case RKind::AC22: return "ac22";
    case RKind::H8pm: return "h8pm";
    case RKind::H8omega: return "h8omega";
    case RKind::AC4Dual: return "ac4dual";
    case RKind::Bichar: return "bichar";
    case RKind::Trivial: return "trivial";
    case RKind::Explicit: return "explicit";
    case RKind::None: return "none";
  }
  return "";
}

const Field& choose_field(const FamilySpec& fam, const std::vector<RSpec>& rs, const std::string& text) {
  unsigned order = fam.required_order();
  for (const auto& r : rs) order = std::lcm(order, r.required_order());
  const Field& f = select_field(order, text);
  for (unsigned p : fam.required_units()) {
    if (f.characteristic() == p) throw ConfigError("family needs characteristic different from " + std::to_string(p));
  }
  return f;
}

const Field& select_field(unsigned order, const std::string& text) {
  if (text.empty()) return Field::cyclotomic(order);
  if (text.rfind("prime:", 0) == 0 && std::count(text.begin(), text.end(), ':') == 1) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(text.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("bad field spec '" + text + "'");
    }
    if (!is_prime_u64(p)) throw ConfigError(std::to_string(p) + " is not prime");
    if ((p - 1) % order != 0)
      throw ConfigError("prime " + std::to_string(p) + " has no primitive root of order " + std::to_string(order));
    return Field::prime(p, order);
  }
  const Field* f = nullptr;
  try {
    f = &Field::parse(text);
  } catch (const MathError& e) {
    throw ConfigError(e.what());
  }
  if (!f->has_root(order))
    throw ConfigError("field " + f->name() + " lacks a primitive root of order " + std::to_string(order));
  return *f;
}

std::vector<RSpec> enumerate_rspecs(const FamilySpec& fam, const HopfPtr& h) {
  if (fam.kind == FamilyKind::H2n2) {
    std::vector<RSpec> out;
    for (const auto& e : enumerate_group_rmatrices(h, fam.n)) out.push_back(RSpec::bichar(e.matrix));
    return out;
  }
  return registered_rspecs(fam);
}

ExpectedTable default_expected_table() {
  ExpectedTable t;
  for (unsigned n = 1; n <= 4; ++n) {
    const long sq = n * n, anti = n * (n - 1) / 2, sym = n * (n + 1) / 2, b2 = 2L << n;
    std::vector<std::string> span;
    for (unsigned p = 1; p <= n; ++p)
      for (unsigned q = 1; q <= n; ++q) span.push_back("g*x" + std::to_string(p) + " (x) x" + std::to_string(q));
    const std::string fam = "en:" + std::to_string(n);
    t.push_back({fam, "en-a",
                 {{"precartier", sq}, {"cartier", anti}, {"z2", b2 + sym}, {"b2", b2}, {"h2", sym}, {"z1", 0}},
                 span, false,
                 "E(n): chi-space spanned by g x_p (x) x_q for every R_A (dim n^2); Cartier iff Gamma antisymmetric "
                 "(dim n(n-1)/2); Z^2 = B^2 (+) I with dim B^2 = 2^(n+1), dim H^2 = n(n+1)/2; P(E(n)) = 0"});
    t.push_back({fam, "none", {{"z2", b2 + sym}, {"b2", b2}, {"h2", sym}, {"z1", 0}}, {}, false,
                 "E(n): dim H^2 = n(n+1)/2, dim B^2 = 2^(n+1), P(E(n)) = 0"});
  }
  t.push_back({"ac2n:2", "ac22", {{"precartier", 1}, {"cartier", 0}, {"z1", 0}}, {"x (x) x*g"}, false,
               "A_{C2xC2}: chi = alpha x (x) xg for both R families; Cartier only for alpha = 0"});
  for (unsigned n = 3; n <= 4; ++n) {
    t.push_back({"ac2n:" + std::to_string(n), "ac22", {{"z1", 0}}, {"x (x) x*g"}, true,
                 "A_{C2^n}, n >= 3: x (x) xg is an infinitesimal R-matrix for R_a; the full classification is "
                 "only partial, so the dimension is reported, not asserted"});
  }
  for (const char* r : {"h8pm", "h8omega", "bichar"}) {
    t.push_back({"h8", r, {{"precartier", 0}, {"cartier", 0}, {"h2", 0}, {"z1", 0}}, {}, false,
                 "H8: no non-trivial infinitesimal R-matrices; Z^2(H8) = B^2(H8), H^2(H8) = 0"});
  }
  t.push_back({"h8", "none", {{"h2", 0}, {"z1", 0}}, {}, false, "H8: H^2(H8) = 0"});
  for (unsigned n = 3; n <= 4; ++n) {
    t.push_back({"h2n2:" + std::to_string(n), "bichar", {{"precartier", 0}, {"cartier", 0}, {"z1", 0}}, {}, false,
                 "H_{2n^2}, n >= 3: no non-trivial infinitesimal R-matrices for any R; the R-matrices are taken "
                 "to be the group-supported bicharacter ones (external classification assumed complete)"});
  }
  for (auto [r, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    t.push_back({"radford:" + std::to_string(r) + "," + std::to_string(n), "none", {{"rfree", 0}, {"z1", 0}}, {},
                 false, "Radford H_(r,n,q), r >= 2: only the trivial infinitesimal R-matrix, shown R-free"});
  }
  t.push_back({"ac4dual", "ac4dual", {{"precartier", 0}, {"cartier", 0}, {"z1", 0}}, {}, false,
               "(A''_{C4})*: unique R, no non-trivial infinitesimal R-matrices"});
  for (const char* g : {"group:2", "group:2,2", "group:2,2,2"}) {
    t.push_back({g, "trivial", {{"precartier", 0}, {"cartier", 0}, {"z1", 0}}, {}, false,
                 "Group algebras: only the trivial infinitesimal R-matrix"});
  }
  return t;
}

Json expected_table_to_json(const ExpectedTable& t) {
  Json arr = Json::array();
  for (const auto& e : t) {
    Json j;
    j["family"] = e.family;
    j["r"] = e.r;
    j["dims"] = Json::object();
    for (const auto& [k, v] : e.dims) j["dims"][k] = v;
    j["contains"] = e.contains;
    j["partial"] = e.partial;
    j["statement"] = e.statement;
    arr.push_back(j);
  }
  return arr;
}

ExpectedTable expected_table_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected-dims table must be a JSON array");
  ExpectedTable t;
  try {
    for (const auto& e : j) {
      Expectation x;
      x.family = e.at("family").get<std::string>();
      x.r = e.value("r", std::string("*"));
      if (e.contains("dims"))
        for (const auto& [k, v] : e.at("dims").items()) x.dims[k] = v.get<long>();
      x.contains = e.value("contains", std::vector<std::string>{});
      x.partial = e.value("partial", false);
      x.statement = e.value("statement", std::string());
      t.push_back(x);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("bad expected-dims table: ") + ex.what());
  }
  return t;
}

std::optional<Expectation> lookup_expectation(const ExpectedTable& t, const FamilySpec& fam, const RSpec& r) {
  const std::string f = fam.to_string(), k = rkind_name(r.kind);
  for (const auto& e : t) {
    if (e.family == f && (e.r == k || (e.r == "*" && r.kind != RKind::None))) return e;
  }
  return std::nullopt;
}

ClassificationReport classify(const FamilySpec& fam, const RSpec& rspec, const Field& f, const ExpectedTable& table,
                              const ClassifyOptions& opt) {
  return classify(fam, build(fam, f), rspec, table, opt);
}

ClassificationReport classify(const FamilySpec& fam, const HopfPtr& h, const RSpec& rspec, const ExpectedTable& table,
                              const ClassifyOptions& opt) {
  const Field& f = *h->field;
  ClassificationReport rep;
  rep.family = family_name(fam);
  rep.params = params_of(fam);
  rep.field = f.name();
  rep.r = rspec.to_string();
  for (const auto& k : kDimKeys) rep.dims[k] = std::nullopt;

  VerificationReport hv = verify_hopf(h);
  rep.flags["hopf_verified"] = hv.ok;
  for (const auto& m : hv.failures) rep.failures.push_back("hopf: " + m);

  std::optional<Subspace> chi;
  std::optional<Subspace> b2;
  if (rspec.kind != RKind::None) {
    Tensor2 r = build_r(h, fam, rspec);
    VerificationReport qv = verify_qtr(h, r);
    rep.flags["qtr_verified"] = qv.ok;
    for (const auto& m : qv.failures) rep.failures.push_back("qtr: " + m);
    if (qv.ok) {
      chi = solve_infinitesimal(h, r);
      Subspace cart = cartier_subspace(h, r, *chi);
      rep.dims["precartier"] = static_cast<long>(chi->dim());
      rep.dims["cartier"] = static_cast<long>(cart.dim());
      for (const auto& t : as_tensors(h, *chi)) rep.basis.push_back(format_tensor(t));
      for (const auto& t : as_tensors(h, cart)) rep.cartier_basis.push_back(format_tensor(t));
      bool counit = true, direct = true;
      for (const auto& t : as_tensors(h, *chi)) {
        counit = counit && counits_vanish(t);
        direct = direct && is_infinitesimal(h, r, t);
      }
      rep.flags["counit_auto_satisfied"] = counit;
      rep.flags["basis_rechecked_directly"] = direct;
      if (!counit) rep.failures.push_back("counit conditions fail on the chi-space");
      if (!direct) rep.failures.push_back("direct evaluation rejects a chi-space basis vector");
      if (opt.cohomology) {
        b2 = coboundaries(h, 2);
        rep.flags["cartier_equals_coboundary_cut"] = cart == chi->intersect(*b2);
      }
    }
  }
  if (opt.rfree) {
    Subspace rf = solve_rfree(h);
    rep.dims["rfree"] = static_cast<long>(rf.dim());
    if (chi) {
      rep.flags["chi_within_rfree"] = rf.contains(*chi);
      if (!rep.flags["chi_within_rfree"]) rep.failures.push_back("chi-space exceeds the R-free bound");
    }
    if (rspec.kind == RKind::None) {
      for (const auto& t : as_tensors(h, rf)) rep.basis.push_back(format_tensor(t));
    }
  }
  if (opt.cohomology) {
    Subspace z2 = cocycles(h, 2);
    if (!b2) b2 = coboundaries(h, 2);
    rep.dims["z2"] = static_cast<long>(z2.dim());
    rep.dims["b2"] = static_cast<long>(b2->dim());
    rep.dims["h2"] = static_cast<long>(z2.dim() - b2->dim());
    rep.dims["z1"] = static_cast<long>(cocycles(h, 1).dim());
    rep.flags["z2_equals_b2"] = z2 == *b2;
    if (!z2.contains(*b2)) rep.failures.push_back("B^2 is not contained in Z^2");
    if (chi) {
      rep.flags["chi_within_z2"] = z2.contains(*chi);
      if (!rep.flags["chi_within_z2"]) rep.failures.push_back("an infinitesimal R-matrix is not a 2-cocycle");
    }
  }
  if (fam.kind == FamilyKind::H2n2 && fam.n >= 3) rep.flags["assumes_r_classification_complete"] = true;

  rep.expected = lookup_expectation(table, fam, rspec);
  rep.flags["paper_partial"] = rep.expected && rep.expected->partial;
  if (rep.expected) {
    const Expectation& e = *rep.expected;
    if (!e.partial) {
      for (const auto& [k, v] : e.dims) {
        auto it = rep.dims.find(k);
        if (it == rep.dims.end() || !it->second) continue;
        if (*it->second != v)
          rep.mismatches.push_back(k + ": expected " + std::to_string(v) + ", computed " + std::to_string(*it->second));
      }
    }
    for (const auto& c : e.contains) {
      if (!chi) continue;
      Tensor2 t = parse_tensor(h, c, 2);
      if (!chi->contains(t.coeffs())) rep.mismatches.push_back("chi-space does not contain " + c);
    }
  }
  rep.flags["matches_paper_theorem"] = rep.mismatches.empty();
  return rep;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["family"] = r.family;
  j["params"] = r.params;
  j["field"] = r.field;
  j["r"] = r.r;
  Json dims = Json::object();
  for (const auto& k : kDimKeys) {
    auto it = r.dims.find(k);
    dims[k] = it != r.dims.end() && it->second ? Json(*it->second) : Json(nullptr);
  }
  j["dims"] = dims;
  j["basis"] = r.basis;
  j["cartier_basis"] = r.cartier_basis;
  Json flags = Json::object();
  for (const auto& [k, v] : r.flags) flags[k] = v;
  j["flags"] = flags;
  if (r.expected) {
    Json e;
    e["dims"] = Json::object();
    for (const auto& [k, v] : r.expected->dims) e["dims"][k] = v;
    e["contains"] = r.expected->contains;
    e["partial"] = r.expected->partial;
    e["statement"] = r.expected->statement;
    j["expected"] = e;
  } else {
    j["expected"] = nullptr;
  }
  j["mismatches"] = r.mismatches;
  j["failures"] = r.failures;
  return j;
}

std::string to_table(const std::vector<ClassificationReport>& rs) {
  std::ostringstream os;
  auto cell = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("-"); };
  os << "family\tparams\tr\tprecartier\tcartier\trfree\tz2\tb2\th2\tmatches\n";
  for (const auto& r : rs) {
    os << r.family << '\t' << r.params.dump() << '\t' << r.r << '\t' << cell(r.dims.at("precartier")) << '\t'
       << cell(r.dims.at("cartier")) << '\t' << cell(r.dims.at("rfree")) << '\t' << cell(r.dims.at("z2")) << '\t'
       << cell(r.dims.at("b2")) << '\t' << cell(r.dims.at("h2")) << '\t' << (r.ok() ? "yes" : "NO") << '\n';
  }
  return os.str();
}

}  // namespace hopfkit
