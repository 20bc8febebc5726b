#include <fstream>
#include <future>
#include <iostream>

#include "CLI11.hpp"
#include "hopfkit/expr.hpp"
#include "hopfkit/hochschild.hpp"
#include "hopfkit/precartier.hpp"
#include "hopfkit/quantize.hpp"
#include "hopfkit/report.hpp"

using namespace hopfkit;

namespace {

struct Options {
  std::string family;
  std::string r = "none";
  std::string field;
  std::string out;
  std::string format = "json";
  std::string expected;
  std::string chi;
  std::string config;
  bool no_cohomology = false;
};

struct Outcome {
  Json json;
  std::string table;
  bool ok = true;
  std::vector<std::string> diffs;
};

std::vector<RSpec> rspecs_for(const FamilySpec& fam, const std::string& text, const HopfPtr& h) {
  if (text == "enumerate") return enumerate_rspecs(fam, h);
  return {RSpec::parse(text)};
}

// Field large enough for the family and the named R (enumerated R-matrices of a family share its needs).
const Field& field_for(const FamilySpec& fam, const Options& o) {
  std::vector<RSpec> rs;
  if (o.r == "enumerate") {
    if (fam.kind != FamilyKind::H2n2) rs = registered_rspecs(fam);
  } else {
    rs.push_back(RSpec::parse(o.r));
  }
  return choose_field(fam, rs, o.field);
}

ExpectedTable load_table(const std::string& path) {
  if (path.empty()) return default_expected_table();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read expected-dims table " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad expected-dims table: ") + e.what());
  }
  return expected_table_from_json(j);
}

Json report_json(const VerificationReport& v) {
  Json j;
  j["ok"] = v.ok;
  Json checks = Json::object();
  for (const auto& [k, ok] : v.checks) checks[k] = ok;
  j["checks"] = checks;
  j["failures"] = v.failures;
  return j;
}

std::string table_of(const Json& j) {
  std::ostringstream os;
  if (j.is_array()) {
    for (const auto& e : j) os << table_of(e) << '\n';
    return os.str();
  }
  for (const auto& [k, v] : j.items()) os << k << '\t' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return os.str();
}

Outcome run_build(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  const Field& f = field_for(fam, o);
  HopfPtr h = build(fam, f);
  Json j;
  j["family"] = fam.to_string();
  j["field"] = f.name();
  j["dim"] = h->dim;
  j["generators"] = h->gen_names;
  j["basis"] = h->labels;
  Json mult = Json::object(), comult = Json::object(), counit = Json::object(), anti = Json::object();
  for (std::size_t a = 0; a < h->dim; ++a) {
    Elem ea = Tensor::basis(h, 1, a);
    comult[h->labels[a]] = format_tensor(delta(ea));
    counit[h->labels[a]] = h->counit[a].to_string();
    if (h->antipode) anti[h->labels[a]] = format_tensor(antipode(ea));
    for (std::size_t b = 0; b < h->dim; ++b)
      mult[h->labels[a] + " . " + h->labels[b]] = format_tensor(ea * Tensor::basis(h, 1, b));
  }
  j["product"] = mult;
  j["coproduct"] = comult;
  j["counit"] = counit;
  j["antipode"] = anti;
  Outcome out;
  out.json = j;
  out.table = "family\t" + fam.to_string() + "\nfield\t" + f.name() + "\ndim\t" + std::to_string(h->dim) + "\n";
  for (const auto& [k, v] : comult.items()) out.table += "Delta(" + k + ")\t" + v.get<std::string>() + "\n";
  return out;
}

Outcome run_verify(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  const Field& f = field_for(fam, o);
  HopfPtr h = build(fam, f);
  Outcome out;
  Json j;
  j["family"] = fam.to_string();
  j["field"] = f.name();
  VerificationReport hv = verify_hopf(h);
  j["hopf"] = report_json(hv);
  if (!hv.ok) {
    out.ok = false;
    for (const auto& m : hv.failures) out.diffs.push_back("hopf: " + m);
  }
  Json rs = Json::array();
  if (o.r != "none") {
    for (const auto& spec : rspecs_for(fam, o.r, h)) {
      Tensor2 r = build_r(h, fam, spec);
      Json e;
      e["r"] = spec.to_string();
      VerificationReport qv = verify_qtr(h, r);
      e["qtr"] = report_json(qv);
      e["triangular"] = is_triangular(h, r);
      if (spec.kind == RKind::EnA) e["rswap"] = report_json(rswap_identities_en(h, r));
      if (spec.kind == RKind::H8omega)
        e["conjugation"] = report_json(conjugation_identities_h8(h, parse_scalar(f, spec.omega)));
      for (const char* k : {"qtr", "rswap", "conjugation"}) {
        if (e.contains(k) && !e[k]["ok"].get<bool>()) {
          out.ok = false;
          out.diffs.push_back(spec.to_string() + ": " + k + " failed");
        }
      }
      rs.push_back(e);
    }
  }
  j["r_matrices"] = rs;
  out.json = j;
  out.table = table_of(j);
  return out;
}

Outcome run_classify(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  const Field& f = field_for(fam, o);
  HopfPtr h = build(fam, f);
  ExpectedTable table = load_table(o.expected);
  ClassifyOptions copt;
  copt.cohomology = !o.no_cohomology;
  std::vector<ClassificationReport> reps;
  for (const auto& spec : rspecs_for(fam, o.r, h)) reps.push_back(classify(fam, h, spec, table, copt));
  Outcome out;
  Json arr = Json::array();
  for (const auto& r : reps) {
    arr.push_back(to_json(r));
    if (!r.ok()) {
      out.ok = false;
      for (const auto& m : r.mismatches) out.diffs.push_back(r.family + " " + r.r + ": " + m);
      for (const auto& m : r.failures) out.diffs.push_back(r.family + " " + r.r + ": " + m);
    }
  }
  out.json = o.r == "enumerate" ? arr : arr[0];
  out.table = to_table(reps);
  return out;
}

Outcome run_cohomology(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  const Field& f = field_for(fam, o);
  HopfPtr h = build(fam, f);
  Subspace z1 = cocycles(h, 1), z2 = cocycles(h, 2), b2 = coboundaries(h, 2);
  Json j;
  j["family"] = fam.to_string();
  j["field"] = f.name();
  Json& dims = j["dims"];
  dims["z1"] = z1.dim();
  dims["z2"] = z2.dim();
  dims["b2"] = b2.dim();
  dims["h2"] = z2.dim() - b2.dim();
  j["flags"]["z2_equals_b2"] = z2 == b2;
  Outcome out;
  if (!z2.contains(b2)) {
    out.ok = false;
    out.diffs.push_back("B^2 is not contained in Z^2");
  }
  if (fam.kind == FamilyKind::En) {
    auto d = en_z2_decomposition(h, fam.n);
    j["decomposition"] = report_json(d.report);
    if (!d.report.ok) {
      out.ok = false;
      for (const auto& m : d.report.failures) out.diffs.push_back("decomposition: " + m);
    }
  }
  RSpec none = RSpec::parse("none");
  if (auto e = lookup_expectation(load_table(o.expected), fam, none)) {
    for (const auto& [k, v] : e->dims) {
      if (!dims.contains(k)) continue;
      if (dims[k].get<long>() != v) {
        out.ok = false;
        out.diffs.push_back(k + ": expected " + std::to_string(v) + ", computed " + dims[k].dump());
      }
    }
    j["statement"] = e->statement;
  }
  out.json = j;
  out.table = table_of(j);
  return out;
}

Outcome run_quantize(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  const Field& f = field_for(fam, o);
  HopfPtr h = build(fam, f);
  if (o.r == "none" || o.r == "enumerate") throw ConfigError("quantize needs a single --r");
  RSpec spec = RSpec::parse(o.r);
  Tensor2 r = build_r(h, fam, spec);
  std::vector<Tensor2> chis;
  if (o.chi.empty()) {
    chis = as_tensors(h, solve_infinitesimal(h, r));
  } else {
    chis.push_back(parse_tensor(h, o.chi, 2));
  }
  Outcome out;
  Json arr = Json::array();
  for (const auto& chi : chis) {
    QuantizationReport q = verify_quantized_qtr(h, r, chi);
    Json e;
    e["chi"] = format_tensor(chi);
    e["nilpotency"] = q.nilpotency;
    e["infinitesimal"] = q.infinitesimal;
    e["hypotheses"] = {{"first", q.hypotheses.first}, {"second", q.hypotheses.second}};
    e["first_order_recovers_chi"] = q.first_order_recovers_chi;
    e["verification"] = report_json(q.verification);
    e["ok"] = q.ok();
    if (!q.ok()) {
      out.ok = false;
      out.diffs.push_back("quantization fails for chi = " + format_tensor(chi));
    }
    arr.push_back(e);
  }
  Json j;
  j["family"] = fam.to_string();
  j["field"] = f.name();
  j["r"] = spec.to_string();
  j["results"] = arr;
  out.json = j;
  out.table = table_of(j);
  return out;
}

Outcome run_enumerate(const Options& o) {
  FamilySpec fam = FamilySpec::parse(o.family);
  Options e = o;
  e.r = "enumerate";
  const Field& f = field_for(fam, e);
  HopfPtr h = build(fam, f);
  Json arr = Json::array();
  Outcome out;
  for (const auto& spec : enumerate_rspecs(fam, h)) {
    if (spec.kind == RKind::None) continue;
    Tensor2 r = build_r(h, fam, spec);
    VerificationReport v = verify_qtr(h, r);
    arr.push_back({{"r", spec.to_string()}, {"verified", v.ok}, {"triangular", is_triangular(h, r)}});
    if (!v.ok) {
      out.ok = false;
      out.diffs.push_back(spec.to_string() + ": not quasitriangular");
    }
  }
  out.json = {{"family", fam.to_string()}, {"field", f.name()}, {"r_matrices", arr}};
  out.table = table_of(out.json);
  return out;
}

Outcome dispatch(const std::string& cmd, const Options& o);

Outcome run_batch(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw ConfigError("cannot read batch config " + o.config);
  Json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad batch config: ") + e.what());
  }
  if (!cfg.is_array()) throw ConfigError("batch config must be a JSON array");
  std::vector<std::pair<std::string, Options>> jobs;
  for (const auto& c : cfg) {
    Options x = o;
    x.family = c.value("family", std::string());
    x.r = c.value("r", std::string("none"));
    x.field = c.value("field", o.field);
    x.chi = c.value("chi", std::string());
    const std::string cmd = c.value("command", std::string("classify"));
    if (cmd == "batch") throw ConfigError("nested batch runs are not allowed");
    jobs.emplace_back(cmd, x);
  }
  std::vector<std::future<Outcome>> futs;
  for (const auto& [cmd, x] : jobs) futs.push_back(std::async(std::launch::async, [cmd, x] { return dispatch(cmd, x); }));
  Outcome out;
  Json arr = Json::array();
  for (auto& fu : futs) {
    Outcome r = fu.get();
    arr.push_back(r.json);
    out.table += r.table;
    out.ok = out.ok && r.ok;
    out.diffs.insert(out.diffs.end(), r.diffs.begin(), r.diffs.end());
  }
  out.json = arr;
  return out;
}

Outcome dispatch(const std::string& cmd, const Options& o) {
  if (cmd != "batch" && o.family.empty()) throw ConfigError("--family is required");
  if (cmd == "build") return run_build(o);
  if (cmd == "verify") return run_verify(o);
  if (cmd == "classify") return run_classify(o);
  if (cmd == "cohomology") return run_cohomology(o);
  if (cmd == "quantize") return run_quantize(o);
  if (cmd == "enumerate-r") return run_enumerate(o);
  if (cmd == "batch") return run_batch(o);
  throw ConfigError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hopf algebra, R-matrix and infinitesimal R-matrix calculator"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--family", o.family, "family spec, e.g. en:2, ac2n:3, h8, h2n2:3, radford:2,3, ac4dual, group:2,2");
    s->add_option("--field", o.field, "cyclotomic:M, prime:p or prime:p:M (default: smallest cyclotomic field)");
    s->add_option("--out", o.out, "output file (default: stdout)");
    s->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    subs.emplace_back(name, s);
    return s;
  };
  add("build", "print the structure constants of a family");
  add("verify", "verify the Hopf axioms and R-matrices")->add_option("--r", o.r, "R spec, enumerate or none");
  auto* cl = add("classify", "classify infinitesimal R-matrices");
  cl->add_option("--r", o.r, "R spec, enumerate or none");
  cl->add_option("--expected", o.expected, "JSON expected-dims table replacing the built-in one");
  cl->add_flag("--no-cohomology", o.no_cohomology, "skip Z^2/B^2 computations");
  add("cohomology", "Hochschild cohomology of the coalgebra with trivial coefficients")
      ->add_option("--expected", o.expected, "JSON expected-dims table");
  auto* q = add("quantize", "verify the quantization R exp(hbar chi)");
  q->add_option("--r", o.r, "R spec")->required();
  q->add_option("--chi", o.chi, "chi as an element expression (default: every chi-space basis vector)");
  add("enumerate-r", "list and verify the registered or enumerated R-matrices of a family");
  add("batch", "run a JSON array of {command, family, r, field, chi} jobs concurrently")
      ->add_option("--config", o.config, "batch config file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string cmd;
  for (const auto& [name, s] : subs)
    if (s->parsed()) cmd = name;
  try {
    Outcome out = dispatch(cmd, o);
    std::string text = o.format == "table" ? out.table : out.json.dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw ConfigError("cannot write " + o.out);
      f << text;
    }
    if (!out.ok) {
      std::cerr << "mismatch:\n";
      for (const auto& d : out.diffs) std::cerr << "  " << d << '\n';
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
