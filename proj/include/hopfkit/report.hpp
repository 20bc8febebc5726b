#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfkit/quasitriangular.hpp"
#include "json.hpp"

namespace hopfkit {

using Json = nlohmann::ordered_json;

// Field for a family and its R specs: `text` may be empty (smallest cyclotomic field),
// `cyclotomic:M`, `prime:p` or `prime:p:M`. Throws ConfigError if a required root is missing.
const Field& choose_field(const FamilySpec& fam, const std::vector<RSpec>& rs, const std::string& text);

// R specs for `--r enumerate`: registered specs, or the bicharacter survivors for H_{2n^2}.
std::vector<RSpec> enumerate_rspecs(const FamilySpec& fam, const HopfPtr& h);

// One row of the expected-dimension table. `r` is an R kind name ("en-a", "h8pm", ...), "none" or "*".
struct Expectation {
  std::string family;
  std::string r = "*";
  std::map<std::string, long> dims;
  std::vector<std::string> contains;  // tensors that must lie in the chi-space
  bool partial = false;               // reported only, no dimension assertion
  std::string statement;
};
using ExpectedTable = std::vector<Expectation>;

ExpectedTable default_expected_table();
ExpectedTable expected_table_from_json(const Json& j);
Json expected_table_to_json(const ExpectedTable& t);
std::optional<Expectation> lookup_expectation(const ExpectedTable& t, const FamilySpec& fam, const RSpec& r);
std::string rkind_name(RKind k);

struct ClassificationReport {
  std::string family;
  Json params;
  std::string field;
  std::string r;
  std::map<std::string, std::optional<long>> dims;  // precartier, cartier, z2, b2, h2, rfree, z1
  std::vector<std::string> basis;
  std::vector<std::string> cartier_basis;
  std::map<std::string, bool> flags;
  std::optional<Expectation> expected;
  std::vector<std::string> mismatches;
  std::vector<std::string> failures;
  bool ok() const { return mismatches.empty() && failures.empty(); }
};

struct ClassifyOptions {
  bool cohomology = true;
  bool rfree = true;
};

ClassificationReport classify(const FamilySpec& fam, const RSpec& r, const Field& f, const ExpectedTable& table,
                              const ClassifyOptions& opt = {});
ClassificationReport classify(const FamilySpec& fam, const HopfPtr& h, const RSpec& r, const ExpectedTable& table,
                              const ClassifyOptions& opt = {});

Json to_json(const ClassificationReport& r);
std::string to_table(const std::vector<ClassificationReport>& rs);

}  // namespace hopfkit
