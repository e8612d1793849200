#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "common.hpp"
#include "treefo/definability.hpp"

using namespace treefo;

namespace {

  std::string fixture_text(std::string const& name) {
    std::ifstream      in(std::string(FIXTURE_DIR) + "/" + name + ".json");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Verdict verdict_of(Dfta const& a) {
    return verdict(build_syntactic(a));
  }

}  // namespace

TEST_SUITE("definability") {
  TEST_CASE("fixture verdicts") {
    CHECK(verdict_of(unit::fixture("path_parity")).status
          == Status::NotDefinable);
    CHECK(verdict_of(unit::fixture("and_or")).status == Status::NotDefinable);
    CHECK(verdict_of(unit::fixture("and_only")).status == Status::Definable);
    CHECK(verdict_of(unit::fixture("even_depth")).status == Status::Unknown);
  }

  TEST_CASE("and/or fails on a lattice trace") {
    auto const v = verdict_of(unit::fixture("and_or"));
    REQUIRE(v.necessary.trace);
    CHECK(v.necessary.trace->label == TypeLabel::L);
    CHECK(v.necessary.aperiodicity.aperiodic);
  }

  TEST_CASE("even depth passes the necessary check only") {
    auto const c = unit::even_depth();
    auto const n = check_necessary(c);
    auto const s = check_sufficient(c);
    CHECK(n.pass);
    CHECK_FALSE(s.pass);
    REQUIRE_FALSE(s.failures.empty());
    bool whole = false;
    for (auto const& f : s.failures) {
      whole = whole || f.subset == full_set(3);
    }
    CHECK(whole);
    CHECK_FALSE(verdict(c).caveats.empty());
  }

  TEST_CASE("and-only certificates carry the aperiodicity bound") {
    auto const v = verdict_of(unit::fixture("and_only"));
    REQUIRE(v.sufficient);
    CHECK(v.sufficient->pass);
    CHECK_FALSE(v.sufficient->certificates.empty());
    CHECK(v.sufficient->aperiodicity.bound >= 1);
  }

  TEST_CASE("sufficient implies necessary on every fixture") {
    for (auto const* name :
         {"even_depth", "path_parity", "and_or", "and_only", "partial"}) {
      auto const c = build_syntactic(unit::fixture(name));
      if (check_sufficient(c).pass) {
        CHECK_MESSAGE(check_necessary(c).pass, name);
      }
    }
  }

  TEST_CASE("one-element algebra passes vacuously") {
    auto const c = from_generators(1, {OpTable(2, 1, {0})}, 3);
    CHECK(check_sufficient(c).pass);
    CHECK(verdict(c).status == Status::Definable);
  }

  TEST_CASE("renaming the alphabet keeps the verdict") {
    std::string text = fixture_text("and_or");
    text = std::regex_replace(text, std::regex("\"and\""), "\"conj\"");
    text = std::regex_replace(text, std::regex("\"or\""), "\"disj\"");
    text = std::regex_replace(text, std::regex("\"zero\""), "\"ff\"");
    text = std::regex_replace(text, std::regex("\"one\""), "\"tt\"");
    auto const renamed = verdict_of(parse_dfta_json(text));
    auto const original = verdict_of(unit::fixture("and_or"));
    CHECK(renamed.status == original.status);
    REQUIRE(renamed.necessary.trace);
    CHECK(renamed.necessary.trace->label == original.necessary.trace->label);

    std::string even = fixture_text("even_depth");
    even = std::regex_replace(even, std::regex("\"a\""), "\"node\"");
    even = std::regex_replace(even, std::regex("\"c\""), "\"leaf\"");
    CHECK(verdict_of(parse_dfta_json(even)).status == Status::Unknown);
  }

  TEST_CASE("semilattice check on small algebras") {
    OpTable const meet(2, 2, {0, 0, 0, 1});
    OpTable const sum(2, 2, {0, 1, 1, 0});
    CHECK(std::holds_alternative<SemilatticeCertificate>(
        semilattice_check(from_generators(2, {meet}, 3))));
    CHECK(std::holds_alternative<SufficientFailure>(
        semilattice_check(from_generators(2, {sum}, 3))));
  }

  TEST_CASE("divisor index covers every nonempty subset") {
    auto const c = unit::even_depth();
    auto const d = divisor_index(c);
    CHECK(d.entries.size() == 7);
    for (std::size_t i = 1; i < d.entries.size(); ++i) {
      CHECK(cardinality(d.entries[i - 1].subset)
            <= cardinality(d.entries[i].subset));
    }
  }
}
