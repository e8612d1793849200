#include <doctest.h>

#include "common.hpp"
#include "treefo/congruence.hpp"

using namespace treefo;

TEST_SUITE("congruences") {
  TEST_CASE("even depth is simple") {
    auto const c = unit::even_depth();
    auto const lat = congruence_lattice(c);
    CHECK(lat.congruences.size() == 2);
    CHECK(lat.covers.size() == 1);
    CHECK(is_simple(c));
    Element const one = unit::element(c, "1"), zero = unit::element(c, "0"),
                  bot = unit::element(c, "⊥");
    CHECK(principal_congruence(c, zero, one) == Partition::top(3));
    CHECK(principal_congruence(c, zero, bot) == Partition::top(3));
    CHECK(principal_congruence(c, bot, bot) == Partition::bottom(3));
  }

  TEST_CASE("constants only") {
    auto const c = from_generators(3, {}, 1);
    CHECK(congruence_lattice(c).congruences.size() == 5);
    CHECK_FALSE(is_simple(c));
  }

  TEST_CASE("one element is not simple") {
    CHECK_FALSE(is_simple(from_generators(1, {}, 1)));
  }

  TEST_CASE("lattice is closed and covers are tight") {
    auto const c = build_syntactic(unit::fixture("partial"));
    auto const lat = congruence_lattice(c);
    auto const& cs = lat.congruences;
    for (auto const& a : cs) {
      CHECK(is_congruence(c, a));
      for (auto const& b : cs) {
        CHECK(std::find(cs.begin(), cs.end(), a.join(b)) != cs.end());
        CHECK(std::find(cs.begin(), cs.end(), a.meet(b)) != cs.end());
      }
    }
    for (auto [i, j] : lat.covers) {
      CHECK(cs[i].refines(cs[j]));
      for (auto const& m : cs) {
        bool const between = cs[i].refines(m) && m.refines(cs[j]) && m != cs[i]
                             && m != cs[j];
        CHECK_FALSE(between);
      }
    }
  }

  TEST_CASE("quotients") {
    auto const c = build_syntactic(unit::fixture("partial"));
    CHECK(quotient(c, Partition::bottom(c.size())).size() == c.size());
    CHECK(quotient(c, Partition::top(c.size())).size() == 1);

    auto const e = unit::even_depth();
    CHECK_THROWS_AS(quotient(e, Partition({0, 0, 1})), ContractViolation);
    auto const v = find_violation(e, Partition({0, 0, 1}));
    REQUIRE(v);
    CHECK_FALSE(Partition({0, 0, 1}).related(v->value_a, v->value_b));
  }

  TEST_CASE("partition operations") {
    Partition const p({0, 0, 1, 2});
    Partition const q({0, 1, 1, 2});
    CHECK(p.join(q) == Partition({0, 0, 0, 1}));
    CHECK(p.meet(q) == Partition::bottom(4));
    CHECK(p.refines(p.join(q)));
    CHECK(p.block_count() == 3);
    CHECK(to_string(p, {"a", "b", "c", "d"}) == "{a,b}{c}{d}");
  }
}
