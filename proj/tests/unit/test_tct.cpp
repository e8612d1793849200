#include <doctest.h>

#include "common.hpp"
#include "treefo/congruence.hpp"
#include "treefo/tct.hpp"

using namespace treefo;

namespace {

  OpTable const meet(2, 2, {0, 0, 0, 1});
  OpTable const join(2, 2, {0, 1, 1, 1});
  OpTable const sum(2, 2, {0, 1, 1, 0});
  OpTable const negation(1, 2, {1, 0});

}  // namespace

TEST_SUITE("tct") {
  TEST_CASE("idempotent images of even depth") {
    auto const c = unit::even_depth();
    Element const one = unit::element(c, "1"), zero = unit::element(c, "0"),
                  bot = unit::element(c, "⊥");
    std::vector<ElementSet> images;
    for (auto const& e : idempotents(c)) {
      images.push_back(e.image);
      for (Element x = 0; x < 3; ++x) {
        CHECK(e.op.table({e.op.table({x})}) == e.op.table({x}));
      }
    }
    std::vector<ElementSet> const want{
        singleton(bot), singleton(zero) | singleton(bot),
        singleton(one) | singleton(bot), full_set(3)};
    std::sort(images.begin(), images.end());
    auto sorted = want;
    std::sort(sorted.begin(), sorted.end());
    CHECK(images == sorted);
  }

  TEST_CASE("localising at {0,⊥} keeps the diagonal meet") {
    auto const c = unit::even_depth();
    Element const zero = unit::element(c, "0"), bot = unit::element(c, "⊥");
    auto const l = localise(c, singleton(zero) | singleton(bot));
    REQUIRE(l.size() == 2);
    // local elements follow the order of the carrier
    Element const z = zero < bot ? 0 : 1;
    Element const b = 1 - z;
    std::vector<Element> m(4, b);
    m[z + 2 * z] = z;
    bool found = false;
    for (auto const& op : l.ops[2]) {
      found = found || op.table.values() == m;
    }
    CHECK(found);
    CHECK(localise(c, full_set(3)).ops[2].size() == c.ops[2].size());
    CHECK(localise(c, singleton(bot)).size() == 1);
  }

  TEST_CASE("minimal sets of even depth") {
    auto const c = unit::even_depth();
    Element const one = unit::element(c, "1"), zero = unit::element(c, "0"),
                  bot = unit::element(c, "⊥");
    auto const r = min_sets(c, Partition::bottom(3), Partition::top(3));
    std::vector<ElementSet> sets;
    for (auto const& m : r.minimal_sets) {
      sets.push_back(m.idempotent.image);
      REQUIRE(m.traces.size() == 1);
      CHECK(m.traces[0].elements == m.idempotent.image);
      CHECK(m.traces[0].label == TypeLabel::S);
    }
    std::sort(sets.begin(), sets.end());
    std::vector<ElementSet> want{singleton(zero) | singleton(bot),
                                 singleton(one) | singleton(bot)};
    std::sort(want.begin(), want.end());
    CHECK(sets == want);
    CHECK_THROWS_AS(min_sets(c, Partition::top(3), Partition::bottom(3)),
                    ContractViolation);
  }

  TEST_CASE("minimal algebras") {
    CHECK(is_minimal_algebra(from_generators(2, {meet}, 3)));
    CHECK_FALSE(is_minimal_algebra(unit::even_depth()));
    CHECK_FALSE(is_minimal_algebra(from_generators(1, {}, 3)));
  }

  TEST_CASE("types of two-element algebras") {
    CHECK(classify_minimal(from_generators(2, {}, 3)) == TypeLabel::T);
    CHECK(classify_minimal(from_generators(2, {negation}, 3)) == TypeLabel::U);
    CHECK(classify_minimal(from_generators(2, {sum}, 3)) == TypeLabel::A);
    CHECK(classify_minimal(from_generators(2, {meet, join, negation}, 3))
          == TypeLabel::B);
    CHECK(classify_minimal(from_generators(2, {meet, join}, 3))
          == TypeLabel::L);
    CHECK(classify_minimal(from_generators(2, {meet}, 3)) == TypeLabel::S);
    CHECK(classify_minimal(from_generators(2, {join}, 3)) == TypeLabel::S);
  }

  TEST_CASE("affine over three elements") {
    OpTable const sum3(2, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1});
    CHECK(classify_minimal(from_generators(3, {sum3}, 3)) == TypeLabel::A);
  }

  TEST_CASE("labels and names") {
    CHECK(to_char(TypeLabel::L) == 'L');
    CHECK(set_to_string(0b101, {"p", "q", "r"}) == "{p,r}");
  }
}
