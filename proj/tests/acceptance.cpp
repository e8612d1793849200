// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "treefo/definability.hpp"
#include "treefo/starfree.hpp"

using namespace treefo;

namespace {

  std::string const kFixtures = FIXTURE_DIR;

  Dfta fixture(std::string const& name) {
    return load_dfta(kFixtures + "/" + name + ".json");
  }

  std::vector<std::string> const kAll{"even_depth", "path_parity", "and_or",
                                      "and_only", "partial"};

  struct Outcome {
    bool        pass = true;
    std::string detail;

    void require(bool ok, std::string const& what) {
      if (!ok && pass) {
        pass = false;
        detail = what;
      }
    }
  };

  CloneAlgebra even_depth() {
    CloneAlgebra c = build_syntactic(fixture("even_depth"));
    apply_names(c, {{"c", "1"}, {"a(c,c)", "0"}, {"a(a(c,c),c)", "⊥"}});
    return c;
  }

  ElementSet named(CloneAlgebra const& c, std::vector<std::string> const& ns) {
    ElementSet s = 0;
    for (auto const& n : ns) {
      s |= singleton(*c.find(n));
    }
    return s;
  }

  // 1 -------------------------------------------------------------------
  Outcome worked_example() {
    Outcome      o;
    CloneAlgebra c = even_depth();
    o.require(c.size() == 3, "carrier size " + std::to_string(c.size()));
    if (!o.pass) {
      return o;
    }
    Element const one = *c.find("1"), zero = *c.find("0"), bot = *c.find("⊥");

    OpTable const* a = nullptr;
    for (auto const& g : c.generators) {
      if (g.table.arity() == 2) {
        a = &g.table;
      }
    }
    for (Element x = 0; x < 3; ++x) {
      for (Element y = 0; y < 3; ++y) {
        Element want = bot;
        if (x == one && y == one) {
          want = zero;
        } else if (x == zero && y == zero) {
          want = one;
        }
        o.require((*a)({x, y}) == want, "table of letter a");
      }
    }

    o.require(is_simple(c), "algebra is not simple");
    auto const lat = congruence_lattice(c);
    o.require(lat.congruences.size() == 2 && lat.covers.size() == 1,
              "lattice is not {bottom, top}");

    std::set<ElementSet> images;
    for (auto const& e : idempotents(c)) {
      if (e.image != full_set(3)) {
        images.insert(e.image);
      }
    }
    std::set<ElementSet> const expected{named(c, {"0", "⊥"}),
                                        named(c, {"1", "⊥"}),
                                        named(c, {"⊥"})};
    o.require(images == expected, "idempotent images differ");
    for (auto const& e : idempotents(c)) {
      if (e.image == named(c, {"⊥"})) {
        o.require(idempotent_label(c, e) == TypeLabel::T,
                  "localisation at {⊥} is not trivial");
      }
    }

    auto const rep = min_sets(c, lat.congruences[0], lat.congruences[1]);
    std::map<ElementSet, std::vector<TypeLabel>> mins;
    for (auto const& ms : rep.minimal_sets) {
      for (auto const& t : ms.traces) {
        mins[ms.idempotent.image].push_back(t.label);
      }
    }
    std::map<ElementSet, std::vector<TypeLabel>> const want_mins{
        {named(c, {"0", "⊥"}), {TypeLabel::S}},
        {named(c, {"1", "⊥"}), {TypeLabel::S}}};
    o.require(mins == want_mins, "minimal sets or their types differ");

    // the three merges, each with a concrete witness
    auto merge = [&](Element x, Element y) {
      std::vector<std::size_t> raw{0, 1, 2};
      raw[std::max(x, y)] = std::min(x, y);
      return Partition(raw);
    };
    auto gens = congruence_generators(c);
    auto check_witness = [&](Element x, Element y,
                             std::vector<Element> args_a, Element va,
                             std::vector<Element> args_b, Element vb) {
      auto v = find_violation(c, merge(x, y));
      if (!v) {
        o.require(false, "a merge is a congruence");
        return;
      }
      o.require(to_string(gens[v->generator]->provenance) == "a(x0,x1)"
                    && v->args_a == args_a && v->value_a == va
                    && v->args_b == args_b && v->value_b == vb,
                "merge witness differs from a_11(1,1)=0 vs a_11(1,y)=⊥");
    };
    // a_11(1,1) = 0 vs a_11(1,0) = ⊥ and a_11(1,1) = 0 vs a_11(1,⊥) = ⊥
    check_witness(zero, one, {one, one}, zero, {one, zero}, bot);
    check_witness(one, bot, {one, one}, zero, {one, bot}, bot);
    auto v = find_violation(c, merge(zero, bot));
    o.require(v.has_value(), "merging 0 and ⊥ is a congruence");
    if (v) {
      Partition const p = merge(zero, bot);
      o.require(p.related(v->args_a.back(), v->args_b.back())
                    && !p.related(v->value_a, v->value_b),
                "merge witness for {0,⊥} does not replay");
    }
    // the ternary witness a_100(1,0,0) = 0 vs a_100(1,0,⊥) = ⊥
    bool found = false;
    for (auto const& op : c.ops.at(3)) {
      bool is_a100 = true;
      for (Element x = 0; x < 3 && is_a100; ++x) {
        for (Element y = 0; y < 3 && is_a100; ++y) {
          for (Element z = 0; z < 3 && is_a100; ++z) {
            Element want = bot;
            if (x == one && y == zero && z == zero) {
              want = zero;
            } else if (x == zero && y == one && z == one) {
              want = one;
            }
            is_a100 = op.table({x, y, z}) == want;
          }
        }
      }
      if (is_a100) {
        found = op.table({one, zero, zero}) == zero
                && op.table({one, zero, bot}) == bot;
      }
    }
    o.require(found, "a_100 not among the ternary operations");
    for (auto [x, y] : {std::pair{zero, one}, std::pair{zero, bot},
                        std::pair{one, bot}}) {
      o.require(principal_congruence(c, x, y) == Partition::top(3),
                "a principal congruence is not the top");
    }
    o.detail = o.pass ? "carrier 3, simple, images {0,⊥} {1,⊥} {⊥}, "
                        "types S S T, three merges refuted"
                      : o.detail;
    return o;
  }

  // 2 -------------------------------------------------------------------
  Outcome verdict_suite() {
    Outcome o;
    {
      CloneAlgebra const c = build_syntactic(fixture("path_parity"));
      Verdict const      v = verdict(c);
      o.require(v.status == Status::NotDefinable, "path parity status");
      auto const& ap = v.necessary.aperiodicity;
      o.require(!ap.aperiodic && ap.period == 2, "path parity period");
      // replay: the witness squared is the identity but the witness is not
      if (ap.witness) {
        auto const s = sg(c);
        OpTable const& f = s.elements.at(*ap.witness).table;
        OpTable const  ff = f.compose({f});
        o.require(ff.compose({f}) == f && ff != f,
                  "path parity witness does not replay");
      }
    }
    {
      CloneAlgebra const c = build_syntactic(fixture("and_or"));
      Verdict const      v = verdict(c);
      o.require(v.status == Status::NotDefinable, "and/or status");
      o.require(v.necessary.aperiodicity.aperiodic, "and/or aperiodicity");
      o.require(v.necessary.trace && v.necessary.trace->label == TypeLabel::L,
                "and/or trace label");
      if (v.necessary.trace) {
        auto const& w = *v.necessary.trace;
        CloneAlgebra const l = preclone_localisation(c, w.subset);
        auto const         rep = min_sets(l, w.alpha, w.beta);
        bool               replayed = false;
        for (auto const& ms : rep.minimal_sets) {
          for (auto const& t : ms.traces) {
            replayed = replayed
                       || (ms.idempotent.image == w.minimal_set
                           && t.elements == w.trace && t.label == w.label);
          }
        }
        o.require(replayed, "and/or trace witness does not replay");
      }
    }
    {
      CloneAlgebra const c = build_syntactic(fixture("and_only"));
      Verdict const      v = verdict(c);
      o.require(v.status == Status::Definable, "and-only status");
      o.require(v.sufficient && !v.sufficient->certificates.empty(),
                "and-only certificates");
    }
    {
      CloneAlgebra const c = even_depth();
      Verdict const      v = verdict(c);
      o.require(v.status == Status::Unknown, "even-depth status");
      o.require(v.necessary.pass && v.sufficient && !v.sufficient->pass,
                "even-depth diagnostics");
      bool full_fails = false;
      if (v.sufficient) {
        for (auto const& f : v.sufficient->failures) {
          full_fails = full_fails || (f.subset == full_set(3) && f.op);
        }
      }
      o.require(full_fails, "even-depth: no failure on the full algebra");
    }
    if (o.pass) {
      o.detail = "path-parity NOT_DEFINABLE (period 2), and/or NOT_DEFINABLE "
                 "(trace L), and-only DEFINABLE, even-depth UNKNOWN";
    }
    return o;
  }

  // 3 -------------------------------------------------------------------
  Outcome monad_laws() {
    Outcome     o;
    std::size_t checked = 0;
    std::uint32_t seed = 17;
    for (auto const& name : kAll) {
      auto const r = oracle::monad_laws(fixture(name).alphabet(), 1000, seed++);
      checked += r.checked;
      o.require(r.failures == 0, name + ": " + r.first_failure);
    }
    if (o.pass) {
      o.detail = std::to_string(checked) + " law instances on 5 alphabets";
    }
    return o;
  }

  // 4 -------------------------------------------------------------------
  Outcome congruence_oracle() {
    Outcome     o;
    std::size_t algebras = 0;
    auto check = [&](CloneAlgebra const& c, std::string const& what) {
      if (c.size() > 5) {
        return;
      }
      ++algebras;
      std::set<std::vector<std::size_t>> mine;
      for (auto const& p : congruence_lattice(c).congruences) {
        mine.insert(p.block_vector());
      }
      o.require(mine == oracle::congruences(c), what + ": lattices differ");
    };
    for (auto const& name : kAll) {
      check(build_syntactic(fixture(name)), name);
    }
    // random algebras are given by their basic operations only; the
    // congruences of a clone are those of any generating set, and a full
    // closure over five elements is far out of budget
    std::mt19937 rng(4242);
    for (int i = 0; i < 40; ++i) {
      std::size_t const n = 2 + static_cast<std::size_t>(i % 4);
      std::uniform_int_distribution<int> arity(1, 3), value(0, static_cast<int>(n) - 1);
      CloneAlgebra c;
      for (std::size_t e = 0; e < n; ++e) {
        c.names.push_back(std::to_string(e));
        c.representatives.emplace_back();
      }
      int const k = 1 + i % 2;
      for (int g = 0; g < k; ++g) {
        std::size_t const r = static_cast<std::size_t>(arity(rng));
        std::size_t       len = 1;
        for (std::size_t j = 0; j < r; ++j) {
          len *= n;
        }
        std::vector<Element> vals(len);
        for (auto& x : vals) {
          x = static_cast<Element>(value(rng));
        }
        // sparse images keep some proper congruences around
        if (i % 3 == 0) {
          for (auto& x : vals) {
            x = static_cast<Element>(x % 2);
          }
        }
        c.generators.push_back({OpTable(r, n, vals), Tree::variable("x0")});
      }
      check(c, "random algebra " + std::to_string(i));
    }
    if (o.pass) {
      o.detail = std::to_string(algebras) + " algebras, zero discrepancies";
    }
    return o;
  }

  // 5 -------------------------------------------------------------------
  Outcome closure_oracle() {
    Outcome            o;
    std::size_t        compared = 0;
    std::ostringstream shallow_note;
    for (auto const& name : kAll) {
      Dfta const a = fixture(name);
      CloneAlgebra const c = build_syntactic(a, 2);
      if (c.size() > 3) {
        continue;
      }
      std::set<std::vector<Element>> mine;
      for (auto const& op : c.ops.at(2)) {
        mine.insert(op.table.values());
      }
      auto const brute = oracle::binary_multicontext_tables(c, 3);
      std::size_t missing = 0, extra = 0;
      for (auto const& t : brute) {
        missing += mine.count(t) ? 0 : 1;
      }
      for (auto const& t : mine) {
        extra += brute.count(t) ? 0 : 1;
      }
      // counting holes as height-1 leaves, depth 3 means two letter levels
      auto const shallow = oracle::binary_multicontext_tables(c, 2);
      if (shallow.size() != mine.size()) {
        shallow_note << " " << name << " " << shallow.size() << "/"
                     << mine.size();
      }
      o.require(missing == 0 && extra == 0,
                name + ": " + std::to_string(missing) + " tables missing, "
                    + std::to_string(extra) + " beyond three letter levels");
      ++compared;
    }
    if (o.pass) {
      o.detail = std::to_string(compared)
                 + " fixtures, binary tables equal to multicontexts of three letter levels";
      if (!shallow_note.str().empty()) {
        o.detail += " (two levels reach only" + shallow_note.str() + ")";
      }
    }
    return o;
  }

  // 6 -------------------------------------------------------------------
  OpTable random_boolean(std::mt19937& rng) {
    static std::vector<std::pair<std::size_t, std::vector<Element>>> const pool{
        {2, {0, 0, 0, 1}},                  // meet
        {2, {0, 1, 1, 1}},                  // join
        {1, {1, 0}},                        // negation
        {2, {0, 1, 1, 0}},                  // sum
        {3, {0, 1, 1, 0, 1, 0, 0, 1}},      // x + y + z
        {3, {0, 0, 0, 1, 0, 1, 1, 1}},      // majority
        {1, {0, 1}},                        // identity
        {2, {0, 0, 1, 1}},                  // second projection
        {1, {1, 1}},                        // constant
        {2, {1, 1, 1, 0}},                  // nand
        {3, {0, 0, 0, 0, 0, 0, 0, 1}},      // ternary meet
        {2, {1, 0, 0, 1}},                  // equivalence
    };
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng) != 0) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      auto const& [r, v] = pool[pick(rng)];
      return OpTable(r, 2, v);
    }
    std::uniform_int_distribution<std::size_t> arity(1, 3);
    std::uniform_int_distribution<int>         bit(0, 1);
    std::size_t const                          r = arity(rng);
    std::vector<Element>                       vals(std::size_t{1} << r);
    for (auto& x : vals) {
      x = static_cast<Element>(bit(rng));
    }
    return OpTable(r, 2, vals);
  }

  Outcome classification_fuzz() {
    Outcome                    o;
    std::mt19937               rng(9001);
    std::size_t                cases = 0;
    std::map<char, std::size_t> seen;
    std::uniform_int_distribution<int> count(1, 2);
    for (int i = 0; i < 400 && o.pass; ++i) {
      std::vector<OpTable> gens;
      int const            k = count(rng);
      for (int g = 0; g < k; ++g) {
        gens.push_back(random_boolean(rng));
      }
      CloneAlgebra const c = from_generators(2, gens, 3);
      if (!is_minimal_algebra(c)) {
        continue;
      }
      ++cases;
      char const mine = to_char(classify_minimal(c));
      char const want = oracle::post_type(oracle::post_closure(gens));
      ++seen[want];
      o.require(mine == want, "case " + std::to_string(i) + ": classifier "
                                  + mine + ", oracle " + want);
    }
    o.require(cases >= 200, "only " + std::to_string(cases) + " cases");
    if (o.pass) {
      std::ostringstream s;
      s << cases << " cases, zero disagreements (";
      bool first = true;
      for (auto [t, n] : seen) {
        s << (first ? "" : " ") << t << ":" << n;
        first = false;
      }
      s << ")";
      o.detail = s.str();
    }
    return o;
  }

  // 7 -------------------------------------------------------------------
  Outcome recognition() {
    Outcome       o;
    std::ostringstream s;
    for (auto const& name : kAll) {
      Dfta const a = fixture(name);
      auto const r = oracle::recognition(a, build_syntactic(a), 5);
      o.require(r.ok, name + ": " + r.detail);
      s << name << " " << r.trees << (r.literal ? "" : " (state pairs)")
        << "; ";
    }
    if (o.pass) {
      o.detail = "trees of height <= 5: " + s.str();
    }
    return o;
  }

  // 8 -------------------------------------------------------------------
  Outcome starfree() {
    Outcome    o;
    Dfta const a = fixture("and_only");
    auto const e = load_starfree(kFixtures + "/and_only.sf", a.alphabet());
    auto const r = compare_language(e, a, 4);
    o.require(r.agree(), "and-only expression disagrees at depth 4");

    std::mt19937 rng(77);
    auto const&  alph = a.alphabet();
    std::vector<SortedVarSet> const sorts{{}, {"x0"}, {"x0", "x1"}};
    EnumerationOrder const less;
    for (int i = 0; i < 100 && o.pass; ++i) {
      SortedVarSet const& sort = sorts[static_cast<std::size_t>(i) % 3];
      auto const x = oracle::random_expression(rng, alph, sort, 6);
      auto const y = oracle::random_expression(rng, alph, sort, 6);

      auto const lhs = eval_bounded(
          StarFreeExpr::complement(StarFreeExpr::unite(x, y)), alph, 3);
      auto const nx = eval_bounded(StarFreeExpr::complement(x), alph, 3);
      auto const ny = eval_bounded(StarFreeExpr::complement(y), alph, 3);
      std::vector<Tree> both;
      std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(),
                            std::back_inserter(both), less);
      o.require(lhs == both, "De Morgan fails for " + to_string(x) + " and "
                                 + to_string(y));

      auto const at3 = eval_bounded(x, alph, 3);
      std::vector<Tree> cut;
      for (auto const& t : eval_bounded(x, alph, 4)) {
        if (t.height() <= 3) {
          cut.push_back(t);
        }
      }
      o.require(at3 == cut, "monotone consistency fails for " + to_string(x));
      for (auto const& t : at3) {
        o.require(is_linear(t, sort), "non-linear value of " + to_string(x));
      }
    }
    if (o.pass) {
      o.detail = "and-only agrees to depth 4 (" + std::to_string(r.expression_count)
                 + " trees); 100 random expressions consistent at depth 3";
    }
    return o;
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    char const*              name;
    std::function<Outcome()> run;
    double                   limit_s;  // 0: no time limit
  };
  std::vector<Criterion> const criteria{
      {1, "worked example", worked_example, 10},
      {2, "verdict suite", verdict_suite, 60},
      {3, "monad laws", monad_laws, 0},
      {4, "congruence oracle", congruence_oracle, 0},
      {5, "closure oracle", closure_oracle, 0},
      {6, "classification fuzz", classification_fuzz, 0},
      {7, "recognition coherence", recognition, 0},
      {8, "star-free agreement", starfree, 0},
  };
  bool all = true;
  for (auto const& c : criteria) {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double const secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail = "took " + std::to_string(secs) + " s";
    }
    all = all && o.pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name
              << " [" << t.str() << " s]: " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
