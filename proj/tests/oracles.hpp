#pragma once

// Brute-force reference computations used by the tests. None of these
// call into the closure engine, the congruence code or the classifier;
// they only read letter tables and automata.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treefo/clone.hpp"
#include "treefo/starfree.hpp"

namespace oracle {

  using treefo::Element;

  /// All set partitions of {0..n-1} as restricted growth strings.
  std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

  /// Every pair of componentwise related argument tuples is mapped to
  /// related values, for every table.
  bool compatible(std::vector<std::size_t> const&    blocks,
                  std::vector<treefo::OpTable> const& tables);

  /// The partitions compatible with all stored operations of c of positive
  /// arity, as restricted growth strings.
  std::set<std::vector<std::size_t>> congruences(treefo::CloneAlgebra const& c);

  /// Binary tables obtained from all linear multicontexts with at most
  /// `depth` levels of letters by every identification of their holes onto
  /// {x0, x1} that uses both. Holes may also be filled with carrier
  /// constants; holes and constants are not nodes and add no level.
  std::set<std::vector<Element>> binary_multicontext_tables(
      treefo::CloneAlgebra const& c, std::size_t depth);

  /// Functions {0,1}^3 -> {0,1} as 8-bit truth tables, bit i holding the
  /// value at (i&1, i>>1&1, i>>2&1).
  using Ternary = std::uint8_t;

  /// The polynomial clone generated by tables over {0,1} (arity at most 3)
  /// together with both constants, as the set of its ternary members.
  std::set<Ternary> post_closure(std::vector<treefo::OpTable> const& gens);

  /// T, U, A, B, L or S from the defining conditions on a closed set of
  /// ternary functions; throws when none or several conditions hold.
  char post_type(std::set<Ternary> const& clone);

  /// Number of linear trees of a sort with k variables and height at most
  /// depth, by the counting recurrence.
  std::uint64_t count_trees(treefo::RankedAlphabet const& alphabet,
                            std::size_t k, std::size_t depth);

  /// Exhaustive recognition check: for every ground tree of height at most
  /// depth, eval_product and the automaton run agree on acceptance, and
  /// trees reaching the same automaton state evaluate to the same element.
  struct Coherence {
    bool          ok = true;
    std::uint64_t trees = 0;
    bool          literal = false;  // trees enumerated one by one
    std::string   detail;
  };
  /// Enumerates literally up to literal_limit trees; above that, runs the
  /// same check on the exact set of (state, element) pairs realised by the
  /// trees of each height.
  Coherence recognition(treefo::Dfta const& a, treefo::CloneAlgebra const& c,
                        std::size_t depth,
                        std::uint64_t literal_limit = 3'000'000);

  /// Random nested terms for the monad laws.
  treefo::Tree random_term(std::mt19937& rng,
                           treefo::RankedAlphabet const& alphabet,
                           std::vector<std::string> const& vars,
                           std::size_t depth);

  /// Unit and associative laws of flat/sing on random nested terms.
  struct LawReport {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string first_failure;
  };
  LawReport monad_laws(treefo::RankedAlphabet const& alphabet,
                       std::size_t count, std::uint32_t seed);

  /// Random well-sorted star-free expression of the given sort.
  treefo::StarFreeExpr random_expression(
      std::mt19937& rng, treefo::RankedAlphabet const& alphabet,
      treefo::SortedVarSet const& sort, std::size_t budget);

}  // namespace oracle
