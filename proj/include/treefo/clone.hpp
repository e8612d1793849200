#pragma once

// Finite clones of operation tables: the closure engine, the syntactic
// algebra of a tree language, and its unary semigroup.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treefo/automaton.hpp"
#include "treefo/op_table.hpp"

namespace treefo {

  /// Input of the closure engine.
  ///
  /// The engine enumerates term functions f(t_1, ..., t_r) where f is a
  /// generator and each t_i is a constant, a variable, or a smaller term.
  /// Each term is tracked on tuples over `domain` together with the image
  /// of its linear form (every variable occurrence renamed apart) on such
  /// tuples. A term is kept in the result when that image lies inside the
  /// domain, so a proper domain yields the identifications of the linear
  /// terms that map the domain into itself.
  struct ClosureRequest {
    std::size_t                           carrier_size = 0;
    ElementSet                            domain = 0;
    std::vector<Operation>                generators;
    std::vector<std::pair<Element, Tree>> constants;
    std::size_t                           max_arity = 3;
    /// Only terms in which every variable occurs exactly once.
    bool        linear = false;
    std::size_t budget = 2'000'000;
  };

  /// result[n] for n = 0..max_arity holds the operations of arity n in which
  /// every variable occurs, restricted to the domain (values renamed to
  /// positions in the domain), deduplicated and sorted by table.
  std::vector<std::vector<Operation>> close_operations(ClosureRequest const& req);

  struct CloneAlgebra {
    std::vector<std::string>         names;
    std::vector<std::optional<Tree>> representatives;
    /// Acceptance per element; empty for algebras not built from a language.
    std::vector<bool>                accepting;
    RankedAlphabet                   alphabet;
    /// Images of the letters, including the rank-0 ones.
    std::vector<Operation>              generators;
    /// ops[n] for n = 0..max_arity; ops[0] are the constants.
    std::vector<std::vector<Operation>> ops;
    /// Unary operations given by linear terms.
    std::vector<Operation>                      linear_unary;
    std::map<std::pair<Element, Element>, Tree> separators;
    std::size_t                                 max_arity = 0;

    std::size_t size() const noexcept {
      return names.size();
    }
    std::optional<Element> find(std::string_view name) const;

    /// Bottom-up evaluation of a ground tree through the letter tables.
    Element eval_product(Tree const& t) const;
  };

  std::size_t default_max_arity(RankedAlphabet const& alphabet);

  /// The reduced syntactic algebra of the language of a, as a clone of
  /// operation tables of arity at most max_arity (0 selects the default).
  CloneAlgebra build_syntactic(Dfta const& a, std::size_t max_arity = 0);

  /// The clone generated by the given tables over {0..carrier-1} together
  /// with all constants.
  CloneAlgebra from_generators(std::size_t              carrier,
                               std::vector<OpTable>     generators,
                               std::size_t              max_arity = 3,
                               std::vector<std::string> names = {});

  /// Renames elements whose current name appears as a key.
  void apply_names(CloneAlgebra&                             c,
                   std::map<std::string, std::string> const& aliases);

  /// Unary linear operations under composition: (ab)(x) = a(b(x)).
  struct UnarySemigroup {
    std::size_t                           carrier = 0;
    std::vector<Operation>                elements;
    std::vector<std::vector<std::size_t>> product;
  };

  UnarySemigroup sg(CloneAlgebra const& c);

  struct Aperiodicity {
    bool aperiodic = true;
    /// Least n with f^n = f^{n+1} for every aperiodic f.
    std::size_t bound = 1;
    std::optional<std::size_t> witness;
    std::size_t                period = 1;
    std::vector<OpTable>       cycle;
  };

  Aperiodicity is_aperiodic(UnarySemigroup const& s);

}  // namespace treefo
