#pragma once

// Congruences of the finite algebra on the carrier of a clone.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treefo/clone.hpp"

namespace treefo {

  /// An equivalence relation on {0..n-1}, stored as block numbers in
  /// canonical form: blocks are numbered in order of their least element.
  class Partition {
   public:
    Partition() = default;
    explicit Partition(std::vector<std::size_t> block_of);

    static Partition bottom(std::size_t n);
    static Partition top(std::size_t n);

    std::size_t size() const noexcept {
      return block_of_.size();
    }
    std::size_t block_of(Element e) const {
      return block_of_.at(e);
    }
    std::vector<std::size_t> const& block_vector() const noexcept {
      return block_of_;
    }
    std::size_t                       block_count() const;
    std::vector<std::vector<Element>> blocks() const;
    bool related(Element a, Element b) const {
      return block_of_.at(a) == block_of_.at(b);
    }

    /// this <= other: every block of this lies inside a block of other.
    bool      refines(Partition const& other) const;
    Partition join(Partition const& other) const;
    Partition meet(Partition const& other) const;
    /// The restriction to the elements of `domain`, renumbered 0..|domain|-1.
    Partition restrict_to(std::vector<Element> const& domain) const;

    friend bool operator==(Partition const&, Partition const&) = default;
    friend auto operator<=>(Partition const&, Partition const&) = default;

   private:
    std::vector<std::size_t> block_of_;
  };

  /// Block notation such as {1,0}{⊥}.
  std::string to_string(Partition const& p,
                        std::vector<std::string> const& names);

  /// A generator application showing that a partition is not preserved:
  /// args_a and args_b are related coordinatewise but the values are not.
  struct Violation {
    std::size_t          generator = 0;
    std::vector<Element> args_a;
    std::vector<Element> args_b;
    Element              value_a = 0;
    Element              value_b = 0;
  };

  /// Generator tables of positive arity; these together with the constants
  /// determine the congruences.
  std::vector<Operation const*> congruence_generators(CloneAlgebra const& c);

  /// First violation in the order: generators as listed, argument tuples
  /// lexicographically, changed position from last to first.
  std::optional<Violation> find_violation(CloneAlgebra const& c,
                                          Partition const&    p);
  bool is_congruence(CloneAlgebra const& c, Partition const& p);

  /// The least congruence relating a and b.
  Partition principal_congruence(CloneAlgebra const& c, Element a, Element b);

  struct CongruenceLattice {
    /// Sorted from bottom (most blocks) to top.
    std::vector<Partition>                           congruences;
    /// (i, j) with congruences[i] covered by congruences[j].
    std::vector<std::pair<std::size_t, std::size_t>> covers;
  };

  CongruenceLattice congruence_lattice(CloneAlgebra const& c);
  bool              is_simple(CloneAlgebra const& c);

  /// The algebra induced on the blocks of a congruence.
  CloneAlgebra quotient(CloneAlgebra const& c, Partition const& theta);

}  // namespace treefo
