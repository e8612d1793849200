#pragma once

// Unary polynomials, idempotents, localisations, minimal sets, traces and
// the type of a minimal algebra.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treefo/congruence.hpp"

namespace treefo {

  enum class TypeLabel { T, U, A, B, L, S };

  char        to_char(TypeLabel t);
  std::string describe(TypeLabel t);

  /// The unary operations of the clone together with the identity.
  std::vector<Operation> unary_polynomials(CloneAlgebra const& c);

  struct Idempotent {
    Operation  op;
    ElementSet image = 0;
  };

  /// Idempotent unary polynomials, one per image, ordered by image size and
  /// then by image elements.
  std::vector<Idempotent> idempotents(CloneAlgebra const& c);

  /// The operations of c that map tuples over s into s, restricted to s.
  /// Elements of the result are the elements of s in increasing order.
  CloneAlgebra localise(CloneAlgebra const& c, ElementSet s);

  /// At least two elements, and every unary polynomial is constant or a
  /// permutation.
  bool is_minimal_algebra(CloneAlgebra const& c);

  /// Requires a minimal algebra whose arity cap is at least 3.
  TypeLabel classify_minimal(CloneAlgebra const& c);

  struct TraceReport {
    ElementSet   elements = 0;
    TypeLabel    label = TypeLabel::T;
    std::size_t  divisor_size = 0;
  };

  struct MinimalSet {
    Idempotent               idempotent;
    std::vector<TraceReport> traces;
  };

  struct MinimalSetReport {
    Partition               alpha;
    Partition               beta;
    /// Separating idempotents, one per image.
    std::vector<Idempotent> separating;
    std::vector<MinimalSet> minimal_sets;
    /// Differences between image inclusion and inclusion of the
    /// localisations' operation sets among separating idempotents.
    std::vector<std::string> order_notes;
  };

  /// Requires alpha to be covered by beta in the congruence lattice.
  MinimalSetReport min_sets(CloneAlgebra const& c, Partition const& alpha,
                            Partition const& beta);

  /// T for singleton images, the type of a minimal localisation, and
  /// nullopt otherwise.
  std::optional<TypeLabel> idempotent_label(CloneAlgebra const& c,
                                            Idempotent const&   e);

  std::string set_to_string(ElementSet s, std::vector<std::string> const& names);

}  // namespace treefo
