#pragma once

// Necessary and sufficient conditions for first-order definability and
// the resulting three-valued verdict.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treefo/tct.hpp"

namespace treefo {

  /// The localisation of c at s built from the linear terms that map s
  /// into itself, closed under identification of variables. Requires the
  /// generators and constants of c, so c must come from build_syntactic or
  /// from_generators.
  CloneAlgebra preclone_localisation(CloneAlgebra const& c, ElementSet s);

  struct DivisorEntry {
    ElementSet        subset = 0;
    CloneAlgebra      localisation;
    CongruenceLattice lattice;
  };

  /// One entry per nonempty subset, ordered by size and then by elements.
  struct DivisorIndex {
    std::vector<DivisorEntry> entries;
  };

  DivisorIndex divisor_index(CloneAlgebra const& c);

  struct TraceWitness {
    ElementSet  subset = 0;  // the localisation, in elements of c
    Partition   alpha;
    Partition   beta;
    ElementSet  minimal_set = 0;  // in elements of the localisation
    ElementSet  trace = 0;        // in elements of the localisation
    TypeLabel   label = TypeLabel::T;
  };

  struct LocalReport {
    ElementSet                    subset = 0;
    std::vector<MinimalSetReport> reports;
  };

  struct NecessaryResult {
    bool                        pass = true;
    Aperiodicity                aperiodicity;
    std::optional<TraceWitness> trace;
    std::vector<LocalReport>    reports;
  };

  struct SemilatticeCertificate {
    ElementSet               subset = 0;
    Partition                congruence;
    /// Names of the divisor's elements, listed from the bottom.
    std::vector<std::string> order;
    std::vector<std::string> normal_forms;
  };

  struct SufficientFailure {
    ElementSet           subset = 0;
    Partition            congruence;
    std::string          reason;
    /// The offending operation and an argument tuple, when there is one.
    std::optional<Operation> op;
    std::vector<Element>     args;
    Element                  value = 0;
  };

  struct SufficientResult {
    bool                                pass = true;
    Aperiodicity                        aperiodicity;
    std::vector<SemilatticeCertificate> certificates;
    std::vector<SufficientFailure>      failures;
  };

  NecessaryResult  check_necessary(CloneAlgebra const& c,
                                   DivisorIndex const& index);
  SufficientResult check_sufficient(CloneAlgebra const& c,
                                    DivisorIndex const& index);
  NecessaryResult  check_necessary(CloneAlgebra const& c);
  SufficientResult check_sufficient(CloneAlgebra const& c);

  enum class Status { NotDefinable, Definable, Unknown };

  std::string to_string(Status s);

  struct Verdict {
    Status                          status = Status::Unknown;
    NecessaryResult                 necessary;
    std::optional<SufficientResult> sufficient;
    std::vector<std::string>        caveats;
  };

  Verdict verdict(CloneAlgebra const& c);

  /// Semilattice structure of an algebra: an order under which every
  /// operation is a meet of variables, possibly with a constant. Returns a
  /// certificate or the first failure.
  std::variant<SemilatticeCertificate, SufficientFailure> semilattice_check(
      CloneAlgebra const& d);

}  // namespace treefo
