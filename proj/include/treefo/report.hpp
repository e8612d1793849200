#pragma once

// Report documents shared by the command-line tool and the tests. Every
// document is an ordered JSON value; the text form is a line-oriented
// rendering of the same value.

#include <cstddef>
#include <string>

#include <json.hpp>

#include "treefo/definability.hpp"
#include "treefo/starfree.hpp"

namespace treefo {

  using Json = nlohmann::ordered_json;

  inline constexpr char        kToolVersion[] = "0.3.1";
  inline constexpr int         kSchemaVersion = 1;

  struct RunConfig {
    std::string command;
    std::string input;
    std::size_t max_arity = 0;  // 0: max(3, maximal rank)
    std::size_t oracle_depth = 5;
    std::string format = "text";
    std::string names;
  };

  /// schema_version, tool version and the configuration.
  Json header_json(RunConfig const& cfg);

  Json carrier_json(CloneAlgebra const& c);
  Json semigroup_json(CloneAlgebra const& c);
  /// Congruences, covering pairs, simplicity and, for every pair of
  /// elements, whether merging just that pair is a congruence.
  Json lattice_json(CloneAlgebra const& c, CongruenceLattice const& lat);
  Json idempotents_json(CloneAlgebra const& c);
  Json minsets_json(CloneAlgebra const& c, MinimalSetReport const& r);
  /// All minimal-set reports of c, one per covering pair.
  Json all_minsets_json(CloneAlgebra const& c, CongruenceLattice const& lat);
  Json divisors_json(CloneAlgebra const& c, DivisorIndex const& index);
  Json verdict_json(CloneAlgebra const& c, Verdict const& v);
  Json comparison_json(LanguageComparison const& r);

  /// Element names of a divisor: the subset's names grouped by the blocks
  /// of the congruence.
  std::vector<std::string> divisor_names(CloneAlgebra const& c,
                                         ElementSet          subset,
                                         Partition const&    theta);

  std::string render_text(Json const& doc);
  std::string render(Json const& doc, std::string const& format);

}  // namespace treefo
