#pragma once

// Deterministic bottom-up tree automata over ground trees.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treefo/trees.hpp"

namespace treefo {

  using State = std::size_t;

  class Dfta {
   public:
    /// (symbol index, argument states)
    using Key = std::pair<std::size_t, std::vector<State>>;

    Dfta() = default;
    Dfta(RankedAlphabet           alphabet,
         std::vector<std::string> state_names,
         std::map<Key, State>     transitions,
         std::vector<bool>        accepting);

    RankedAlphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t state_count() const noexcept {
      return names_.size();
    }
    std::string const& state_name(State q) const {
      return names_.at(q);
    }
    std::vector<std::string> const& state_names() const noexcept {
      return names_;
    }
    std::optional<State> find_state(std::string_view name) const;

    bool accepting(State q) const {
      return accepting_.at(q);
    }
    std::map<Key, State> const& transitions() const noexcept {
      return delta_;
    }
    std::optional<State> transition(std::size_t               symbol,
                                    std::vector<State> const& args) const;

    /// Every symbol has a transition for every argument tuple.
    bool is_complete() const;

    /// The bottom-up state of a ground tree; nullopt if the run gets stuck
    /// on a missing transition.
    std::optional<State> run(Tree const& t) const;
    bool                 member(Tree const& t) const;

   private:
    RankedAlphabet           alphabet_;
    std::vector<std::string> names_;
    std::map<Key, State>     delta_;
    std::vector<bool>        accepting_;
  };

  Dfta        parse_dfta_json(std::string_view text);
  Dfta        load_dfta(std::string const& path);
  std::string dfta_to_json(Dfta const& a);

  /// Routes missing transitions to a fresh rejecting sink. Returns the
  /// input unchanged when nothing is missing.
  Dfta complete(Dfta const& a);

  struct PruneResult {
    Dfta                     dfta;
    std::vector<std::string> removed;
  };
  PruneResult prune_unreachable(Dfta const& a);

  /// Least tree (in enumeration order) reaching each state, for reachable
  /// states.
  std::vector<std::optional<Tree>> least_representatives(Dfta const& a);

  struct Minimization {
    Dfta                              dfta;
    /// Least ground tree reaching each minimal state; also its name.
    std::vector<Tree>                 representatives;
    /// Input state -> minimal state; nullopt for unreachable states.
    std::vector<std::optional<State>> state_map;
    /// For p < q, a single-hole context over x0 telling them apart.
    std::map<std::pair<State, State>, Tree> separators;
    std::vector<std::string>                notes;
  };

  /// Prunes, completes, and merges context-indistinguishable states. States
  /// of the result are ordered and named by their least representative.
  Minimization minimize(Dfta const& a);

}  // namespace treefo
