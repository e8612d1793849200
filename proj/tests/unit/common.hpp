#pragma once

#include <string>

#include "treefo/automaton.hpp"
#include "treefo/clone.hpp"

namespace unit {

  inline treefo::Dfta fixture(std::string const& name) {
    return treefo::load_dfta(std::string(FIXTURE_DIR) + "/" + name + ".json");
  }

  // The even-depth algebra with elements named 1, 0 and ⊥.
  inline treefo::CloneAlgebra even_depth(std::size_t max_arity = 0) {
    auto c = treefo::build_syntactic(fixture("even_depth"), max_arity);
    treefo::apply_names(c, {{"c", "1"}, {"a(c,c)", "0"}, {"a(a(c,c),c)", "⊥"}});
    return c;
  }

  inline treefo::Element element(treefo::CloneAlgebra const& c,
                                 std::string const&          name) {
    return *c.find(name);
  }

}  // namespace unit
