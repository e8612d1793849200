#pragma once

// Star-free tree expressions and their values restricted to bounded height.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "treefo/automaton.hpp"

namespace treefo {

  /// An immutable, sort-checked expression. The constructors throw
  /// ExpressionError when the sort discipline is violated.
  class StarFreeExpr {
   public:
    enum class Kind { Empty, Letter, Union, Complement, Concat };

    static StarFreeExpr empty(SortedVarSet sort = {});
    /// vars enumerates the letter's sort, one variable per argument.
    static StarFreeExpr letter(Symbol a, std::vector<std::string> vars);
    static StarFreeExpr unite(StarFreeExpr const& a, StarFreeExpr const& b);
    static StarFreeExpr complement(StarFreeExpr const& a);
    /// a must have z in its sort; the rest of it must be disjoint from the
    /// sort of b.
    static StarFreeExpr concat(StarFreeExpr const& a, std::string z,
                               StarFreeExpr const& b);

    Kind                kind() const noexcept { return n_->kind; }
    SortedVarSet const& sort() const noexcept { return n_->sort; }
    Symbol const&       symbol() const { return n_->symbol; }
    std::vector<std::string> const& letter_vars() const { return n_->vars; }
    std::string const&  hole() const { return n_->hole; }
    std::vector<StarFreeExpr> const& children() const { return n_->children; }

    /// Identity of the shared node, used for memoisation.
    void const* id() const noexcept { return n_.get(); }

   private:
    struct Node {
      Kind                      kind = Kind::Empty;
      SortedVarSet              sort;
      Symbol                    symbol;
      std::vector<std::string>  vars;
      std::string               hole;
      std::vector<StarFreeExpr> children;
    };
    explicit StarFreeExpr(std::shared_ptr<Node const> n) : n_(std::move(n)) {}
    std::shared_ptr<Node const> n_;
  };

  /// Grammar:
  ///   expr   := concat ('+' concat)*
  ///   concat := unary ('.' IDENT unary)*      (left associative)
  ///   unary  := '~' unary | atom
  ///   atom   := 'empty' ('{' vars '}')? | IDENT ('[' vars ']')? | '(' expr ')'
  /// A letter without brackets uses x0, ..., x{n-1}.
  StarFreeExpr parse_starfree(std::string_view text,
                              RankedAlphabet const& alphabet);
  StarFreeExpr load_starfree(std::string const& path,
                             RankedAlphabet const& alphabet);

  std::string to_string(StarFreeExpr const& e);

  /// The value of e intersected with the trees of height at most depth, in
  /// enumeration order. Complements are taken inside that bounded universe.
  std::vector<Tree> eval_bounded(StarFreeExpr const&   e,
                                 RankedAlphabet const& alphabet,
                                 std::size_t           depth);

  struct LanguageComparison {
    std::size_t       depth = 0;
    std::size_t       expression_count = 0;
    std::size_t       automaton_count = 0;
    std::vector<Tree> only_expression;
    std::vector<Tree> only_automaton;

    bool agree() const {
      return only_expression.empty() && only_automaton.empty();
    }
  };

  /// Requires e of empty sort over the automaton's alphabet.
  LanguageComparison compare_language(StarFreeExpr const& e, Dfta const& a,
                                      std::size_t depth);

}  // namespace treefo
