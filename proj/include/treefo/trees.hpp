#pragma once

// Ranked alphabets, finite terms with variables, and the flat/sing
// substitution structure on them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "treefo/errors.hpp"

namespace treefo {

  /// Orders identifiers by their non-numeric prefix and then by the value of
  /// a trailing digit run, so that x2 < x10.
  bool natural_less(std::string_view a, std::string_view b);

  struct NaturalLess {
    bool operator()(std::string_view a, std::string_view b) const {
      return natural_less(a, b);
    }
  };

  /// The canonical variable names x0, ..., x{n-1}.
  std::vector<std::string> canonical_variables(std::size_t n);

  struct Symbol {
    std::string name;
    unsigned    rank = 0;

    friend bool operator==(Symbol const&, Symbol const&) = default;
    friend auto operator<=>(Symbol const&, Symbol const&) = default;
  };

  /// A finite set of symbols with pairwise distinct names, kept sorted by
  /// name. At least one symbol must have rank 0.
  class RankedAlphabet {
   public:
    RankedAlphabet() = default;
    explicit RankedAlphabet(std::vector<Symbol> symbols);

    std::vector<Symbol> const& symbols() const noexcept {
      return symbols_;
    }
    std::size_t size() const noexcept {
      return symbols_.size();
    }
    Symbol const& operator[](std::size_t i) const {
      return symbols_[i];
    }

    std::optional<std::size_t> find(std::string_view name) const;
    unsigned                   max_rank() const noexcept;

    friend bool operator==(RankedAlphabet const&, RankedAlphabet const&)
        = default;

   private:
    std::vector<Symbol> symbols_;
  };

  /// Sorted, duplicate-free variable list.
  using SortedVarSet = std::vector<std::string>;

  SortedVarSet make_sort(std::vector<std::string> vars);

  /// A finite term whose inner nodes carry labels of type L and whose
  /// leaves may be variables. The number of children of a labelled node is
  /// fixed by the label (see arity_of). Terms are immutable handles, so
  /// copies share structure.
  template <class L>
  class Term {
   public:
    using label_type = L;

    static Term variable(std::string name) {
      auto n = std::make_shared<Node>();
      n->head = Var{std::move(name)};
      return Term(std::move(n));
    }

    static Term node(L label, std::vector<Term> children);

    bool is_variable() const noexcept {
      return std::holds_alternative<Var>(n_->head);
    }
    std::string const& variable_name() const {
      return std::get<Var>(n_->head).name;
    }
    L const& label() const {
      return std::get<L>(n_->head);
    }
    std::vector<Term> const& children() const noexcept {
      return n_->children;
    }
    /// A leaf has height 1.
    std::size_t height() const noexcept {
      return n_->height;
    }
    std::size_t size() const noexcept {
      return n_->size;
    }

    friend bool operator==(Term const& a, Term const& b) {
      if (a.n_ == b.n_) {
        return true;
      }
      return a.n_->height == b.n_->height && a.n_->size == b.n_->size
             && a.n_->head == b.n_->head && a.n_->children == b.n_->children;
    }

   private:
    struct Var {
      std::string name;
      friend bool operator==(Var const&, Var const&) = default;
    };
    struct Node {
      std::variant<Var, L> head;
      std::vector<Term>    children;
      std::size_t          height = 1;
      std::size_t          size   = 1;
    };

    explicit Term(std::shared_ptr<Node const> n) : n_(std::move(n)) {}

    std::shared_ptr<Node const> n_;
  };

  using Tree = Term<Symbol>;

  ////////////////////////////////////////////////////////////////////////
  // Variables and arities
  ////////////////////////////////////////////////////////////////////////

  template <class L>
  void collect_variables(Term<L> const& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
      out.push_back(t.variable_name());
      return;
    }
    for (auto const& c : t.children()) {
      collect_variables(c, out);
    }
  }

  /// Distinct variables of t in canonical order.
  template <class L>
  SortedVarSet variables(Term<L> const& t) {
    std::vector<std::string> vs;
    collect_variables(t, vs);
    return make_sort(std::move(vs));
  }

  /// Variable occurrences in preorder, repetitions included.
  template <class L>
  std::vector<std::string> variable_occurrences(Term<L> const& t) {
    std::vector<std::string> vs;
    collect_variables(t, vs);
    return vs;
  }

  inline std::size_t arity_of(Symbol const& s) {
    return s.rank;
  }
  inline std::vector<std::string> binding_order(Symbol const& s) {
    return canonical_variables(s.rank);
  }

  template <class L>
  std::size_t arity_of(Term<L> const& t) {
    return variables(t).size();
  }
  /// The i-th child of a node labelled by t is substituted for the i-th
  /// variable of t in canonical order.
  template <class L>
  std::vector<std::string> binding_order(Term<L> const& t) {
    return variables(t);
  }

  template <class L>
  Term<L> Term<L>::node(L label, std::vector<Term> children) {
    std::size_t const n = arity_of(label);
    if (children.size() != n) {
      throw StructuralError("node with arity " + std::to_string(n)
                            + " given " + std::to_string(children.size())
                            + " children");
    }
    auto node = std::make_shared<Node>();
    node->head = std::move(label);
    for (auto const& c : children) {
      node->height = std::max(node->height, c.height() + 1);
      node->size += c.size();
    }
    node->children = std::move(children);
    return Term(std::move(node));
  }

  ////////////////////////////////////////////////////////////////////////
  // Monad structure
  ////////////////////////////////////////////////////////////////////////

  template <class L>
  Term<L> substitute(Term<L> const&                         t,
                     std::map<std::string, Term<L>> const& bindings) {
    if (t.is_variable()) {
      auto it = bindings.find(t.variable_name());
      return it == bindings.end() ? t : it->second;
    }
    std::vector<Term<L>> cs;
    cs.reserve(t.children().size());
    for (auto const& c : t.children()) {
      cs.push_back(substitute(c, bindings));
    }
    return Term<L>::node(t.label(), std::move(cs));
  }

  /// Applies f to every label, keeping variables.
  template <class L, class F>
  auto map_labels(Term<L> const& t, F const& f)
      -> Term<std::decay_t<decltype(f(std::declval<L const&>()))>> {
    using R = Term<std::decay_t<decltype(f(std::declval<L const&>()))>>;
    if (t.is_variable()) {
      return R::variable(t.variable_name());
    }
    std::vector<R> cs;
    cs.reserve(t.children().size());
    for (auto const& c : t.children()) {
      cs.push_back(map_labels(c, f));
    }
    return R::node(f(t.label()), std::move(cs));
  }

  /// Substitutes every inner term into its parent.
  template <class L>
  Term<L> flat(Term<Term<L>> const& t) {
    if (t.is_variable()) {
      return Term<L>::variable(t.variable_name());
    }
    Term<L> const& inner = t.label();
    auto const     order = binding_order(inner);
    std::map<std::string, Term<L>> bindings;
    for (std::size_t i = 0; i < order.size(); ++i) {
      bindings.emplace(order[i], flat(t.children()[i]));
    }
    return substitute(inner, bindings);
  }

  /// The one-node term label(v0, ..., v{n-1}) over the label's own
  /// binding variables.
  template <class L>
  Term<L> sing(L const& label) {
    std::vector<Term<L>> cs;
    for (auto const& v : binding_order(label)) {
      cs.push_back(Term<L>::variable(v));
    }
    return Term<L>::node(label, std::move(cs));
  }

  ////////////////////////////////////////////////////////////////////////
  // Tree utilities
  ////////////////////////////////////////////////////////////////////////

  /// Membership in the linear terms of the given sort: every variable of
  /// the sort occurs exactly once, no other variable occurs, and the term
  /// is not a bare variable.
  template <class L>
  bool is_linear(Term<L> const& t, SortedVarSet const& sort) {
    if (t.is_variable()) {
      return false;
    }
    auto occ = variable_occurrences(t);
    std::sort(occ.begin(), occ.end(), NaturalLess{});
    return occ == sort;
  }

  template <class L>
  bool is_linear(Term<L> const& t) {
    return is_linear(t, variables(t));
  }

  /// Membership in the non-linear terms of the given sort: the variables
  /// occurring in t are exactly those of the sort.
  template <class L>
  bool is_nonlinear_member(Term<L> const& t, SortedVarSet const& sort) {
    return variables(t) == sort;
  }

  bool is_ground(Tree const& t);

  /// Enumeration order: height, then root label (symbols by name before
  /// variables), then children compared from the last one to the first.
  std::strong_ordering compare_trees(Tree const& a, Tree const& b);

  struct EnumerationOrder {
    bool operator()(Tree const& a, Tree const& b) const {
      return compare_trees(a, b) < 0;
    }
  };

  /// Nested-parentheses text form, e.g. a(b(c,c),c).
  std::string to_string(Tree const& t);

  /// Parses the nested-parentheses form. Identifiers are resolved against
  /// the alphabet first and then against the declared variables.
  Tree parse_tree(std::string_view       text,
                  RankedAlphabet const&  alphabet,
                  SortedVarSet const&    sort = {});

  /// All linear trees of the given sort with height at most depth, in
  /// enumeration order, each exactly once.
  std::vector<Tree> enumerate_trees(RankedAlphabet const& alphabet,
                                    SortedVarSet const&   sort,
                                    std::size_t           depth);

  /// Renames variables according to the map; unmapped variables are kept.
  Tree rename_variables(Tree const&                                    t,
                        std::map<std::string, std::string> const& names);

}  // namespace treefo
