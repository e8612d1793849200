#include "treefo/starfree.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace treefo {

  StarFreeExpr StarFreeExpr::empty(SortedVarSet sort) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Empty;
    n->sort = make_sort(std::move(sort));
    return StarFreeExpr(std::move(n));
  }

  StarFreeExpr StarFreeExpr::letter(Symbol a, std::vector<std::string> vars) {
    if (vars.size() != a.rank) {
      throw ExpressionError("letter " + a.name + " of rank "
                            + std::to_string(a.rank) + " given "
                            + std::to_string(vars.size()) + " variables");
    }
    auto sorted = make_sort(vars);
    if (sorted.size() != vars.size()) {
      throw ExpressionError("letter " + a.name + " repeats a variable");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Letter;
    n->sort = std::move(sorted);
    n->symbol = std::move(a);
    n->vars = std::move(vars);
    return StarFreeExpr(std::move(n));
  }

  StarFreeExpr StarFreeExpr::unite(StarFreeExpr const& a,
                                   StarFreeExpr const& b) {
    if (a.sort() != b.sort()) {
      throw ExpressionError("union of expressions with different sorts: "
                            + to_string(a) + " and " + to_string(b));
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Union;
    n->sort = a.sort();
    n->children = {a, b};
    return StarFreeExpr(std::move(n));
  }

  StarFreeExpr StarFreeExpr::complement(StarFreeExpr const& a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Complement;
    n->sort = a.sort();
    n->children = {a};
    return StarFreeExpr(std::move(n));
  }

  StarFreeExpr StarFreeExpr::concat(StarFreeExpr const& a, std::string z,
                                    StarFreeExpr const& b) {
    auto const& sa = a.sort();
    if (std::find(sa.begin(), sa.end(), z) == sa.end()) {
      throw ExpressionError("concatenation at " + z
                            + " but the left expression " + to_string(a)
                            + " does not have " + z + " in its sort");
    }
    SortedVarSet eta;
    for (auto const& v : sa) {
      if (v != z) {
        eta.push_back(v);
      }
    }
    for (auto const& v : b.sort()) {
      if (std::find(eta.begin(), eta.end(), v) != eta.end()) {
        throw ExpressionError("concatenation at " + z + " shares variable "
                              + v + " between both sides");
      }
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Concat;
    eta.insert(eta.end(), b.sort().begin(), b.sort().end());
    n->sort = make_sort(std::move(eta));
    n->hole = std::move(z);
    n->children = {a, b};
    return StarFreeExpr(std::move(n));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::string join(std::vector<std::string> const& xs) {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i > 0 ? "," : "") + xs[i];
      }
      return out;
    }

    bool is_punct(char c) {
      return std::isspace(static_cast<unsigned char>(c)) || c == '('
             || c == ')' || c == '[' || c == ']' || c == '{' || c == '}'
             || c == ',' || c == '+' || c == '~' || c == '.';
    }

    class ExprParser {
     public:
      ExprParser(std::string_view text, RankedAlphabet const& alphabet)
          : text_(text), alphabet_(alphabet) {}

      StarFreeExpr parse() {
        StarFreeExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
          fail("trailing input");
        }
        return e;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError("expression syntax: " + what + " at offset "
                         + std::to_string(pos_));
      }

      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
          ++pos_;
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'");
        }
      }

      std::string identifier() {
        skip_ws();
        std::size_t const start = pos_;
        while (pos_ < text_.size() && !is_punct(text_[pos_])) {
          ++pos_;
        }
        if (start == pos_) {
          fail("expected identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      std::string variable() {
        std::string v = identifier();
        if (alphabet_.find(v)) {
          throw ExpressionError("variable " + v + " is also a symbol");
        }
        return v;
      }

      std::vector<std::string> var_list(char close) {
        std::vector<std::string> vs;
        if (accept(close)) {
          return vs;
        }
        do {
          vs.push_back(variable());
        } while (accept(','));
        expect(close);
        return vs;
      }

      StarFreeExpr expr() {
        StarFreeExpr e = concat();
        while (accept('+')) {
          e = StarFreeExpr::unite(e, concat());
        }
        return e;
      }

      StarFreeExpr concat() {
        StarFreeExpr e = unary();
        while (accept('.')) {
          std::string z = variable();
          e = StarFreeExpr::concat(e, std::move(z), unary());
        }
        return e;
      }

      StarFreeExpr unary() {
        if (accept('~')) {
          return StarFreeExpr::complement(unary());
        }
        return atom();
      }

      StarFreeExpr atom() {
        if (accept('(')) {
          StarFreeExpr e = expr();
          expect(')');
          return e;
        }
        std::string const name = identifier();
        if (name == "empty") {
          if (accept('{')) {
            return StarFreeExpr::empty(var_list('}'));
          }
          return StarFreeExpr::empty();
        }
        auto idx = alphabet_.find(name);
        if (!idx) {
          throw InputError("unknown symbol '" + name + "' in expression");
        }
        Symbol const& a = alphabet_[*idx];
        if (accept('[')) {
          return StarFreeExpr::letter(a, var_list(']'));
        }
        return StarFreeExpr::letter(a, canonical_variables(a.rank));
      }

      std::string_view      text_;
      RankedAlphabet const& alphabet_;
      std::size_t           pos_ = 0;
    };

  }  // namespace

  StarFreeExpr parse_starfree(std::string_view      text,
                              RankedAlphabet const& alphabet) {
    return ExprParser(text, alphabet).parse();
  }

  StarFreeExpr load_starfree(std::string const&    path,
                             RankedAlphabet const& alphabet) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_starfree(ss.str(), alphabet);
  }

  std::string to_string(StarFreeExpr const& e) {
    using K = StarFreeExpr::Kind;
    switch (e.kind()) {
      case K::Empty:
        return e.sort().empty() ? "empty" : "empty{" + join(e.sort()) + "}";
      case K::Letter:
        return e.symbol().rank == 0
                   ? e.symbol().name
                   : e.symbol().name + "[" + join(e.letter_vars()) + "]";
      case K::Union:
        return "(" + to_string(e.children()[0]) + " + "
               + to_string(e.children()[1]) + ")";
      case K::Complement:
        return "~" + to_string(e.children()[0]);
      case K::Concat:
        return "(" + to_string(e.children()[0]) + " ." + e.hole() + " "
               + to_string(e.children()[1]) + ")";
    }
    return "";
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Depth of the node holding variable x, the root being at depth 1;
    // 0 when x does not occur.
    std::size_t hole_depth(Tree const& t, std::string const& x) {
      if (t.is_variable()) {
        return t.variable_name() == x ? 1 : 0;
      }
      for (auto const& c : t.children()) {
        if (std::size_t const d = hole_depth(c, x); d != 0) {
          return d + 1;
        }
      }
      return 0;
    }

    class Evaluator {
     public:
      Evaluator(RankedAlphabet const& alphabet, std::size_t depth)
          : alphabet_(alphabet), depth_(depth) {}

      std::vector<Tree> const& eval(StarFreeExpr const& e) {
        auto it = memo_.find(e.id());
        if (it != memo_.end()) {
          return it->second;
        }
        return memo_.emplace(e.id(), compute(e)).first->second;
      }

     private:
      std::vector<Tree> const& universe(SortedVarSet const& sort) {
        auto it = universe_.find(sort);
        if (it == universe_.end()) {
          it = universe_
                   .emplace(sort, enumerate_trees(alphabet_, sort, depth_))
                   .first;
        }
        return it->second;
      }

      std::vector<Tree> compute(StarFreeExpr const& e) {
        using K = StarFreeExpr::Kind;
        EnumerationOrder const less;
        std::vector<Tree>      out;
        switch (e.kind()) {
          case K::Empty:
            break;
          case K::Letter: {
            if (!alphabet_.find(e.symbol().name)
                || alphabet_[*alphabet_.find(e.symbol().name)]
                       != e.symbol()) {
              throw InputError("letter " + e.symbol().name
                               + " is not in the alphabet");
            }
            std::vector<Tree> cs;
            for (auto const& v : e.letter_vars()) {
              cs.push_back(Tree::variable(v));
            }
            Tree t = Tree::node(e.symbol(), std::move(cs));
            if (t.height() <= depth_) {
              out.push_back(std::move(t));
            }
            break;
          }
          case K::Union: {
            auto const& a = eval(e.children()[0]);
            auto const& b = eval(e.children()[1]);
            std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                           std::back_inserter(out), less);
            break;
          }
          case K::Complement: {
            auto const& u = universe(e.sort());
            auto const& a = eval(e.children()[0]);
            std::set_difference(u.begin(), u.end(), a.begin(), a.end(),
                                std::back_inserter(out), less);
            break;
          }
          case K::Concat: {
            auto const& a = eval(e.children()[0]);
            auto const& b = eval(e.children()[1]);
            // a plug of height h at hole depth d reaches height d - 1 + h,
            // so only short enough plugs are tried
            std::vector<std::vector<Tree const*>> by_height(depth_ + 1);
            for (auto const& t : b) {
              by_height[t.height()].push_back(&t);
            }
            std::map<std::string, Tree> binding;
            for (auto const& s : a) {
              std::size_t const d = hole_depth(s, e.hole());
              if (d == 0) {
                if (!b.empty()) {
                  out.push_back(s);
                }
                continue;
              }
              for (std::size_t h = 1; h + d - 1 <= depth_; ++h) {
                for (Tree const* t : by_height[h]) {
                  binding.insert_or_assign(e.hole(), *t);
                  out.push_back(substitute(s, binding));
                }
              }
            }
            std::sort(out.begin(), out.end(), less);
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
          }
        }
        return out;
      }

      RankedAlphabet const&                             alphabet_;
      std::size_t                                       depth_;
      std::map<void const*, std::vector<Tree>>          memo_;
      std::map<SortedVarSet, std::vector<Tree>>         universe_;
    };

  }  // namespace

  std::vector<Tree> eval_bounded(StarFreeExpr const&   e,
                                 RankedAlphabet const& alphabet,
                                 std::size_t           depth) {
    Evaluator ev(alphabet, depth);
    return ev.eval(e);
  }

  LanguageComparison compare_language(StarFreeExpr const& e, Dfta const& a,
                                      std::size_t depth) {
    if (!e.sort().empty()) {
      throw ExpressionError("comparison needs an expression of empty sort");
    }
    std::vector<Tree> const lhs = eval_bounded(e, a.alphabet(), depth);
    std::vector<Tree>       rhs;
    for (auto& t : enumerate_trees(a.alphabet(), {}, depth)) {
      if (a.member(t)) {
        rhs.push_back(std::move(t));
      }
    }
    EnumerationOrder const less;
    LanguageComparison     r;
    r.depth = depth;
    r.expression_count = lhs.size();
    r.automaton_count = rhs.size();
    std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                        std::back_inserter(r.only_expression), less);
    std::set_difference(rhs.begin(), rhs.end(), lhs.begin(), lhs.end(),
                        std::back_inserter(r.only_automaton), less);
    return r;
  }

}  // namespace treefo
