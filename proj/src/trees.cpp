#include "treefo/trees.hpp"

#include <cctype>
#include <cstdint>

namespace treefo {

  namespace {

    // Splits an identifier into its prefix and a trailing run of digits.
    std::pair<std::string_view, std::string_view> split_suffix(
        std::string_view s) {
      std::size_t i = s.size();
      while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) {
        --i;
      }
      return {s.substr(0, i), s.substr(i)};
    }

    std::string_view strip_zeros(std::string_view d) {
      std::size_t i = 0;
      while (i + 1 < d.size() && d[i] == '0') {
        ++i;
      }
      return d.substr(i);
    }

  }  // namespace

  bool natural_less(std::string_view a, std::string_view b) {
    auto [pa, da] = split_suffix(a);
    auto [pb, db] = split_suffix(b);
    if (pa != pb) {
      return pa < pb;
    }
    if (da.empty() != db.empty()) {
      return da.empty();
    }
    auto za = strip_zeros(da);
    auto zb = strip_zeros(db);
    if (za.size() != zb.size()) {
      return za.size() < zb.size();
    }
    if (za != zb) {
      return za < zb;
    }
    return a < b;
  }

  std::vector<std::string> canonical_variables(std::size_t n) {
    std::vector<std::string> vs;
    vs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back("x" + std::to_string(i));
    }
    return vs;
  }

  SortedVarSet make_sort(std::vector<std::string> vars) {
    std::sort(vars.begin(), vars.end(), NaturalLess{});
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }

  RankedAlphabet::RankedAlphabet(std::vector<Symbol> symbols)
      : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end(),
              [](Symbol const& x, Symbol const& y) { return x.name < y.name; });
    bool has_leaf = false;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      auto const& s = symbols_[i];
      if (s.name.empty()) {
        throw InputError("empty symbol name");
      }
      for (char ch : s.name) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '('
            || ch == ')' || ch == ',') {
          throw InputError("symbol name '" + s.name
                           + "' contains a reserved character");
        }
      }
      if (i > 0 && symbols_[i - 1].name == s.name) {
        throw InputError("duplicate symbol '" + s.name + "'");
      }
      has_leaf = has_leaf || s.rank == 0;
    }
    if (!has_leaf) {
      throw InputError("alphabet has no symbol of rank 0");
    }
  }

  std::optional<std::size_t> RankedAlphabet::find(
      std::string_view name) const {
    auto it = std::lower_bound(
        symbols_.begin(), symbols_.end(), name,
        [](Symbol const& s, std::string_view n) { return s.name < n; });
    if (it == symbols_.end() || it->name != name) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  unsigned RankedAlphabet::max_rank() const noexcept {
    unsigned r = 0;
    for (auto const& s : symbols_) {
      r = std::max(r, s.rank);
    }
    return r;
  }

  bool is_ground(Tree const& t) {
    if (t.is_variable()) {
      return false;
    }
    for (auto const& c : t.children()) {
      if (!is_ground(c)) {
        return false;
      }
    }
    return true;
  }

  std::strong_ordering compare_trees(Tree const& a, Tree const& b) {
    if (auto c = a.height() <=> b.height(); c != 0) {
      return c;
    }
    if (a.is_variable() != b.is_variable()) {
      return a.is_variable() ? std::strong_ordering::greater
                             : std::strong_ordering::less;
    }
    if (a.is_variable()) {
      auto const& x = a.variable_name();
      auto const& y = b.variable_name();
      if (x == y) {
        return std::strong_ordering::equal;
      }
      return natural_less(x, y) ? std::strong_ordering::less
                                : std::strong_ordering::greater;
    }
    if (auto c = a.label().name <=> b.label().name; c != 0) {
      return c;
    }
    if (auto c = a.label().rank <=> b.label().rank; c != 0) {
      return c;
    }
    auto const& ca = a.children();
    auto const& cb = b.children();
    for (std::size_t i = ca.size(); i-- > 0;) {
      if (auto c = compare_trees(ca[i], cb[i]); c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  namespace {

    void write_tree(Tree const& t, std::string& out) {
      if (t.is_variable()) {
        out += t.variable_name();
        return;
      }
      out += t.label().name;
      if (t.children().empty()) {
        return;
      }
      out += '(';
      bool first = true;
      for (auto const& c : t.children()) {
        if (!first) {
          out += ',';
        }
        first = false;
        write_tree(c, out);
      }
      out += ')';
    }

    class TreeParser {
     public:
      TreeParser(std::string_view      text,
                 RankedAlphabet const& alphabet,
                 SortedVarSet const&   sort)
          : text_(text), alphabet_(alphabet), sort_(sort) {}

      Tree parse() {
        Tree t = term();
        skip_ws();
        if (pos_ != text_.size()) {
          fail("trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError("tree syntax: " + what + " at offset "
                         + std::to_string(pos_) + " in '"
                         + std::string(text_) + "'");
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

      std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
          char c = text_[pos_];
          if (std::isspace(static_cast<unsigned char>(c)) || c == '('
              || c == ')' || c == ',') {
            break;
          }
          ++pos_;
        }
        if (start == pos_) {
          fail("expected identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      Tree term() {
        std::string name = identifier();
        auto        sym = alphabet_.find(name);
        bool const  is_var
            = std::binary_search(sort_.begin(), sort_.end(), name, NaturalLess{});
        if (sym && is_var) {
          throw InputError("identifier '" + name
                           + "' is both a symbol and a variable");
        }
        if (is_var) {
          if (accept('(')) {
            fail("variable '" + name + "' cannot have children");
          }
          return Tree::variable(name);
        }
        if (!sym) {
          throw InputError("unknown symbol '" + name + "'");
        }
        Symbol const&     s = alphabet_[*sym];
        std::vector<Tree> children;
        if (accept('(')) {
          if (!accept(')')) {
            do {
              children.push_back(term());
            } while (accept(','));
            if (!accept(')')) {
              fail("expected ')'");
            }
          }
        }
        if (children.size() != s.rank) {
          throw InputError("symbol '" + name + "' has rank "
                           + std::to_string(s.rank) + " but "
                           + std::to_string(children.size())
                           + " children were given");
        }
        return Tree::node(s, std::move(children));
      }

      std::string_view      text_;
      RankedAlphabet const& alphabet_;
      SortedVarSet const&   sort_;
      std::size_t           pos_ = 0;
    };

  }  // namespace

  std::string to_string(Tree const& t) {
    std::string out;
    write_tree(t, out);
    return out;
  }

  Tree parse_tree(std::string_view      text,
                  RankedAlphabet const& alphabet,
                  SortedVarSet const&   sort) {
    SortedVarSet s = make_sort(sort);
    return TreeParser(text, alphabet, s).parse();
  }

  std::vector<Tree> enumerate_trees(RankedAlphabet const& alphabet,
                                    SortedVarSet const&   sort_in,
                                    std::size_t           depth) {
    SortedVarSet const sort = make_sort(sort_in);
    if (sort.size() > 64) {
      throw ConfigError("enumeration supports at most 64 variables");
    }
    std::uint64_t const full
        = sort.size() == 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << sort.size()) - 1;

    struct Entry {
      Tree          tree;
      std::uint64_t mask;
    };
    // levels[h-1] holds the trees of height exactly h that use each
    // variable at most once.
    std::vector<std::vector<Entry>> levels;
    std::vector<Entry>              pool;  // all trees of height < current

    for (std::size_t h = 1; h <= depth; ++h) {
      std::vector<Entry> level;
      if (h == 1) {
        for (auto const& s : alphabet.symbols()) {
          if (s.rank == 0) {
            level.push_back({Tree::node(s, {}), 0});
          }
        }
        for (std::size_t i = 0; i < sort.size(); ++i) {
          level.push_back({Tree::variable(sort[i]), std::uint64_t{1} << i});
        }
      } else {
        std::size_t const prev_height = h - 1;
        for (auto const& s : alphabet.symbols()) {
          if (s.rank == 0) {
            continue;
          }
          std::vector<Tree> children;
          children.reserve(s.rank);
          auto rec = [&](auto&& self, std::size_t pos, std::uint64_t mask,
                         bool tall) -> void {
            if (pos == s.rank) {
              if (tall) {
                level.push_back({Tree::node(s, children), mask});
              }
              return;
            }
            for (auto const& e : pool) {
              if ((e.mask & mask) != 0) {
                continue;
              }
              children.push_back(e.tree);
              self(self, pos + 1, mask | e.mask,
                   tall || e.tree.height() == prev_height);
              children.pop_back();
            }
          };
          rec(rec, 0, 0, false);
        }
      }
      pool.insert(pool.end(), level.begin(), level.end());
      levels.push_back(std::move(level));
    }

    std::vector<Tree> out;
    for (auto const& level : levels) {
      for (auto const& e : level) {
        if (e.mask == full && !e.tree.is_variable()) {
          out.push_back(e.tree);
        }
      }
    }
    std::sort(out.begin(), out.end(), EnumerationOrder{});
    return out;
  }

  Tree rename_variables(Tree const&                               t,
                        std::map<std::string, std::string> const& names) {
    if (t.is_variable()) {
      auto it = names.find(t.variable_name());
      return it == names.end() ? t : Tree::variable(it->second);
    }
    std::vector<Tree> cs;
    cs.reserve(t.children().size());
    for (auto const& c : t.children()) {
      cs.push_back(rename_variables(c, names));
    }
    return Tree::node(t.label(), std::move(cs));
  }

}  // namespace treefo
