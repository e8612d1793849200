#include "treefo/tct.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "treefo/tuples.hpp"

namespace treefo {

  char to_char(TypeLabel t) {
    switch (t) {
      case TypeLabel::T: return 'T';
      case TypeLabel::U: return 'U';
      case TypeLabel::A: return 'A';
      case TypeLabel::B: return 'B';
      case TypeLabel::L: return 'L';
      case TypeLabel::S: return 'S';
    }
    return '?';
  }

  std::string describe(TypeLabel t) {
    switch (t) {
      case TypeLabel::T: return "trivial";
      case TypeLabel::U: return "unary";
      case TypeLabel::A: return "affine";
      case TypeLabel::B: return "boolean";
      case TypeLabel::L: return "lattice";
      case TypeLabel::S: return "semilattice";
    }
    return "unknown";
  }

  std::string set_to_string(ElementSet s, std::vector<std::string> const& names) {
    std::string out = "{";
    bool        first = true;
    for (Element e : elements_of(s)) {
      out += (first ? "" : ",") + names.at(e);
      first = false;
    }
    return out + "}";
  }

  std::vector<Operation> unary_polynomials(CloneAlgebra const& c) {
    std::vector<Operation> out = c.ops.at(1);
    auto const             id = OpTable::identity(c.size());
    bool const has_id = std::any_of(out.begin(), out.end(), [&](auto const& o) {
      return o.table == id;
    });
    if (!has_id) {
      out.push_back({id, Tree::variable("x0")});
    }
    return out;
  }

  std::vector<Idempotent> idempotents(CloneAlgebra const& c) {
    std::map<ElementSet, Idempotent> by_image;
    for (auto const& u : unary_polynomials(c)) {
      if (u.table.compose({u.table}) != u.table) {
        continue;
      }
      ElementSet const im = u.table.image();
      by_image.emplace(im, Idempotent{u, im});
    }
    std::vector<Idempotent> out;
    for (auto& kv : by_image) {
      out.push_back(std::move(kv.second));
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
      if (cardinality(x.image) != cardinality(y.image)) {
        return cardinality(x.image) < cardinality(y.image);
      }
      return elements_of(x.image) < elements_of(y.image);
    });
    return out;
  }

  namespace {

    std::vector<Operation> restrict_all(std::vector<Operation> const& ops,
                                        ElementSet                    s,
                                        std::vector<Element> const&   dom) {
      std::map<OpTable, Tree> best;
      for (auto const& op : ops) {
        if (!op.table.preserves(s)) {
          continue;
        }
        auto t = op.table.restrict_to(dom);
        auto it = best.find(t);
        if (it == best.end()) {
          best.emplace(std::move(t), op.provenance);
        } else if (compare_trees(op.provenance, it->second) < 0) {
          it->second = op.provenance;
        }
      }
      std::vector<Operation> out;
      for (auto& [t, p] : best) {
        out.push_back({t, p});
      }
      return out;
    }

  }  // namespace

  CloneAlgebra localise(CloneAlgebra const& c, ElementSet s) {
    if (s == 0 || (s & ~full_set(c.size())) != 0) {
      throw ContractViolation("localisation needs a nonempty subset of the "
                              "carrier");
    }
    auto const   dom = elements_of(s);
    CloneAlgebra l;
    for (Element e : dom) {
      l.names.push_back(c.names[e]);
      l.representatives.push_back(c.representatives[e]);
      if (!c.accepting.empty()) {
        l.accepting.push_back(c.accepting[e]);
      }
    }
    l.max_arity = c.max_arity;
    for (auto const& level : c.ops) {
      l.ops.push_back(restrict_all(level, s, dom));
    }
    l.generators = l.ops.at(1);
    l.linear_unary = restrict_all(c.linear_unary, s, dom);
    return l;
  }

  bool is_minimal_algebra(CloneAlgebra const& c) {
    if (c.size() < 2) {
      return false;
    }
    for (auto const& u : unary_polynomials(c)) {
      bool const bijective = cardinality(u.table.image()) == c.size();
      if (!u.table.is_constant() && !bijective) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::vector<std::vector<std::size_t>> injections(std::size_t k,
                                                     std::size_t n) {
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t>              cur;
      std::vector<bool>                     used(n, false);
      auto rec = [&](auto&& self) -> void {
        if (cur.size() == k) {
          out.push_back(cur);
          return;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (!used[j]) {
            used[j] = true;
            cur.push_back(j);
            self(self);
            cur.pop_back();
            used[j] = false;
          }
        }
      };
      rec(rec);
      return out;
    }

    // Polynomial operations of arity 1..3, including projections and
    // operations with dummy variables.
    std::vector<std::set<OpTable>> polynomial_view(CloneAlgebra const& c) {
      std::size_t const              n = c.size();
      std::vector<std::set<OpTable>> view(4);
      for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t j = 0; j < m; ++j) {
          view[m].insert(OpTable::projection(n, m, j));
        }
        for (std::size_t e = 0; e < n; ++e) {
          view[m].insert(OpTable::constant(n, m, static_cast<Element>(e)));
        }
        for (std::size_t k = 1; k <= m && k < c.ops.size(); ++k) {
          for (auto const& inj : injections(k, m)) {
            std::vector<OpTable> proj;
            for (std::size_t j : inj) {
              proj.push_back(OpTable::projection(n, m, j));
            }
            for (auto const& op : c.ops[k]) {
              view[m].insert(op.table.compose(proj));
            }
          }
        }
      }
      return view;
    }

    bool is_maltsev(OpTable const& m, std::size_t n) {
      for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
          if (m({x, y, y}) != x || m({y, y, x}) != x) {
            return false;
          }
        }
      }
      return true;
    }

    bool commutes_with(OpTable const& f, OpTable const& m, std::size_t n) {
      std::size_t const k = f.arity();
      bool              ok = true;
      for_each_tuple<Element>(n, 3 * k, [&](std::vector<Element> const& v) {
        if (!ok) {
          return;
        }
        std::vector<Element> xs(v.begin(), v.begin() + k);
        std::vector<Element> ys(v.begin() + k, v.begin() + 2 * k);
        std::vector<Element> zs(v.begin() + 2 * k, v.end());
        std::vector<Element> inner(k);
        for (std::size_t i = 0; i < k; ++i) {
          inner[i] = m({xs[i], ys[i], zs[i]});
        }
        ok = f(inner) == m({f(xs), f(ys), f(zs)});
      });
      return ok;
    }

  }  // namespace

  TypeLabel classify_minimal(CloneAlgebra const& c) {
    if (!is_minimal_algebra(c)) {
      throw ClassificationError("classification of an algebra that is not "
                                "minimal");
    }
    if (c.max_arity < 3 || c.ops.size() < 4) {
      throw ConfigError("classification needs operations up to arity 3");
    }
    std::size_t const n = c.size();
    auto const        view = polynomial_view(c);

    bool trivial = true;
    bool unary = true;
    for (std::size_t m = 1; m <= 3; ++m) {
      for (auto const& f : view[m]) {
        trivial = trivial && (f.is_constant() || f.as_projection());
        unary = unary && f.essential_arity() <= 1;
      }
    }
    if (trivial) {
      return TypeLabel::T;
    }
    if (unary) {
      return TypeLabel::U;
    }

    std::optional<OpTable> maltsev;
    for (auto const& f : view[3]) {
      if (is_maltsev(f, n)) {
        maltsev = f;
        break;
      }
    }
    if (maltsev) {
      if (n == 2 && view[2].size() == 16) {
        return TypeLabel::B;
      }
      for (std::size_t m = 1; m <= 3; ++m) {
        for (auto const& f : view[m]) {
          if (!commutes_with(f, *maltsev, n)) {
            throw ClassificationError(
                "Maltsev polynomial present but operation "
                + to_string(f) + " is not affine with respect to it");
          }
        }
      }
      return TypeLabel::A;
    }

    if (n != 2) {
      throw ClassificationError(
          "minimal algebra without Maltsev polynomial has "
          + std::to_string(n) + " elements; expected 2");
    }
    OpTable const meet01(2, 2, {0, 0, 0, 1});
    OpTable const join01(2, 2, {0, 1, 1, 1});
    bool const    has_meet = view[2].count(meet01) > 0;
    bool const    has_join = view[2].count(join01) > 0;
    if (has_meet && has_join) {
      return TypeLabel::L;
    }
    if (has_meet || has_join) {
      return TypeLabel::S;
    }
    throw ClassificationError(
        "two-element minimal algebra with a binary essential operation but "
        "neither meet nor join");
  }

  ////////////////////////////////////////////////////////////////////////
  // Minimal sets
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool separates(OpTable const& e, Partition const& alpha,
                   Partition const& beta) {
      std::size_t const n = e.carrier_size();
      for (Element x = 0; x < n; ++x) {
        for (Element y = x + 1; y < n; ++y) {
          if (beta.related(x, y) && !alpha.related(e({x}), e({y}))) {
            return true;
          }
        }
      }
      return false;
    }

    std::set<std::pair<std::size_t, std::size_t>> op_set(
        CloneAlgebra const& c, ElementSet s) {
      std::set<std::pair<std::size_t, std::size_t>> out;
      for (std::size_t k = 0; k < c.ops.size(); ++k) {
        for (std::size_t i = 0; i < c.ops[k].size(); ++i) {
          if (c.ops[k][i].table.preserves(s)) {
            out.emplace(k, i);
          }
        }
      }
      return out;
    }

    bool subset_of(std::set<std::pair<std::size_t, std::size_t>> const& a,
                   std::set<std::pair<std::size_t, std::size_t>> const& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

  }  // namespace

  MinimalSetReport min_sets(CloneAlgebra const& c, Partition const& alpha,
                            Partition const& beta) {
    auto const lat = congruence_lattice(c);
    auto const pos = [&](Partition const& p) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < lat.congruences.size(); ++i) {
        if (lat.congruences[i] == p) {
          return i;
        }
      }
      return std::nullopt;
    };
    auto const ia = pos(alpha);
    auto const ib = pos(beta);
    bool const covering
        = ia && ib
          && std::find(lat.covers.begin(), lat.covers.end(),
                       std::pair{*ia, *ib})
                 != lat.covers.end();
    if (!covering) {
      throw ContractViolation("min_sets needs a covering pair of congruences");
    }

    MinimalSetReport report{alpha, beta, {}, {}, {}};
    for (auto const& e : idempotents(c)) {
      if (separates(e.op.table, alpha, beta)) {
        report.separating.push_back(e);
      }
    }
    auto const& sep = report.separating;

    std::vector<std::set<std::pair<std::size_t, std::size_t>>> ops;
    for (auto const& e : sep) {
      ops.push_back(op_set(c, e.image));
    }
    std::vector<bool> min_by_image(sep.size(), true);
    std::vector<bool> min_by_ops(sep.size(), true);
    for (std::size_t i = 0; i < sep.size(); ++i) {
      for (std::size_t j = 0; j < sep.size(); ++j) {
        if (i == j) {
          continue;
        }
        bool const img = (sep[j].image & ~sep[i].image) == 0;
        bool const opi = subset_of(ops[j], ops[i]);
        if (img && sep[j].image != sep[i].image) {
          min_by_image[i] = false;
        }
        if (opi && ops[j] != ops[i]) {
          min_by_ops[i] = false;
        }
        if (img != opi) {
          report.order_notes.push_back(
              set_to_string(sep[j].image, c.names)
              + (img ? " is inside " : " is not inside ")
              + set_to_string(sep[i].image, c.names) + " but its operation set "
              + (opi ? "is" : "is not") + " contained in the other");
        }
      }
    }
    for (std::size_t i = 0; i < sep.size(); ++i) {
      if (min_by_image[i] != min_by_ops[i]) {
        report.order_notes.push_back(
            set_to_string(sep[i].image, c.names)
            + (min_by_image[i] ? " is minimal by image only"
                               : " is minimal by operation set only"));
      }
    }

    for (std::size_t i = 0; i < sep.size(); ++i) {
      if (!min_by_image[i]) {
        continue;
      }
      MinimalSet ms{sep[i], {}};
      for (auto const& block : beta.blocks()) {
        ElementSet const n = sep[i].image & set_of(block);
        std::set<std::size_t> classes;
        for (Element e : elements_of(n)) {
          classes.insert(alpha.block_of(e));
        }
        if (classes.size() < 2) {
          continue;
        }
        auto const   dom = elements_of(n);
        CloneAlgebra local = localise(c, n);
        CloneAlgebra div = quotient(local, alpha.restrict_to(dom));
        if (!is_minimal_algebra(div)) {
          throw ContractViolation("trace " + set_to_string(n, c.names)
                                  + " induces an algebra that is not minimal");
        }
        ms.traces.push_back({n, classify_minimal(div), div.size()});
      }
      report.minimal_sets.push_back(std::move(ms));
    }
    if (report.minimal_sets.empty()) {
      throw ContractViolation("covering pair without minimal sets");
    }
    return report;
  }

  std::optional<TypeLabel> idempotent_label(CloneAlgebra const& c,
                                            Idempotent const&   e) {
    if (cardinality(e.image) == 1) {
      return TypeLabel::T;
    }
    CloneAlgebra const l = localise(c, e.image);
    if (!is_minimal_algebra(l)) {
      return std::nullopt;
    }
    return classify_minimal(l);
  }

}  // namespace treefo
