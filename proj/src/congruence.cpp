#include "treefo/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "treefo/tuples.hpp"

namespace treefo {

  namespace {

    std::vector<std::size_t> canonical(std::vector<std::size_t> const& raw) {
      std::map<std::size_t, std::size_t> renum;
      std::vector<std::size_t>           out(raw.size());
      for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = renum.emplace(raw[i], renum.size()).first->second;
      }
      return out;
    }

    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      }
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        parent[std::max(a, b)] = std::min(a, b);
        return true;
      }
      Partition partition() {
        std::vector<std::size_t> raw(parent.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
          raw[i] = find(i);
        }
        return Partition(raw);
      }
    };

  }  // namespace

  Partition::Partition(std::vector<std::size_t> block_of)
      : block_of_(canonical(block_of)) {}

  Partition Partition::bottom(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Partition(v);
  }

  Partition Partition::top(std::size_t n) {
    return Partition(std::vector<std::size_t>(n, 0));
  }

  std::size_t Partition::block_count() const {
    return block_of_.empty()
               ? 0
               : *std::max_element(block_of_.begin(), block_of_.end()) + 1;
  }

  std::vector<std::vector<Element>> Partition::blocks() const {
    std::vector<std::vector<Element>> out(block_count());
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
      out[block_of_[i]].push_back(static_cast<Element>(i));
    }
    return out;
  }

  bool Partition::refines(Partition const& other) const {
    std::vector<std::size_t> image(block_count(), SIZE_MAX);
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
      auto& slot = image[block_of_[i]];
      if (slot == SIZE_MAX) {
        slot = other.block_of_[i];
      } else if (slot != other.block_of_[i]) {
        return false;
      }
    }
    return true;
  }

  Partition Partition::join(Partition const& other) const {
    UnionFind uf(size());
    std::vector<std::size_t> first_a(block_count(), SIZE_MAX);
    std::vector<std::size_t> first_b(other.block_count(), SIZE_MAX);
    for (std::size_t i = 0; i < size(); ++i) {
      for (auto [v, first] : {std::pair{block_of_[i], &first_a},
                              std::pair{other.block_of_[i], &first_b}}) {
        if ((*first)[v] == SIZE_MAX) {
          (*first)[v] = i;
        } else {
          uf.unite((*first)[v], i);
        }
      }
    }
    return uf.partition();
  }

  Partition Partition::meet(Partition const& other) const {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::size_t>                                   raw(size());
    for (std::size_t i = 0; i < size(); ++i) {
      raw[i] = ids.emplace(std::pair{block_of_[i], other.block_of_[i]},
                           ids.size())
                   .first->second;
    }
    return Partition(raw);
  }

  Partition Partition::restrict_to(std::vector<Element> const& domain) const {
    std::vector<std::size_t> raw;
    for (Element e : domain) {
      raw.push_back(block_of_.at(e));
    }
    return Partition(raw);
  }

  std::string to_string(Partition const&                p,
                        std::vector<std::string> const& names) {
    std::string s;
    for (auto const& b : p.blocks()) {
      s += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i > 0) {
          s += ',';
        }
        s += names.at(b[i]);
      }
      s += '}';
    }
    return s;
  }

  std::vector<Operation const*> congruence_generators(CloneAlgebra const& c) {
    std::vector<Operation const*> out;
    for (auto const& g : c.generators) {
      if (g.table.arity() > 0) {
        out.push_back(&g);
      }
    }
    return out;
  }

  std::optional<Violation> find_violation(CloneAlgebra const& c,
                                          Partition const&    p) {
    if (p.size() != c.size()) {
      throw ContractViolation("partition over a different carrier");
    }
    auto const        gens = congruence_generators(c);
    std::size_t const n = c.size();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      OpTable const&    g = gens[gi]->table;
      std::size_t const r = g.arity();
      std::optional<Violation> found;
      for_each_tuple<Element>(n, r, [&](std::vector<Element> const& t) {
        if (found) {
          return;
        }
        Element const v = g(t);
        for (std::size_t i = r; i-- > 0 && !found;) {
          for (std::size_t b = 0; b < n; ++b) {
            if (b == t[i] || !p.related(t[i], static_cast<Element>(b))) {
              continue;
            }
            auto u = t;
            u[i] = static_cast<Element>(b);
            Element const w = g(u);
            if (!p.related(v, w)) {
              found = Violation{gi, t, u, v, w};
              break;
            }
          }
        }
      });
      if (found) {
        return found;
      }
    }
    return std::nullopt;
  }

  bool is_congruence(CloneAlgebra const& c, Partition const& p) {
    return !find_violation(c, p);
  }

  Partition principal_congruence(CloneAlgebra const& c, Element a,
                                 Element b) {
    std::size_t const n = c.size();
    UnionFind         uf(n);
    uf.unite(a, b);
    auto const gens = congruence_generators(c);
    for (bool changed = true; changed;) {
      changed = false;
      for (auto const* gp : gens) {
        OpTable const&    g = gp->table;
        std::size_t const r = g.arity();
        for (std::size_t i = 0; i < r; ++i) {
          for_each_tuple<Element>(n, r - 1, [&](std::vector<Element> const& o) {
            std::vector<Element> t(o.begin(), o.end());
            t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), 0);
            for (std::size_t x = 0; x < n; ++x) {
              for (std::size_t y = x + 1; y < n; ++y) {
                if (uf.find(x) != uf.find(y)) {
                  continue;
                }
                t[i] = static_cast<Element>(x);
                Element const vx = g(t);
                t[i] = static_cast<Element>(y);
                Element const vy = g(t);
                changed = uf.unite(vx, vy) || changed;
              }
            }
          });
        }
      }
    }
    return uf.partition();
  }

  CongruenceLattice congruence_lattice(CloneAlgebra const& c) {
    std::size_t const   n = c.size();
    std::set<Partition> all{Partition::bottom(n)};
    std::vector<Partition> principal;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        auto p = principal_congruence(c, static_cast<Element>(a),
                                      static_cast<Element>(b));
        if (all.insert(p).second) {
          principal.push_back(p);
        }
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Partition> current(all.begin(), all.end());
      for (auto const& x : current) {
        for (auto const& p : principal) {
          grew = all.insert(x.join(p)).second || grew;
        }
      }
    }

    CongruenceLattice lat;
    lat.congruences.assign(all.begin(), all.end());
    std::sort(lat.congruences.begin(), lat.congruences.end(),
              [](Partition const& x, Partition const& y) {
                if (x.block_count() != y.block_count()) {
                  return x.block_count() > y.block_count();
                }
                return x < y;
              });
    auto const& cs = lat.congruences;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (i == j || !cs[i].refines(cs[j])) {
          continue;
        }
        bool direct = true;
        for (std::size_t k = 0; k < cs.size() && direct; ++k) {
          if (k != i && k != j && cs[i].refines(cs[k])
              && cs[k].refines(cs[j])) {
            direct = false;
          }
        }
        if (direct) {
          lat.covers.emplace_back(i, j);
        }
      }
    }
    return lat;
  }

  bool is_simple(CloneAlgebra const& c) {
    return c.size() >= 2 && congruence_lattice(c).congruences.size() == 2;
  }

  namespace {

    OpTable map_table(OpTable const& t, Partition const& theta,
                      std::vector<Element> const& rep) {
      std::size_t const    k = theta.block_count();
      std::size_t          len = 1;
      for (std::size_t i = 0; i < t.arity(); ++i) {
        len *= k;
      }
      std::vector<Element> out(len);
      OpTable const        shape(t.arity(), k, std::vector<Element>(len, 0));
      for (std::size_t idx = 0; idx < len; ++idx) {
        auto args = shape.decode(idx);
        for (auto& a : args) {
          a = rep[a];
        }
        out[idx] = static_cast<Element>(theta.block_of(t(args)));
      }
      return OpTable(t.arity(), k, std::move(out));
    }

    std::vector<Operation> map_ops(std::vector<Operation> const& ops,
                                   Partition const&              theta,
                                   std::vector<Element> const&   rep) {
      std::map<OpTable, Tree> best;
      for (auto const& op : ops) {
        auto t = map_table(op.table, theta, rep);
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

  CloneAlgebra quotient(CloneAlgebra const& c, Partition const& theta) {
    if (auto v = find_violation(c, theta)) {
      throw ContractViolation("quotient by a partition that is not a "
                              "congruence");
    }
    auto const           blocks = theta.blocks();
    std::vector<Element> rep;
    CloneAlgebra         q;
    for (auto const& b : blocks) {
      rep.push_back(b.front());
      std::string name = "{";
      std::optional<Tree> best;
      for (std::size_t i = 0; i < b.size(); ++i) {
        name += (i > 0 ? "," : "") + c.names[b[i]];
        auto const& r = c.representatives[b[i]];
        if (r && (!best || compare_trees(*r, *best) < 0)) {
          best = r;
        }
      }
      q.names.push_back(b.size() == 1 ? c.names[b.front()] : name + "}");
      q.representatives.push_back(best);
      if (!c.accepting.empty()) {
        bool const acc = c.accepting[b.front()];
        bool       uniform = true;
        for (Element e : b) {
          uniform = uniform && c.accepting[e] == acc;
        }
        if (uniform && q.accepting.size() + 1 == q.names.size()) {
          q.accepting.push_back(acc);
        }
      }
    }
    if (q.accepting.size() != q.names.size()) {
      q.accepting.clear();
    }
    q.alphabet = c.alphabet;
    q.max_arity = c.max_arity;
    for (auto const& g : c.generators) {
      q.generators.push_back({map_table(g.table, theta, rep), g.provenance});
    }
    for (auto const& level : c.ops) {
      q.ops.push_back(map_ops(level, theta, rep));
    }
    q.linear_unary = map_ops(c.linear_unary, theta, rep);
    return q;
  }

}  // namespace treefo
