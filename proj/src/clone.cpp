#include "treefo/clone.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "treefo/tuples.hpp"

namespace treefo {

  namespace {

    std::size_t power(std::size_t base, std::size_t exp) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
      }
      return r;
    }

    struct Key {
      std::vector<Element> table;
      ElementSet           im   = 0;
      std::uint64_t        mask = 0;

      friend bool operator==(Key const&, Key const&) = default;
    };

    struct KeyHash {
      std::size_t operator()(Key const& k) const noexcept {
        std::size_t h = std::hash<std::uint64_t>{}(k.im * 0x9e3779b97f4a7c15ULL
                                                   ^ k.mask);
        for (Element e : k.table) {
          h = h * 1000003U ^ e;
        }
        return h;
      }
    };

    struct Entry {
      std::vector<Element> table;  // over domain^n, values in the carrier
      ElementSet           im = 0;
      Tree                 prov = Tree::variable("x0");
    };

    struct Arg {
      std::vector<Element> table;
      ElementSet           im = 0;
      std::uint64_t        mask = 0;
      Tree                 prov = Tree::variable("x0");
      bool                 dead = false;  // dominated by a wider mask
    };

    // All injective maps {0..k-1} -> {0..n-1}.
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

    Tree rename_by_map(Tree const& t, std::vector<std::size_t> const& map) {
      std::map<std::string, std::string> names;
      for (std::size_t i = 0; i < map.size(); ++i) {
        names.emplace("x" + std::to_string(i), "x" + std::to_string(map[i]));
      }
      return rename_variables(t, names);
    }

    class Closure {
     public:
      explicit Closure(ClosureRequest const& req)
          : req_(req),
            dom_(elements_of(req.domain)),
            track_im_(req.domain != full_set(req.carrier_size)) {
        if (req.carrier_size == 0 || req.carrier_size > kMaxCarrier) {
          throw ConfigError("closure needs a carrier of 1 to "
                            + std::to_string(kMaxCarrier) + " elements");
        }
        if (dom_.empty() || (req.domain & ~full_set(req.carrier_size)) != 0) {
          throw ContractViolation("closure domain must be a nonempty subset "
                                  "of the carrier");
        }
        if (req.max_arity > 62) {
          throw ConfigError("arity cap too large");
        }
        for (auto const& g : req.generators) {
          if (g.table.carrier_size() != req.carrier_size) {
            throw ContractViolation("generator over a different carrier");
          }
        }
        entries_.resize(req.max_arity + 1);
      }

      std::vector<std::vector<Operation>> run() {
        for (std::size_t n = 1; n <= req_.max_arity; ++n) {
          close_arity(n);
        }
        return collect();
      }

     private:
      std::size_t digit(std::size_t idx, std::size_t j) const {
        return (idx / power(dom_.size(), j)) % dom_.size();
      }

      Arg lift(Entry const& e, std::vector<std::size_t> const& map,
               std::size_t n) const {
        std::size_t const D = dom_.size();
        std::size_t const len = power(D, n);
        Arg               a;
        a.table.resize(len);
        a.im = e.im;
        for (std::size_t j : map) {
          a.mask |= std::uint64_t{1} << j;
        }
        std::vector<std::size_t> strides(n);
        for (std::size_t j = 0; j < n; ++j) {
          strides[j] = power(D, j);
        }
        for (std::size_t idx = 0; idx < len; ++idx) {
          std::size_t sub = 0;
          std::size_t scale = 1;
          for (std::size_t i = 0; i < map.size(); ++i) {
            sub += ((idx / strides[map[i]]) % D) * scale;
            scale *= D;
          }
          a.table[idx] = e.table[sub];
        }
        a.prov = rename_by_map(e.prov, map);
        return a;
      }

      void add_arg(Arg a) {
        Key k{a.table, a.im, a.mask};
        if (!arg_seen_.insert(std::move(k)).second) {
          return;
        }
        if (!req_.linear) {
          // without linearity a wider mask does everything a narrower one
          // does for the same table
          auto& same = by_table_[Key{a.table, a.im, 0}];
          for (std::size_t i : same) {
            Arg const& b = args_[i];
            if (!b.dead && (a.mask & ~b.mask) == 0) {
              return;
            }
          }
          for (std::size_t i : same) {
            if ((args_[i].mask & ~a.mask) == 0) {
              args_[i].dead = true;
            }
          }
          same.push_back(args_.size());
        }
        args_.push_back(std::move(a));
      }

      void close_arity(std::size_t n) {
        std::size_t const D = dom_.size();
        std::size_t const len = power(D, n);
        std::size_t const N = req_.carrier_size;
        std::uint64_t const full = (std::uint64_t{1} << n) - 1;
        ElementSet const   dom_im = track_im_ ? req_.domain : 0;

        args_.clear();
        arg_seen_.clear();
        by_table_.clear();
        for (auto const& [c, prov] : req_.constants) {
          add_arg({std::vector<Element>(len, c),
                   track_im_ ? singleton(c) : 0, 0, prov});
        }
        for (std::size_t j = 0; j < n; ++j) {
          Arg a;
          a.table.resize(len);
          for (std::size_t idx = 0; idx < len; ++idx) {
            a.table[idx] = dom_[digit(idx, j)];
          }
          a.im = dom_im;
          a.mask = std::uint64_t{1} << j;
          a.prov = Tree::variable("x" + std::to_string(j));
          add_arg(std::move(a));
        }
        for (std::size_t k = 1; k < n; ++k) {
          auto const maps = injections(k, n);
          for (auto const& e : entries_[k]) {
            for (auto const& m : maps) {
              add_arg(lift(e, m, n));
            }
          }
        }
        auto const perms = injections(n, n);

        std::unordered_map<Key, std::size_t, KeyHash> index;
        std::size_t                                   old = 0;
        // once every table of this arity is present nothing new can appear;
        // without image tracking the key is the table alone
        std::size_t all_tables = track_im_ ? 0 : 1;
        for (std::size_t i = 0; i < len && all_tables != 0; ++i) {
          all_tables = all_tables > (std::size_t{1} << 40) / N ? 0 : all_tables * N;
        }
        auto saturated = [&] {
          return all_tables != 0 && index.size() == all_tables;
        };
        while (old < args_.size() && !saturated()) {
          std::size_t const  fresh_end = args_.size();
          std::vector<Entry> found;
          for (auto const& g : req_.generators) {
            std::size_t const r = g.table.arity();
            if (r == 0) {
              continue;
            }
            std::vector<std::size_t> pick(r);
            std::vector<std::size_t> strides(r);
            for (std::size_t i = 0; i < r; ++i) {
              strides[i] = power(N, i);
            }
            Key probe{std::vector<Element>(len), 0, 0};
            auto emit = [&] {
              auto const& gv = g.table.values();
              for (std::size_t idx = 0; idx < len; ++idx) {
                std::size_t gi = 0;
                for (std::size_t i = 0; i < r; ++i) {
                  gi += args_[pick[i]].table[idx] * strides[i];
                }
                probe.table[idx] = gv[gi];
              }
              if (!track_im_ && index.count(probe)) {
                return;
              }
              Entry e;
              e.table = probe.table;
              if (track_im_) {
                std::vector<std::vector<Element>> ims(r);
                for (std::size_t i = 0; i < r; ++i) {
                  ims[i] = elements_of(args_[pick[i]].im);
                }
                std::vector<std::size_t> t(r, 0);
                for (;;) {
                  std::size_t gi = 0;
                  for (std::size_t i = 0; i < r; ++i) {
                    gi += ims[i][t[i]] * strides[i];
                  }
                  e.im |= singleton(gv[gi]);
                  std::size_t i = 0;
                  while (i < r && ++t[i] == ims[i].size()) {
                    t[i++] = 0;
                  }
                  if (i == r) {
                    break;
                  }
                }
              }
              Key k{e.table, e.im, 0};
              if (index.count(k)) {
                return;
              }
              index.emplace(std::move(k), entries_[n].size() + found.size());
              std::map<std::string, Tree> binding;
              for (std::size_t i = 0; i < r; ++i) {
                binding.emplace("x" + std::to_string(i), args_[pick[i]].prov);
              }
              e.prov = substitute(g.provenance, binding);
              found.push_back(std::move(e));
              if (++total_ > req_.budget) {
                throw ConfigError("operation closure exceeded its budget of "
                                  + std::to_string(req_.budget)
                                  + " tables; lower the arity cap");
              }
            };
            // Position p is the first one drawn from this round's new args.
            for (std::size_t p = 0; p < r; ++p) {
              auto rec = [&](auto&& self, std::size_t i,
                             std::uint64_t mask) -> void {
                if (saturated()) {
                  return;
                }
                if (i == r) {
                  if (mask == full) {
                    emit();
                  }
                  return;
                }
                std::size_t const lo = i == p ? old : 0;
                std::size_t const hi = i < p ? old : fresh_end;
                for (std::size_t a = lo; a < hi; ++a) {
                  std::uint64_t const m = args_[a].mask;
                  if (args_[a].dead || (req_.linear && (m & mask) != 0)) {
                    continue;
                  }
                  pick[i] = a;
                  self(self, i + 1, mask | m);
                }
              };
              rec(rec, 0, 0);
            }
          }
          old = fresh_end;
          for (auto& e : found) {
            entries_[n].push_back(std::move(e));
            for (auto const& pm : perms) {
              add_arg(lift(entries_[n].back(), pm, n));
            }
          }
        }
      }

      std::vector<std::vector<Operation>> collect() const {
        std::size_t const                   D = dom_.size();
        std::vector<Element>                pos(req_.carrier_size, 0);
        for (std::size_t i = 0; i < D; ++i) {
          pos[dom_[i]] = static_cast<Element>(i);
        }
        std::vector<std::vector<Operation>> out(req_.max_arity + 1);

        std::map<Element, Tree> consts;
        for (auto const& [c, prov] : req_.constants) {
          if (contains(req_.domain, c)) {
            auto it = consts.find(c);
            if (it == consts.end() || compare_trees(prov, it->second) < 0) {
              consts.insert_or_assign(c, prov);
            }
          }
        }
        for (auto const& [c, prov] : consts) {
          out[0].push_back({OpTable(0, D, {pos[c]}), prov});
        }

        for (std::size_t n = 1; n <= req_.max_arity; ++n) {
          std::map<std::vector<Element>, Tree> best;
          for (auto const& e : entries_[n]) {
            if (track_im_ && (e.im & ~req_.domain) != 0) {
              continue;
            }
            std::vector<Element> t(e.table.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
              t[i] = pos[e.table[i]];
            }
            auto it = best.find(t);
            if (it == best.end()) {
              best.emplace(std::move(t), e.prov);
            } else if (compare_trees(e.prov, it->second) < 0) {
              it->second = e.prov;
            }
          }
          for (auto& [t, prov] : best) {
            out[n].push_back({OpTable(n, D, t), prov});
          }
        }
        return out;
      }

      ClosureRequest const&                    req_;
      std::vector<Element>                     dom_;
      bool                                     track_im_;
      std::vector<std::vector<Entry>>          entries_;
      std::vector<Arg>                         args_;
      std::unordered_set<Key, KeyHash>         arg_seen_;
      std::unordered_map<Key, std::vector<std::size_t>, KeyHash> by_table_;
      std::size_t                              total_ = 0;
    };

  }  // namespace

  std::vector<std::vector<Operation>> close_operations(
      ClosureRequest const& req) {
    return Closure(req).run();
  }

  ////////////////////////////////////////////////////////////////////////
  // CloneAlgebra
  ////////////////////////////////////////////////////////////////////////

  std::optional<Element> CloneAlgebra::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        return static_cast<Element>(i);
      }
    }
    return std::nullopt;
  }

  Element CloneAlgebra::eval_product(Tree const& t) const {
    if (t.is_variable()) {
      throw InputError("cannot evaluate variable '" + t.variable_name()
                       + "'");
    }
    Operation const* op = nullptr;
    for (auto const& g : generators) {
      auto const& p = g.provenance;
      if (!p.is_variable() && p.label() == t.label()) {
        op = &g;
        break;
      }
    }
    if (op == nullptr) {
      throw InputError("unknown symbol '" + t.label().name + "'");
    }
    std::vector<Element> args;
    args.reserve(t.children().size());
    for (auto const& c : t.children()) {
      args.push_back(eval_product(c));
    }
    return op->table(args);
  }

  std::size_t default_max_arity(RankedAlphabet const& alphabet) {
    return std::max<std::size_t>(3, alphabet.max_rank());
  }

  namespace {

    std::vector<Operation> linear_unary_of(
        std::size_t carrier, std::vector<Operation> const& generators,
        std::vector<std::pair<Element, Tree>> const& constants) {
      ClosureRequest req;
      req.carrier_size = carrier;
      req.domain = full_set(carrier);
      req.generators = generators;
      req.constants = constants;
      req.max_arity = 1;
      req.linear = true;
      return close_operations(req)[1];
    }

  }  // namespace

  CloneAlgebra build_syntactic(Dfta const& a, std::size_t max_arity) {
    auto const& sigma = a.alphabet();
    if (max_arity == 0) {
      max_arity = default_max_arity(sigma);
    }
    if (max_arity < sigma.max_rank()) {
      throw ConfigError("arity cap " + std::to_string(max_arity)
                        + " is below the maximal rank "
                        + std::to_string(sigma.max_rank()));
    }
    Minimization m = minimize(a);
    Dfta const&  d = m.dfta;
    std::size_t const n = d.state_count();
    if (n == 0) {
      throw InputError("the language has no ground trees");
    }
    if (n > kMaxCarrier) {
      throw ConfigError("syntactic carrier has " + std::to_string(n)
                        + " elements; at most "
                        + std::to_string(kMaxCarrier) + " are supported");
    }

    CloneAlgebra c;
    c.names = d.state_names();
    for (auto const& r : m.representatives) {
      c.representatives.emplace_back(r);
    }
    for (State q = 0; q < n; ++q) {
      c.accepting.push_back(d.accepting(q));
    }
    c.alphabet = sigma;
    c.max_arity = max_arity;

    std::vector<Operation> proper;
    for (std::size_t f = 0; f < sigma.size(); ++f) {
      Symbol const&        s = sigma[f];
      std::vector<Element> values(power(n, s.rank));
      OpTable const        shape(s.rank, n, std::vector<Element>(values.size()));
      for (std::size_t idx = 0; idx < values.size(); ++idx) {
        auto const         args = shape.decode(idx);
        std::vector<State> qs(args.begin(), args.end());
        values[idx] = static_cast<Element>(*d.transition(f, qs));
      }
      Operation op{OpTable(s.rank, n, std::move(values)), sing(s)};
      if (s.rank > 0) {
        proper.push_back(op);
      }
      c.generators.push_back(std::move(op));
    }

    std::vector<std::pair<Element, Tree>> constants;
    for (std::size_t e = 0; e < n; ++e) {
      constants.emplace_back(static_cast<Element>(e), m.representatives[e]);
    }
    ClosureRequest req;
    req.carrier_size = n;
    req.domain = full_set(n);
    req.generators = proper;
    req.constants = constants;
    req.max_arity = max_arity;
    c.ops = close_operations(req);
    c.linear_unary = linear_unary_of(n, proper, constants);

    for (auto const& [pq, ctx] : m.separators) {
      c.separators.emplace(std::pair{static_cast<Element>(pq.first),
                                     static_cast<Element>(pq.second)},
                           ctx);
    }
    return c;
  }

  CloneAlgebra from_generators(std::size_t              carrier,
                               std::vector<OpTable>     generators,
                               std::size_t              max_arity,
                               std::vector<std::string> names) {
    if (names.empty()) {
      for (std::size_t e = 0; e < carrier; ++e) {
        names.push_back(std::to_string(e));
      }
    }
    if (names.size() != carrier) {
      throw ContractViolation("one name per carrier element is required");
    }
    CloneAlgebra c;
    c.names = names;
    c.representatives.assign(carrier, std::nullopt);
    c.max_arity = max_arity;

    std::vector<Symbol>    symbols;
    std::vector<Operation> proper;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      if (generators[k].carrier_size() != carrier) {
        throw ContractViolation("generator over a different carrier");
      }
      Symbol s{"g" + std::to_string(k),
               static_cast<unsigned>(generators[k].arity())};
      symbols.push_back(s);
      Operation op{generators[k], sing(s)};
      if (s.rank > 0) {
        proper.push_back(op);
      }
      c.generators.push_back(std::move(op));
    }
    std::vector<std::pair<Element, Tree>> constants;
    for (std::size_t e = 0; e < carrier; ++e) {
      Symbol s{names[e], 0};
      symbols.push_back(s);
      constants.emplace_back(static_cast<Element>(e), Tree::node(s, {}));
      c.generators.push_back(
          {OpTable(0, carrier, {static_cast<Element>(e)}), Tree::node(s, {})});
    }
    c.alphabet = RankedAlphabet(std::move(symbols));

    ClosureRequest req;
    req.carrier_size = carrier;
    req.domain = full_set(carrier);
    req.generators = proper;
    req.constants = constants;
    req.max_arity = max_arity;
    c.ops = close_operations(req);
    c.linear_unary = linear_unary_of(carrier, proper, constants);
    return c;
  }

  void apply_names(CloneAlgebra&                             c,
                   std::map<std::string, std::string> const& aliases) {
    auto names = c.names;
    for (auto& n : names) {
      if (auto it = aliases.find(n); it != aliases.end()) {
        n = it->second;
      }
    }
    if (std::set<std::string>(names.begin(), names.end()).size()
        != names.size()) {
      throw InputError("element names must stay distinct after renaming");
    }
    c.names = std::move(names);
  }

  ////////////////////////////////////////////////////////////////////////
  // Unary semigroup
  ////////////////////////////////////////////////////////////////////////

  UnarySemigroup sg(CloneAlgebra const& c) {
    UnarySemigroup s;
    s.carrier = c.size();
    s.elements = c.linear_unary;
    std::map<OpTable, std::size_t> index;
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      index.emplace(s.elements[i].table, i);
    }
    s.product.assign(s.elements.size(),
                     std::vector<std::size_t>(s.elements.size()));
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      for (std::size_t j = 0; j < s.elements.size(); ++j) {
        auto const t = s.elements[i].table.compose({s.elements[j].table});
        auto       it = index.find(t);
        if (it == index.end()) {
          throw ContractViolation("unary linear operations are not closed "
                                  "under composition");
        }
        s.product[i][j] = it->second;
      }
    }
    return s;
  }

  Aperiodicity is_aperiodic(UnarySemigroup const& s) {
    Aperiodicity result;
    for (std::size_t f = 0; f < s.elements.size(); ++f) {
      std::vector<std::size_t>           powers{f};
      std::map<std::size_t, std::size_t> seen{{f, 0}};
      std::size_t                        start = 0;
      for (;;) {
        std::size_t const next = s.product[f][powers.back()];
        auto [it, fresh] = seen.emplace(next, powers.size());
        if (!fresh) {
          start = it->second;
          break;
        }
        powers.push_back(next);
      }
      std::size_t const period = powers.size() - start;
      if (period > 1) {
        if (result.aperiodic) {
          result.aperiodic = false;
          result.witness = f;
          result.period = period;
          for (std::size_t k = start; k < powers.size(); ++k) {
            result.cycle.push_back(s.elements[powers[k]].table);
          }
        }
      } else {
        // powers[start] = f^{start+1} is the fixed point.
        result.bound = std::max(result.bound, start + 1);
      }
    }
    return result;
  }

}  // namespace treefo
