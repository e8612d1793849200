#include "treefo/automaton.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "treefo/tuples.hpp"

namespace treefo {

  using json = nlohmann::json;

  Dfta::Dfta(RankedAlphabet           alphabet,
             std::vector<std::string> state_names,
             std::map<Key, State>     transitions,
             std::vector<bool>        accepting)
      : alphabet_(std::move(alphabet)),
        names_(std::move(state_names)),
        delta_(std::move(transitions)),
        accepting_(std::move(accepting)) {
    if (accepting_.size() != names_.size()) {
      throw InputError("acceptance vector does not match the state count");
    }
    std::set<std::string> seen;
    for (auto const& n : names_) {
      if (!seen.insert(n).second) {
        throw InputError("duplicate state '" + n + "'");
      }
    }
    for (auto const& [key, to] : delta_) {
      if (key.first >= alphabet_.size()) {
        throw InputError("transition on unknown symbol index");
      }
      if (key.second.size() != alphabet_[key.first].rank) {
        throw InputError("transition for '" + alphabet_[key.first].name
                         + "' has the wrong number of arguments");
      }
      for (State q : key.second) {
        if (q >= names_.size()) {
          throw InputError("transition argument out of range");
        }
      }
      if (to >= names_.size()) {
        throw InputError("transition target out of range");
      }
    }
  }

  std::optional<State> Dfta::find_state(std::string_view name) const {
    for (State q = 0; q < names_.size(); ++q) {
      if (names_[q] == name) {
        return q;
      }
    }
    return std::nullopt;
  }

  std::optional<State> Dfta::transition(std::size_t               symbol,
                                        std::vector<State> const& args) const {
    auto it = delta_.find(Key{symbol, args});
    if (it == delta_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool Dfta::is_complete() const {
    std::size_t expected = 0;
    for (auto const& s : alphabet_.symbols()) {
      std::size_t n = 1;
      for (unsigned i = 0; i < s.rank; ++i) {
        n *= names_.size();
      }
      expected += n;
    }
    return delta_.size() == expected;
  }

  std::optional<State> Dfta::run(Tree const& t) const {
    if (t.is_variable()) {
      throw InputError("cannot run an automaton on variable '"
                       + t.variable_name() + "'");
    }
    auto const sym = alphabet_.find(t.label().name);
    if (!sym || alphabet_[*sym].rank != t.label().rank) {
      throw InputError("unknown symbol '" + t.label().name + "'");
    }
    std::vector<State> args;
    args.reserve(t.children().size());
    for (auto const& c : t.children()) {
      auto q = run(c);
      if (!q) {
        return std::nullopt;
      }
      args.push_back(*q);
    }
    return transition(*sym, args);
  }

  bool Dfta::member(Tree const& t) const {
    auto q = run(t);
    return q && accepting_[*q];
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  namespace {

    json const& field(json const& obj, char const* name) {
      auto it = obj.find(name);
      if (it == obj.end()) {
        throw ParseError(std::string("automaton: missing field '") + name
                         + "'");
      }
      return *it;
    }

    State state_ref(std::map<std::string, State> const& index,
                    json const&                          v) {
      if (!v.is_string()) {
        throw ParseError("automaton: state references must be strings");
      }
      auto it = index.find(v.get<std::string>());
      if (it == index.end()) {
        throw InputError("automaton: unknown state '" + v.get<std::string>()
                         + "'");
      }
      return it->second;
    }

  }  // namespace

  Dfta parse_dfta_json(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (json::parse_error const& e) {
      throw ParseError(std::string("automaton: ") + e.what());
    }
    if (!doc.is_object()) {
      throw ParseError("automaton: top level must be an object");
    }

    json const& jalpha = field(doc, "alphabet");
    if (!jalpha.is_object()) {
      throw ParseError("automaton: 'alphabet' must be an object");
    }
    std::vector<Symbol> symbols;
    for (auto const& [name, rank] : jalpha.items()) {
      if (!rank.is_number_unsigned() && !(rank.is_number_integer()
                                          && rank.get<long long>() >= 0)) {
        throw ParseError("automaton: rank of '" + name
                         + "' must be a natural number");
      }
      symbols.push_back({name, rank.get<unsigned>()});
    }
    RankedAlphabet alphabet(std::move(symbols));

    json const& jstates = field(doc, "states");
    if (!jstates.is_array()) {
      throw ParseError("automaton: 'states' must be an array");
    }
    std::vector<std::string>     names;
    std::map<std::string, State> index;
    for (auto const& s : jstates) {
      if (!s.is_string()) {
        throw ParseError("automaton: state names must be strings");
      }
      auto name = s.get<std::string>();
      if (!index.emplace(name, names.size()).second) {
        throw InputError("automaton: duplicate state '" + name + "'");
      }
      names.push_back(name);
    }

    std::map<Dfta::Key, State> delta;
    json const&                jtrans = field(doc, "transitions");
    if (!jtrans.is_array()) {
      throw ParseError("automaton: 'transitions' must be an array");
    }
    for (auto const& tr : jtrans) {
      if (!tr.is_object()) {
        throw ParseError("automaton: transitions must be objects");
      }
      json const& jsym = field(tr, "symbol");
      if (!jsym.is_string()) {
        throw ParseError("automaton: transition symbol must be a string");
      }
      auto sym = alphabet.find(jsym.get<std::string>());
      if (!sym) {
        throw InputError("automaton: unknown symbol '"
                         + jsym.get<std::string>() + "'");
      }
      std::vector<State> args;
      if (auto it = tr.find("args"); it != tr.end()) {
        if (!it->is_array()) {
          throw ParseError("automaton: 'args' must be an array");
        }
        for (auto const& a : *it) {
          args.push_back(state_ref(index, a));
        }
      }
      if (args.size() != alphabet[*sym].rank) {
        throw InputError("automaton: transition for '" + alphabet[*sym].name
                         + "' expects " + std::to_string(alphabet[*sym].rank)
                         + " arguments");
      }
      State to = state_ref(index, field(tr, "to"));
      auto [it, fresh] = delta.emplace(Dfta::Key{*sym, args}, to);
      if (!fresh && it->second != to) {
        throw InputError("automaton: nondeterministic transition for '"
                         + alphabet[*sym].name + "'");
      }
    }

    std::vector<bool> accepting(names.size(), false);
    json const&       jacc = field(doc, "accepting");
    if (!jacc.is_array()) {
      throw ParseError("automaton: 'accepting' must be an array");
    }
    for (auto const& a : jacc) {
      accepting[state_ref(index, a)] = true;
    }
    return Dfta(std::move(alphabet), std::move(names), std::move(delta),
                std::move(accepting));
  }

  Dfta load_dfta(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open automaton file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dfta_json(ss.str());
  }

  std::string dfta_to_json(Dfta const& a) {
    json doc;
    doc["alphabet"] = json::object();
    for (auto const& s : a.alphabet().symbols()) {
      doc["alphabet"][s.name] = s.rank;
    }
    doc["states"] = a.state_names();
    doc["transitions"] = json::array();
    for (auto const& [key, to] : a.transitions()) {
      json args = json::array();
      for (State q : key.second) {
        args.push_back(a.state_name(q));
      }
      doc["transitions"].push_back({{"symbol", a.alphabet()[key.first].name},
                                    {"args", args},
                                    {"to", a.state_name(to)}});
    }
    doc["accepting"] = json::array();
    for (State q = 0; q < a.state_count(); ++q) {
      if (a.accepting(q)) {
        doc["accepting"].push_back(a.state_name(q));
      }
    }
    return doc.dump(2);
  }

  ////////////////////////////////////////////////////////////////////////
  // Completion and pruning
  ////////////////////////////////////////////////////////////////////////

  Dfta complete(Dfta const& a) {
    if (a.is_complete()) {
      return a;
    }
    auto names = a.state_names();
    std::string sink = "sink";
    while (a.find_state(sink)) {
      sink += "'";
    }
    names.push_back(sink);
    State const n = names.size();
    State const s = n - 1;

    auto delta = a.transitions();
    auto const& sigma = a.alphabet();
    for (std::size_t f = 0; f < sigma.size(); ++f) {
      for_each_tuple<State>(n, sigma[f].rank, [&](auto const& args) {
        delta.emplace(Dfta::Key{f, args}, s);
      });
    }
    std::vector<bool> acc;
    for (State q = 0; q < a.state_count(); ++q) {
      acc.push_back(a.accepting(q));
    }
    acc.push_back(false);
    return Dfta(sigma, std::move(names), std::move(delta), std::move(acc));
  }

  namespace {

    std::vector<bool> reachable(Dfta const& a) {
      std::vector<bool> seen(a.state_count(), false);
      bool              changed = true;
      while (changed) {
        changed = false;
        for (auto const& [key, to] : a.transitions()) {
          if (seen[to]) {
            continue;
          }
          bool ok = true;
          for (State q : key.second) {
            ok = ok && seen[q];
          }
          if (ok) {
            seen[to] = true;
            changed = true;
          }
        }
      }
      return seen;
    }

  }  // namespace

  PruneResult prune_unreachable(Dfta const& a) {
    auto const         live = reachable(a);
    std::vector<State> renum(a.state_count(), 0);
    std::vector<std::string> names, removed;
    std::vector<bool>        acc;
    for (State q = 0; q < a.state_count(); ++q) {
      if (live[q]) {
        renum[q] = names.size();
        names.push_back(a.state_name(q));
        acc.push_back(a.accepting(q));
      } else {
        removed.push_back(a.state_name(q));
      }
    }
    if (removed.empty()) {
      return {a, {}};
    }
    std::map<Dfta::Key, State> delta;
    for (auto const& [key, to] : a.transitions()) {
      bool ok = live[to];
      for (State q : key.second) {
        ok = ok && live[q];
      }
      if (!ok) {
        continue;
      }
      std::vector<State> args;
      for (State q : key.second) {
        args.push_back(renum[q]);
      }
      delta.emplace(Dfta::Key{key.first, std::move(args)}, renum[to]);
    }
    return {Dfta(a.alphabet(), std::move(names), std::move(delta),
                 std::move(acc)),
            std::move(removed)};
  }

  std::vector<std::optional<Tree>> least_representatives(Dfta const& a) {
    std::vector<std::optional<Tree>> rep(a.state_count());
    bool                             changed = true;
    while (changed) {
      changed = false;
      for (auto const& [key, to] : a.transitions()) {
        std::vector<Tree> children;
        bool              ok = true;
        for (State q : key.second) {
          if (!rep[q]) {
            ok = false;
            break;
          }
          children.push_back(*rep[q]);
        }
        if (!ok) {
          continue;
        }
        Tree t = Tree::node(a.alphabet()[key.first], std::move(children));
        if (!rep[to] || compare_trees(t, *rep[to]) < 0) {
          rep[to] = std::move(t);
          changed = true;
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Minimization
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Moore refinement; returns the class of each state.
    std::vector<std::size_t> refine(Dfta const& a) {
      std::size_t const        n = a.state_count();
      std::vector<std::size_t> cls(n);
      for (State q = 0; q < n; ++q) {
        cls[q] = a.accepting(q) ? 1 : 0;
      }
      auto const& sigma = a.alphabet();
      for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t>                        next(n);
        for (State q = 0; q < n; ++q) {
          std::vector<std::size_t> sig{cls[q]};
          for (std::size_t f = 0; f < sigma.size(); ++f) {
            unsigned const r = sigma[f].rank;
            for (unsigned i = 0; i < r; ++i) {
              for_each_tuple<State>(n, r - 1, [&](auto const& others) {
                std::vector<State> args(others.begin(), others.end());
                args.insert(args.begin() + i, q);
                sig.push_back(cls[*a.transition(f, args)]);
              });
            }
          }
          next[q] = ids.emplace(std::move(sig), ids.size()).first->second;
        }
        bool const stable = ids.size()
                            == std::set<std::size_t>(cls.begin(), cls.end())
                                   .size();
        cls = std::move(next);
        if (stable) {
          return cls;
        }
      }
    }

  }  // namespace

  Minimization minimize(Dfta const& input) {
    Minimization result;
    auto         pruned = prune_unreachable(input);
    if (!pruned.removed.empty()) {
      std::string note = "removed unreachable states:";
      for (auto const& r : pruned.removed) {
        note += " " + r;
      }
      result.notes.push_back(note);
    }
    Dfta completed = complete(pruned.dfta);
    if (completed.state_count() != pruned.dfta.state_count()) {
      result.notes.push_back("completed missing transitions with sink state "
                             + completed.state_names().back());
    }
    Dfta const a = prune_unreachable(completed).dfta;
    if (a.state_count() == 0) {
      throw InputError("automaton reaches no state on any ground tree");
    }

    auto const cls = refine(a);
    auto const reps = least_representatives(a);
    std::size_t const m
        = *std::max_element(cls.begin(), cls.end()) + 1;

    std::vector<std::optional<Tree>> class_rep(m);
    std::vector<State>               witness(m);
    for (State q = 0; q < a.state_count(); ++q) {
      auto& r = class_rep[cls[q]];
      if (!r || compare_trees(*reps[q], *r) < 0) {
        r = reps[q];
        witness[cls[q]] = q;
      }
    }
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return compare_trees(*class_rep[x], *class_rep[y]) < 0;
    });
    std::vector<State> pos(m);
    for (std::size_t i = 0; i < m; ++i) {
      pos[order[i]] = i;
    }

    std::vector<std::string> names;
    std::vector<bool>        acc;
    for (std::size_t i = 0; i < m; ++i) {
      result.representatives.push_back(*class_rep[order[i]]);
      names.push_back(to_string(*class_rep[order[i]]));
      acc.push_back(a.accepting(witness[order[i]]));
    }
    std::map<Dfta::Key, State> delta;
    auto const&                sigma = a.alphabet();
    for (std::size_t f = 0; f < sigma.size(); ++f) {
      for_each_tuple<State>(m, sigma[f].rank, [&](auto const& args) {
        std::vector<State> orig;
        for (State q : args) {
          orig.push_back(witness[order[q]]);
        }
        delta.emplace(Dfta::Key{f, args}, pos[cls[*a.transition(f, orig)]]);
      });
    }
    result.dfta = Dfta(sigma, std::move(names), std::move(delta),
                       std::move(acc));

    result.state_map.assign(input.state_count(), std::nullopt);
    for (State q = 0; q < input.state_count(); ++q) {
      if (auto p = a.find_state(input.state_name(q))) {
        result.state_map[q] = pos[cls[*p]];
      }
    }

    // Separating contexts, shortest first.
    Dfta const& d = result.dfta;
    auto&       sep = result.separators;
    auto        key = [](State p, State q) {
      return p < q ? std::pair{p, q} : std::pair{q, p};
    };
    for (State p = 0; p < m; ++p) {
      for (State q = p + 1; q < m; ++q) {
        if (d.accepting(p) != d.accepting(q)) {
          sep.emplace(std::pair{p, q}, Tree::variable("x0"));
        }
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::map<std::pair<State, State>, Tree> found;
      for (State p = 0; p < m; ++p) {
        for (State q = p + 1; q < m; ++q) {
          if (sep.count({p, q}) || found.count({p, q})) {
            continue;
          }
          for (std::size_t f = 0; f < sigma.size() && !found.count({p, q});
               ++f) {
            unsigned const r = sigma[f].rank;
            for (unsigned i = 0; i < r && !found.count({p, q}); ++i) {
              for_each_tuple<State>(m, r - 1, [&](auto const& others) {
                if (found.count({p, q})) {
                  return;
                }
                std::vector<State> ap(others.begin(), others.end());
                ap.insert(ap.begin() + i, p);
                auto aq = ap;
                aq[i] = q;
                State const p2 = *d.transition(f, ap);
                State const q2 = *d.transition(f, aq);
                if (p2 == q2) {
                  return;
                }
                auto it = sep.find(key(p2, q2));
                if (it == sep.end()) {
                  return;
                }
                std::vector<Tree> cs;
                for (unsigned j = 0; j < r; ++j) {
                  cs.push_back(j == i ? Tree::variable("x0")
                                      : result.representatives[ap[j]]);
                }
                Tree step = Tree::node(sigma[f], std::move(cs));
                found.emplace(std::pair{p, q},
                              substitute(it->second, {{"x0", step}}));
              });
            }
          }
        }
      }
      for (auto& kv : found) {
        sep.insert(std::move(kv));
        grew = true;
      }
    }
    if (sep.size() != m * (m - 1) / 2) {
      throw ContractViolation("minimization left inseparable states");
    }
    return result;
  }

}  // namespace treefo
