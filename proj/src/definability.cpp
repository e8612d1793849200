#include "treefo/definability.hpp"

#include <algorithm>
#include <map>

#include "treefo/tuples.hpp"

namespace treefo {

  std::string to_string(Status s) {
    switch (s) {
      case Status::NotDefinable: return "NOT_DEFINABLE";
      case Status::Definable: return "DEFINABLE";
      case Status::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
  }

  CloneAlgebra preclone_localisation(CloneAlgebra const& c, ElementSet s) {
    if (s == 0 || (s & ~full_set(c.size())) != 0) {
      throw ContractViolation("localisation needs a nonempty subset of the "
                              "carrier");
    }
    ClosureRequest req;
    req.carrier_size = c.size();
    req.domain = s;
    req.max_arity = c.max_arity;
    for (auto const& g : c.generators) {
      if (g.table.arity() > 0) {
        req.generators.push_back(g);
      }
    }
    if (c.ops.empty() || c.ops[0].size() != c.size()) {
      throw ContractViolation("preclone localisation needs every element "
                              "as a constant");
    }
    for (auto const& k : c.ops[0]) {
      req.constants.emplace_back(k.table.at(0), k.provenance);
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
    l.alphabet = c.alphabet;
    l.max_arity = c.max_arity;
    l.ops = close_operations(req);

    for (auto const& g : req.generators) {
      if (g.table.preserves(s)) {
        l.generators.push_back({g.table.restrict_to(dom), g.provenance});
      }
    }
    for (auto const& u : l.ops.at(1)) {
      l.generators.push_back(u);
    }

    req.linear = true;
    req.max_arity = 1;
    l.linear_unary = close_operations(req)[1];
    return l;
  }

  DivisorIndex divisor_index(CloneAlgebra const& c) {
    std::size_t const       n = c.size();
    std::vector<ElementSet> subsets;
    for (ElementSet s = 1; s <= full_set(n); ++s) {
      subsets.push_back(s);
      if (s == full_set(n)) {
        break;
      }
    }
    std::sort(subsets.begin(), subsets.end(), [](ElementSet a, ElementSet b) {
      if (cardinality(a) != cardinality(b)) {
        return cardinality(a) < cardinality(b);
      }
      return elements_of(a) < elements_of(b);
    });
    DivisorIndex index;
    for (ElementSet s : subsets) {
      DivisorEntry e;
      e.subset = s;
      e.localisation = preclone_localisation(c, s);
      e.lattice = congruence_lattice(e.localisation);
      index.entries.push_back(std::move(e));
    }
    return index;
  }

  NecessaryResult check_necessary(CloneAlgebra const& c,
                                  DivisorIndex const& index) {
    NecessaryResult r;
    r.aperiodicity = is_aperiodic(sg(c));
    if (!r.aperiodicity.aperiodic) {
      r.pass = false;
      return r;
    }
    for (auto const& entry : index.entries) {
      LocalReport local{entry.subset, {}};
      auto const& cs = entry.lattice.congruences;
      for (auto const& [i, j] : entry.lattice.covers) {
        local.reports.push_back(min_sets(entry.localisation, cs[i], cs[j]));
        auto const& rep = local.reports.back();
        for (auto const& ms : rep.minimal_sets) {
          for (auto const& t : ms.traces) {
            if (r.pass && t.label != TypeLabel::T && t.label != TypeLabel::S) {
              r.pass = false;
              r.trace = TraceWitness{entry.subset, cs[i],
                                     cs[j],        ms.idempotent.image,
                                     t.elements,   t.label};
            }
          }
        }
        if (!r.pass) {
          break;
        }
      }
      r.reports.push_back(std::move(local));
      if (!r.pass) {
        break;
      }
    }
    return r;
  }

  NecessaryResult check_necessary(CloneAlgebra const& c) {
    return check_necessary(c, divisor_index(c));
  }

  ////////////////////////////////////////////////////////////////////////
  // Semilattices
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool is_semilattice_op(OpTable const& s, std::size_t n) {
      for (Element x = 0; x < n; ++x) {
        if (s({x, x}) != x) {
          return false;
        }
        for (Element y = 0; y < n; ++y) {
          if (s({x, y}) != s({y, x})) {
            return false;
          }
          for (Element z = 0; z < n; ++z) {
            if (s({s({x, y}), z}) != s({x, s({y, z})})) {
              return false;
            }
          }
        }
      }
      return true;
    }

    struct NormalForm {
      std::uint64_t          vars = 0;
      std::optional<Element> constant;
    };

    // f(x) = meet of the variables in nf.vars, met with nf.constant.
    bool matches(OpTable const& f, OpTable const& s, NormalForm const& nf) {
      std::size_t const n = f.carrier_size();
      bool              ok = true;
      for_each_tuple<Element>(n, f.arity(), [&](std::vector<Element> const& t) {
        if (!ok) {
          return;
        }
        std::optional<Element> acc = nf.constant;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if ((nf.vars >> i) & 1U) {
            acc = acc ? s({*acc, t[i]}) : t[i];
          }
        }
        ok = f(t) == *acc;
      });
      return ok;
    }

    std::optional<NormalForm> normal_form(OpTable const& f, OpTable const& s) {
      std::size_t const k = f.arity();
      for (std::uint64_t v = 1; v < (std::uint64_t{1} << k); ++v) {
        NormalForm nf{v, std::nullopt};
        if (matches(f, s, nf)) {
          return nf;
        }
        for (Element c = 0; c < f.carrier_size(); ++c) {
          nf.constant = c;
          if (matches(f, s, nf)) {
            return nf;
          }
        }
      }
      return std::nullopt;
    }

    std::string nf_string(NormalForm const& nf,
                          std::vector<std::string> const& names) {
      std::string out;
      for (std::size_t i = 0; i < 64; ++i) {
        if ((nf.vars >> i) & 1U) {
          out += (out.empty() ? "" : " ∧ ") + ("x" + std::to_string(i));
        }
      }
      if (nf.constant) {
        out += " ∧ " + names.at(*nf.constant);
      }
      return out;
    }

    // A tuple at which f is not a meet normal form: a diagonal point where
    // f(x,...,x) is not below x, or else a point where f differs from the
    // meet of all its variables.
    std::pair<std::vector<Element>, Element> offending_tuple(OpTable const& f,
                                                             OpTable const& s) {
      std::size_t const n = f.carrier_size();
      for (Element x = 0; x < n; ++x) {
        std::vector<Element> d(f.arity(), x);
        Element const        v = f(d);
        if (s({v, x}) != v) {
          return {d, v};
        }
      }
      std::pair<std::vector<Element>, Element> out;
      bool                                     found = false;
      for_each_tuple<Element>(n, f.arity(), [&](std::vector<Element> const& t) {
        if (found) {
          return;
        }
        Element acc = t[0];
        for (Element e : t) {
          acc = s({acc, e});
        }
        if (f(t) != acc) {
          out = {t, f(t)};
          found = true;
        }
      });
      return out;
    }

  }  // namespace

  std::variant<SemilatticeCertificate, SufficientFailure> semilattice_check(
      CloneAlgebra const& d) {
    std::size_t const n = d.size();
    std::vector<OpTable> candidates;
    if (d.ops.size() > 2) {
      for (auto const& op : d.ops[2]) {
        if (is_semilattice_op(op.table, n)) {
          candidates.push_back(op.table);
        }
      }
    }
    if (candidates.empty()) {
      SufficientFailure f;
      f.reason = "no binary polynomial is a semilattice operation";
      return f;
    }

    std::vector<Operation const*> all;
    for (auto const& g : d.generators) {
      if (g.table.arity() > 0) {
        all.push_back(&g);
      }
    }
    for (std::size_t k = 1; k < d.ops.size(); ++k) {
      for (auto const& op : d.ops[k]) {
        all.push_back(&op);
      }
    }

    std::optional<SufficientFailure> first_failure;
    for (auto const& s : candidates) {
      SemilatticeCertificate cert;
      bool                   ok = true;
      for (auto const* op : all) {
        auto nf = normal_form(op->table, s);
        if (!nf) {
          if (!first_failure) {
            auto [args, value] = offending_tuple(op->table, s);
            SufficientFailure f;
            f.reason = "operation " + to_string(op->provenance)
                       + " is not a meet of variables and a constant";
            f.op = *op;
            f.args = args;
            f.value = value;
            first_failure = f;
          }
          ok = false;
          break;
        }
        cert.normal_forms.push_back(to_string(op->provenance) + " = "
                                    + nf_string(*nf, d.names));
      }
      if (!ok) {
        continue;
      }
      std::vector<Element> elems(n);
      for (std::size_t e = 0; e < n; ++e) {
        elems[e] = static_cast<Element>(e);
      }
      auto below = [&](Element x) {
        std::size_t k = 0;
        for (Element y = 0; y < n; ++y) {
          k += s({x, y}) == y ? 1 : 0;
        }
        return k;
      };
      std::stable_sort(elems.begin(), elems.end(), [&](Element x, Element y) {
        return below(x) < below(y);
      });
      for (Element e : elems) {
        cert.order.push_back(d.names[e]);
      }
      std::sort(cert.normal_forms.begin(), cert.normal_forms.end());
      cert.normal_forms.erase(
          std::unique(cert.normal_forms.begin(), cert.normal_forms.end()),
          cert.normal_forms.end());
      return cert;
    }
    return *first_failure;
  }

  SufficientResult check_sufficient(CloneAlgebra const& c,
                                    DivisorIndex const& index) {
    SufficientResult r;
    r.aperiodicity = is_aperiodic(sg(c));
    if (!r.aperiodicity.aperiodic) {
      r.pass = false;
      SufficientFailure f;
      f.reason = "the unary semigroup is not aperiodic";
      r.failures.push_back(f);
    }
    for (auto const& entry : index.entries) {
      auto const& cs = entry.lattice.congruences;
      if (cs.size() < 2) {
        continue;
      }
      std::size_t const top = cs.size() - 1;
      for (auto const& [i, j] : entry.lattice.covers) {
        if (j != top) {
          continue;
        }
        CloneAlgebra const q = quotient(entry.localisation, cs[i]);
        auto               res = semilattice_check(q);
        if (auto* cert = std::get_if<SemilatticeCertificate>(&res)) {
          cert->subset = entry.subset;
          cert->congruence = cs[i];
          r.certificates.push_back(std::move(*cert));
        } else {
          auto& f = std::get<SufficientFailure>(res);
          f.subset = entry.subset;
          f.congruence = cs[i];
          r.failures.push_back(std::move(f));
          r.pass = false;
        }
      }
    }
    return r;
  }

  SufficientResult check_sufficient(CloneAlgebra const& c) {
    return check_sufficient(c, divisor_index(c));
  }

  Verdict verdict(CloneAlgebra const& c) {
    Verdict      v;
    DivisorIndex index = divisor_index(c);
    v.necessary = check_necessary(c, index);
    v.caveats.push_back(
        "divisors are localisations at subsets of the carrier and their "
        "quotients; subalgebras obtained by removing operations are not "
        "examined");
    if (!v.necessary.pass) {
      v.status = Status::NotDefinable;
      return v;
    }
    v.sufficient = check_sufficient(c, index);
    v.status = v.sufficient->pass ? Status::Definable : Status::Unknown;
    return v;
  }

}  // namespace treefo
