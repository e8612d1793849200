#include "treefo/report.hpp"

#include <sstream>

namespace treefo {

  namespace {

    Json names_of(std::vector<Element> const&    xs,
                  std::vector<std::string> const& names) {
      Json out = Json::array();
      for (Element e : xs) {
        out.push_back(names.at(e));
      }
      return out;
    }

    Json table_json(OpTable const& t) {
      return to_string(t);
    }

    Json op_json(Operation const& op) {
      return Json{{"term", to_string(op.provenance)},
                  {"arity", op.table.arity()},
                  {"table", table_json(op.table)}};
    }

    Json aperiodicity_json(Aperiodicity const& a, UnarySemigroup const& s) {
      Json j{{"aperiodic", a.aperiodic}, {"bound", a.bound}};
      if (a.witness) {
        j["witness"] = op_json(s.elements.at(*a.witness));
        j["period"] = a.period;
        Json cyc = Json::array();
        for (auto const& t : a.cycle) {
          cyc.push_back(table_json(t));
        }
        j["cycle"] = cyc;
      }
      return j;
    }

    std::vector<std::string> local_names(CloneAlgebra const& c,
                                         ElementSet          subset) {
      std::vector<std::string> out;
      for (Element e : elements_of(subset)) {
        out.push_back(c.names.at(e));
      }
      return out;
    }

    Json failure_json(CloneAlgebra const& c, SufficientFailure const& f) {
      Json j;
      if (f.subset != 0) {
        auto const local = local_names(c, f.subset);
        j["subset"] = set_to_string(f.subset, c.names);
        j["congruence"] = to_string(f.congruence, local);
      }
      j["reason"] = f.reason;
      if (f.op) {
        auto const dn = divisor_names(c, f.subset, f.congruence);
        j["operation"] = op_json(*f.op);
        j["args"] = names_of(f.args, dn);
        j["value"] = dn.at(f.value);
      }
      return j;
    }

    Json certificate_json(CloneAlgebra const&           c,
                          SemilatticeCertificate const& cert) {
      auto const local = local_names(c, cert.subset);
      return Json{{"subset", set_to_string(cert.subset, c.names)},
                  {"congruence", to_string(cert.congruence, local)},
                  {"order", cert.order},
                  {"normal_forms", cert.normal_forms}};
    }

    void render_value(std::ostringstream& out, Json const& v, int indent);

    bool is_scalar(Json const& v) {
      return !v.is_object() && !v.is_array();
    }

    std::string scalar_text(Json const& v) {
      if (v.is_string()) {
        return v.get<std::string>();
      }
      return v.dump();
    }

    bool inline_array(Json const& v) {
      if (!v.is_array()) {
        return false;
      }
      for (auto const& x : v) {
        if (!is_scalar(x) && !(x.is_array() && inline_array(x))) {
          return false;
        }
      }
      return true;
    }

    std::string inline_text(Json const& v) {
      if (is_scalar(v)) {
        return scalar_text(v);
      }
      std::string s = "[";
      bool        first = true;
      for (auto const& x : v) {
        s += (first ? "" : ", ") + inline_text(x);
        first = false;
      }
      return s + "]";
    }

    void render_entries(std::ostringstream& out, Json const& obj, int indent) {
      std::string const pad(static_cast<std::size_t>(indent), ' ');
      for (auto it = obj.begin(); it != obj.end(); ++it) {
        Json const& v = it.value();
        if (is_scalar(v) || inline_array(v)) {
          out << pad << it.key() << ": " << inline_text(v) << '\n';
        } else {
          out << pad << it.key() << ":\n";
          render_value(out, v, indent + 2);
        }
      }
    }

    void render_value(std::ostringstream& out, Json const& v, int indent) {
      std::string const pad(static_cast<std::size_t>(indent), ' ');
      if (v.is_object()) {
        render_entries(out, v, indent);
      } else if (v.is_array()) {
        if (v.empty()) {
          out << pad << "(none)\n";
        }
        for (auto const& x : v) {
          if (is_scalar(x) || inline_array(x)) {
            out << pad << "- " << inline_text(x) << '\n';
          } else {
            std::ostringstream item;
            render_value(item, x, indent + 2);
            std::string text = item.str();
            text.replace(static_cast<std::size_t>(indent), 2, "- ");
            out << text;
          }
        }
      } else {
        out << pad << scalar_text(v) << '\n';
      }
    }

  }  // namespace

  std::vector<std::string> divisor_names(CloneAlgebra const& c,
                                         ElementSet          subset,
                                         Partition const&    theta) {
    auto const local = subset == 0 ? c.names : local_names(c, subset);
    if (theta.size() != local.size()) {
      return local;
    }
    std::vector<std::string> out;
    for (auto const& b : theta.blocks()) {
      if (b.size() == 1) {
        out.push_back(local[b.front()]);
        continue;
      }
      std::string name = "{";
      for (std::size_t i = 0; i < b.size(); ++i) {
        name += (i > 0 ? "," : "") + local[b[i]];
      }
      out.push_back(name + "}");
    }
    return out;
  }

  Json header_json(RunConfig const& cfg) {
    return Json{{"schema_version", kSchemaVersion},
                {"tool", "treefo"},
                {"version", kToolVersion},
                {"config",
                 {{"command", cfg.command},
                  {"input", cfg.input},
                  {"max_arity", cfg.max_arity},
                  {"oracle_depth", cfg.oracle_depth},
                  {"format", cfg.format},
                  {"names", cfg.names}}}};
  }

  Json carrier_json(CloneAlgebra const& c) {
    Json elems = Json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      Json e{{"name", c.names[i]}};
      if (c.representatives[i]) {
        e["representative"] = to_string(*c.representatives[i]);
      }
      if (!c.accepting.empty()) {
        e["accepting"] = static_cast<bool>(c.accepting[i]);
      }
      elems.push_back(e);
    }
    Json counts = Json::array();
    for (auto const& level : c.ops) {
      counts.push_back(level.size());
    }
    Json seps = Json::array();
    for (auto const& [pq, ctx] : c.separators) {
      seps.push_back(Json{{"pair", {c.names.at(pq.first), c.names.at(pq.second)}},
                          {"context", to_string(ctx)}});
    }
    Json gens = Json::array();
    for (auto const& g : c.generators) {
      gens.push_back(op_json(g));
    }
    return Json{{"size", c.size()},
                {"max_arity", c.max_arity},
                {"elements", elems},
                {"letters", gens},
                {"op_counts", counts},
                {"linear_unary_count", c.linear_unary.size()},
                {"separators", seps}};
  }

  Json semigroup_json(CloneAlgebra const& c) {
    UnarySemigroup const s = sg(c);
    Json                 elems = Json::array();
    for (std::size_t i = 0; i < s.elements.size(); ++i) {
      Json e = op_json(s.elements[i]);
      e.erase("arity");
      e["index"] = i;
      elems.push_back(e);
    }
    return Json{{"size", s.elements.size()},
                {"elements", elems},
                {"product", s.product},
                {"aperiodicity", aperiodicity_json(is_aperiodic(s), s)}};
  }

  Json lattice_json(CloneAlgebra const& c, CongruenceLattice const& lat) {
    Json congs = Json::array();
    for (auto const& p : lat.congruences) {
      congs.push_back(to_string(p, c.names));
    }
    Json hasse = Json::array();
    for (auto const& [i, j] : lat.covers) {
      hasse.push_back(to_string(lat.congruences[i], c.names) + " < "
                      + to_string(lat.congruences[j], c.names));
    }
    Json merges = Json::array();
    auto const gens = congruence_generators(c);
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        std::vector<std::size_t> raw(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
          raw[i] = i == b ? a : i;
        }
        Partition const p(raw);
        Json            m{{"partition", to_string(p, c.names)}};
        if (auto v = find_violation(c, p)) {
          Operation const& g = *gens.at(v->generator);
          m["congruence"] = false;
          m["witness"] = Json{{"operation", to_string(g.provenance)},
                              {"args_a", names_of(v->args_a, c.names)},
                              {"value_a", c.names.at(v->value_a)},
                              {"args_b", names_of(v->args_b, c.names)},
                              {"value_b", c.names.at(v->value_b)}};
        } else {
          m["congruence"] = true;
        }
        merges.push_back(m);
      }
    }
    bool const simple = c.size() >= 2 && lat.congruences.size() == 2;
    return Json{{"count", lat.congruences.size()},
                {"simple", simple},
                {"congruences", congs},
                {"hasse", hasse},
                {"pair_merges", merges}};
  }

  Json idempotents_json(CloneAlgebra const& c) {
    Json out = Json::array();
    for (auto const& e : idempotents(c)) {
      auto label = idempotent_label(c, e);
      out.push_back(Json{{"image", set_to_string(e.image, c.names)},
                         {"term", to_string(e.op.provenance)},
                         {"table", table_json(e.op.table)},
                         {"label", label ? std::string(1, to_char(*label))
                                         : std::string("-")}});
    }
    return out;
  }

  Json minsets_json(CloneAlgebra const& c, MinimalSetReport const& r) {
    Json sep = Json::array();
    for (auto const& e : r.separating) {
      sep.push_back(Json{{"image", set_to_string(e.image, c.names)},
                         {"term", to_string(e.op.provenance)}});
    }
    Json mins = Json::array();
    for (auto const& ms : r.minimal_sets) {
      Json traces = Json::array();
      for (auto const& t : ms.traces) {
        Json names = Json::array();
        for (Element e : elements_of(t.elements)) {
          names.push_back(c.names.at(e));
        }
        traces.push_back(Json{{"elements", names},
                              {"label", std::string(1, to_char(t.label))},
                              {"type", describe(t.label)},
                              {"divisor_size", t.divisor_size}});
      }
      mins.push_back(Json{{"image", set_to_string(ms.idempotent.image, c.names)},
                          {"term", to_string(ms.idempotent.op.provenance)},
                          {"traces", traces}});
    }
    return Json{{"alpha", to_string(r.alpha, c.names)},
                {"beta", to_string(r.beta, c.names)},
                {"separating", sep},
                {"minimal_sets", mins},
                {"order_notes", r.order_notes}};
  }

  Json all_minsets_json(CloneAlgebra const& c, CongruenceLattice const& lat) {
    Json out = Json::array();
    for (auto const& [i, j] : lat.covers) {
      out.push_back(
          minsets_json(c, min_sets(c, lat.congruences[i], lat.congruences[j])));
    }
    return out;
  }

  Json divisors_json(CloneAlgebra const& c, DivisorIndex const& index) {
    Json out = Json::array();
    for (auto const& e : index.entries) {
      Json counts = Json::array();
      for (auto const& level : e.localisation.ops) {
        counts.push_back(level.size());
      }
      std::size_t coatoms = 0;
      for (auto const& [i, j] : e.lattice.covers) {
        coatoms += j + 1 == e.lattice.congruences.size() ? 1 : 0;
      }
      out.push_back(Json{{"subset", set_to_string(e.subset, c.names)},
                         {"op_counts", counts},
                         {"congruences", e.lattice.congruences.size()},
                         {"simple_quotients", coatoms}});
    }
    return out;
  }

  Json verdict_json(CloneAlgebra const& c, Verdict const& v) {
    Json j{{"status", to_string(v.status)}};
    auto const& nec = v.necessary;
    Json        witness = nullptr;
    if (!nec.aperiodicity.aperiodic) {
      UnarySemigroup const s = sg(c);
      witness = Json{{"kind", "non-aperiodic unary element"}};
      witness.update(aperiodicity_json(nec.aperiodicity, s));
    } else if (nec.trace) {
      auto const& t = *nec.trace;
      auto const  local = local_names(c, t.subset);
      witness = Json{{"kind", "trace of forbidden type"},
                     {"subset", set_to_string(t.subset, c.names)},
                     {"alpha", to_string(t.alpha, local)},
                     {"beta", to_string(t.beta, local)},
                     {"minimal_set", set_to_string(t.minimal_set, local)},
                     {"trace", set_to_string(t.trace, local)},
                     {"label", std::string(1, to_char(t.label))},
                     {"type", describe(t.label)}};
    } else if (v.status == Status::Definable) {
      Json certs = Json::array();
      for (auto const& cert : v.sufficient->certificates) {
        certs.push_back(certificate_json(c, cert));
      }
      witness = Json{{"kind", "semilattice certificates"},
                     {"aperiodicity_bound", v.sufficient->aperiodicity.bound},
                     {"certificates", certs}};
    }
    j["witness"] = witness;

    Json diag{{"necessary", nec.pass ? "pass" : "fail"}};
    if (v.sufficient) {
      diag["sufficient"] = v.sufficient->pass ? "pass" : "fail";
      Json fails = Json::array();
      for (auto const& f : v.sufficient->failures) {
        fails.push_back(failure_json(c, f));
      }
      diag["sufficient_failures"] = fails;
      if (v.status == Status::Unknown) {
        Json certs = Json::array();
        for (auto const& cert : v.sufficient->certificates) {
          certs.push_back(certificate_json(c, cert));
        }
        diag["certificates"] = certs;
      }
    }
    if (v.status == Status::Unknown) {
      Json locals = Json::array();
      for (auto const& lr : nec.reports) {
        auto const entry_names = local_names(c, lr.subset);
        CloneAlgebra view;
        view.names = entry_names;
        Json reps = Json::array();
        for (auto const& r : lr.reports) {
          reps.push_back(minsets_json(view, r));
        }
        locals.push_back(Json{{"subset", set_to_string(lr.subset, c.names)},
                              {"reports", reps}});
      }
      diag["minimal_set_reports"] = locals;
    }
    j["diagnostics"] = diag;
    j["caveats"] = v.caveats;
    return j;
  }

  Json comparison_json(LanguageComparison const& r) {
    auto trees = [](std::vector<Tree> const& ts) {
      Json out = Json::array();
      for (auto const& t : ts) {
        out.push_back(to_string(t));
      }
      return out;
    };
    std::string const d = std::to_string(r.depth);
    return Json{{"depth", r.depth},
                {"agree", r.agree()},
                {"summary", r.agree() ? "agree to depth " + d
                                      : "disagree within depth " + d},
                {"expression_trees", r.expression_count},
                {"automaton_trees", r.automaton_count},
                {"only_expression", trees(r.only_expression)},
                {"only_automaton", trees(r.only_automaton)}};
  }

  std::string render_text(Json const& doc) {
    std::ostringstream out;
    render_value(out, doc, 0);
    return out.str();
  }

  std::string render(Json const& doc, std::string const& format) {
    if (format == "json") {
      return doc.dump(2) + "\n";
    }
    return render_text(doc);
  }

}  // namespace treefo
