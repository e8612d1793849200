// treefo: syntactic algebras of regular tree languages and a three-valued
// first-order definability verdict.
//
// Exit codes: 0 DEFINABLE (or success), 1 NOT_DEFINABLE (or a negative
// answer), 2 UNKNOWN, 3 parse or input error, 4 configuration error,
// 5 anything else.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treefo/report.hpp"

namespace {

  using namespace treefo;

  int status_code(Status s) {
    switch (s) {
      case Status::Definable: return 0;
      case Status::NotDefinable: return 1;
      case Status::Unknown: return 2;
    }
    return 5;
  }

  std::map<std::string, std::string> load_names(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ss.str());
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object()) {
      throw InputError(path + ": expected an object of element names");
    }
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!it.value().is_string()) {
        throw InputError(path + ": name for " + it.key()
                         + " is not a string");
      }
      out.emplace(it.key(), it.value().get<std::string>());
    }
    return out;
  }

  CloneAlgebra algebra(RunConfig& cfg, Dfta const& a) {
    if (cfg.max_arity == 0) {
      cfg.max_arity = default_max_arity(a.alphabet());
    }
    CloneAlgebra c = build_syntactic(a, cfg.max_arity);
    if (!cfg.names.empty()) {
      apply_names(c, load_names(cfg.names));
    }
    return c;
  }

  void emit(Json const& doc, RunConfig const& cfg) {
    std::cout << render(doc, cfg.format);
  }

  struct Args {
    std::string automaton;
    std::string tree;
    std::string expression;
    std::size_t depth = 3;
    bool        accepted_only = false;
  };

  int run(std::string const& cmd, RunConfig cfg, Args const& args) {
    cfg.command = cmd;
    cfg.input = args.automaton;
    Dfta const a = load_dfta(args.automaton);
    Json       doc = header_json(cfg);

    if (cmd == "member") {
      Tree const t = parse_tree(args.tree, a.alphabet());
      if (!is_ground(t)) {
        throw InputError("member needs a ground tree");
      }
      bool const in = a.member(t);
      doc["tree"] = to_string(t);
      doc["member"] = in;
      if (cfg.format == "json") {
        emit(doc, cfg);
      } else {
        std::cout << (in ? "accept" : "reject") << '\n';
      }
      return in ? 0 : 1;
    }

    if (cmd == "enumerate") {
      Json trees = Json::array();
      for (auto const& t : enumerate_trees(a.alphabet(), {}, args.depth)) {
        auto const q = a.run(t);
        bool const in = q && a.accepting(*q);
        if (args.accepted_only && !in) {
          continue;
        }
        trees.push_back(Json{{"tree", to_string(t)},
                             {"state", q ? a.state_name(*q) : "-"},
                             {"accept", in}});
      }
      doc["depth"] = args.depth;
      doc["count"] = trees.size();
      doc["trees"] = trees;
      emit(doc, cfg);
      return 0;
    }

    if (cmd == "starfree") {
      cfg.input = args.expression;
      doc = header_json(cfg);
      doc["automaton"] = args.automaton;
      StarFreeExpr const e = load_starfree(args.expression, a.alphabet());
      doc["expression"] = to_string(e);
      LanguageComparison const r = compare_language(e, a, cfg.oracle_depth);
      doc["comparison"] = comparison_json(r);
      emit(doc, cfg);
      return r.agree() ? 0 : 1;
    }

    CloneAlgebra const c = algebra(cfg, a);
    doc = header_json(cfg);

    if (cmd == "syntactic") {
      doc["carrier"] = carrier_json(c);
      doc["semigroup"] = semigroup_json(c);
      emit(doc, cfg);
      return 0;
    }
    if (cmd == "congruences") {
      doc["lattice"] = lattice_json(c, congruence_lattice(c));
      emit(doc, cfg);
      return 0;
    }
    if (cmd == "minsets") {
      doc["idempotents"] = idempotents_json(c);
      doc["minimal_sets"] = all_minsets_json(c, congruence_lattice(c));
      emit(doc, cfg);
      return 0;
    }
    if (cmd == "verdict") {
      Verdict const v = verdict(c);
      doc["verdict"] = verdict_json(c, v);
      emit(doc, cfg);
      return status_code(v.status);
    }

    // analyze
    CongruenceLattice const lat = congruence_lattice(c);
    Verdict const           v = verdict(c);
    doc["carrier"] = carrier_json(c);
    doc["semigroup"] = semigroup_json(c);
    doc["lattice"] = lattice_json(c, lat);
    doc["idempotents"] = idempotents_json(c);
    doc["minimal_sets"] = all_minsets_json(c, lat);
    doc["divisors"] = divisors_json(c, divisor_index(c));
    doc["verdict"] = verdict_json(c, v);
    emit(doc, cfg);
    return status_code(v.status);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syntactic algebras of regular tree languages and "
               "first-order definability"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--max-arity", cfg.max_arity,
                 "arity cap of the operation tables (default: max(3, rank))")
      ->envname("FOTREE_MAX_ARITY");
  app.add_option("--oracle-depth", cfg.oracle_depth,
                 "height bound for bounded comparisons")
      ->envname("FOTREE_ORACLE_DEPTH")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  app.add_option("--format", cfg.format, "report format")
      ->envname("FOTREE_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--names", cfg.names,
                 "JSON object renaming elements by their representative")
      ->envname("FOTREE_NAMES");

  Args args;
  auto with_automaton = [&](CLI::App* sub) {
    sub->add_option("automaton", args.automaton, "automaton JSON file")
        ->required();
    return sub;
  };
  for (auto const* name :
       {"analyze", "syntactic", "congruences", "minsets", "verdict"}) {
    with_automaton(app.add_subcommand(name, std::string(name) + " report"));
  }
  auto* member = with_automaton(
      app.add_subcommand("member", "decide membership of a ground tree"));
  member->add_option("tree", args.tree, "tree text, e.g. a(c,c)")
      ->required();
  auto* enumerate = with_automaton(app.add_subcommand(
      "enumerate", "list trees up to a height with their run states"));
  enumerate->add_option("--depth", args.depth, "height bound")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  enumerate->add_flag("--accepted", args.accepted_only,
                      "only accepted trees");
  auto* starfree = app.add_subcommand(
      "starfree", "compare a star-free expression with an automaton");
  starfree->add_option("expression", args.expression, "expression file")
      ->required();
  starfree->add_option("automaton", args.automaton, "automaton JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 4;
  }

  std::string const cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, cfg, args);
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (InputError const& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (ExpressionError const& e) {
    std::cerr << "expression error: " << e.what() << '\n';
    return 3;
  } catch (ConfigError const& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 4;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
}
