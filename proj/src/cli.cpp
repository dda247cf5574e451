#include "uf1/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uf1/fragments.hpp"
#include "uf1/pipeline.hpp"
#include "uf1/tiling.hpp"
#include "uf1/verify.hpp"

namespace uf1 {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  Budgets budgets;
  bool json = false;
  bool verbose = false;
  uint64_t seed = 1;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  ss << f.rdbuf();
  return ss.str();
}

std::optional<std::string> single_free_var(const Formula& f) {
  auto fv = free_variables(f);
  if (fv.size() > 1) throw Error("expected a sentence or a formula with one free variable");
  if (fv.empty()) return std::nullopt;
  return *fv.begin();
}

Json report_json(const MembershipReport& r) {
  Json j{{"member", r.member}};
  if (!r.member) {
    j["rule"] = r.rule;
    j["message"] = r.message;
    if (r.blame) j["blame"] = print(r.blame);
  }
  return j;
}

int cmd_check(const Config& c, const Formula& f, const std::string& fragment, std::ostream& out) {
  MembershipReport r;
  if (fragment == "uf1") r = check_uf1(f);
  else if (fragment == "duf1") r = check_duf1(f);
  else if (fragment == "gf1") r = check_gf1(f);
  else r = check_suf2(f);
  if (c.json) {
    Json j = report_json(r);
    j["fragment"] = fragment;
    out << j.dump() << "\n";
  } else {
    out << (r.member ? "member" : "not a member: " + r.str()) << "\n";
  }
  return r.member ? kExitYes : kExitNo;
}

// Stage equivalence on every structure up to the given size.
std::optional<std::pair<int, Structure>> verify_stages(const Formula& f, const Formula& d, const Muf* m, int max_n) {
  Vocabulary v = vocabulary_of(f);
  for (int n = 1; n <= max_n; ++n) {
    if (auto s = duf1_disagreement(v, n, f, d)) return std::pair{n, *s};
    if (m)
      if (auto s = muf1_disagreement(v, n, f, *m)) return std::pair{n, *s};
  }
  return std::nullopt;
}

int cmd_translate(const Config& c, const Formula& f, const std::string& to, int verify, std::ostream& out) {
  auto report = check_uf1(f);
  if (!report.member) throw FragmentError("UF1", report);
  auto x = single_free_var(f);
  Formula d = to_duf1(f, c.budgets);
  std::optional<Muf> m;
  if (to != "duf1") m = to_muf1(d, x);
  Json j{{"stage", to}};
  if (to == "duf1") {
    j["formula"] = print(d);
  } else if (to == "muf1") {
    j["formula"] = print_muf(*m);
  } else {
    auto ctx = build_context(preprocess_muf1(*m), c.budgets);
    auto star = translate_star(ctx, c.budgets);
    j["formula"] = print(star.star);
    j["legend"] = ctx.legend();
    j["torus_points"] = ctx.torus->size();
  }
  int code = kExitYes;
  if (verify > 0) {
    auto bad = verify_stages(f, d, m ? &*m : nullptr, verify);
    j["verify"] = {{"max_size", verify}, {"agree", !bad}};
    if (bad) {
      j["verify"]["size"] = bad->first;
      j["verify"]["counterexample"] = Json::parse(structure_to_json(bad->second));
      code = kExitNo;
    }
  }
  if (c.json) {
    out << j.dump() << "\n";
    return code;
  }
  out << j["formula"].get<std::string>() << "\n";
  if (j.contains("legend")) out << "# legend\n" << j["legend"].get<std::string>();
  if (verify > 0) {
    if (code == kExitYes)
      out << "# verify: stages agree on every structure of size <= " << verify << "\n";
    else
      out << "# verify: stages disagree at size " << j["verify"]["size"] << ": "
          << j["verify"]["counterexample"].dump() << "\n";
  }
  return code;
}

const char* const kUndecidable =
    "refused: the input lies in %s but not in UF1; satisfiability for %s is Pi^0_1-complete "
    "(undecidable), so no decision procedure is offered";

std::string refusal(const std::string& fragment) {
  char buf[256];
  std::snprintf(buf, sizeof buf, kUndecidable, fragment.c_str(), fragment.c_str());
  return buf;
}

int cmd_decide(const Config& c, const Formula& f, bool witness, std::ostream& out, std::ostream& err) {
  auto report = check_uf1(f);
  if (!report.member) {
    for (Fragment g : {Fragment::GF1, Fragment::SUF2})
      if (check_fragment(f, g).member) {
        std::string name = g == Fragment::GF1 ? "GF1" : "SUF2";
        err << refusal(name) << "\n";
        return kExitRefused;
      }
    throw FragmentError("UF1", report);
  }
  single_free_var(f);
  auto progress = [&](const std::string& stage) {
    if (c.verbose) err << "stage: " << stage << "\n";
  };
  DecideResult r = decide_uf1(f, c.budgets, witness, progress);
  Json j{{"verdict", r.sat ? "SAT" : "UNSAT"},
         {"stats",
          {{"duf1_nodes", r.duf1_nodes},
           {"muf1_subformulas", r.muf1_sub},
           {"torus_points", r.torus},
           {"mfo_nodes", r.star_nodes},
           {"skeleton_atoms", r.mfo.skeleton_atoms},
           {"rounds", r.mfo.rounds}}}};
  if (r.model) {
    j["witness"] = r.model->domain()[static_cast<size_t>(*r.witness)];
    j["model"] = Json::parse(structure_to_json(*r.model));
  }
  if (c.json) {
    out << j.dump() << "\n";
  } else {
    out << (r.sat ? "SAT" : "UNSAT") << "\n";
    if (r.model) {
      if (auto x = single_free_var(f)) out << "witness: " << *x << " = " << j["witness"].get<std::string>() << "\n";
      if (r.model->size() <= 12) out << "model: " << j["model"].dump() << "\n";
      else out << "model: " << r.model->size() << " elements (use --format json for the structure)\n";
    }
    if (c.verbose)
      for (const auto& [k, v] : j["stats"].items()) err << k << ": " << v << "\n";
  }
  return r.sat ? kExitYes : kExitNo;
}

int element_of(const Structure& s, const std::string& text) {
  for (int i = 0; i < s.size(); ++i)
    if (s.domain()[static_cast<size_t>(i)] == text) return i;
  throw Error("unknown element '" + text + "'");
}

int cmd_modelcheck(const Config& c, const Structure& s, const Formula& f, const std::vector<std::string>& assigns,
                   std::ostream& out) {
  Assignment env;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw Error("assignment must look like x=element: " + a);
    env[a.substr(0, eq)] = element_of(s, a.substr(eq + 1));
  }
  for (const auto& sym : vocabulary_of(f).symbols()) {
    if (!s.has_symbol(sym.name)) throw Error("the model does not interpret symbol " + sym.name);
    if (s.vocabulary().arity(sym.name) != sym.arity)
      throw Error("symbol " + sym.name + " has a different arity in the model");
  }
  bool v = model_check(s, env, f);
  if (c.json) out << Json{{"value", v}}.dump() << "\n";
  else out << (v ? "true" : "false") << "\n";
  return v ? kExitYes : kExitNo;
}

int cmd_oracle(const Config& c, const Formula& f, int max_size, std::ostream& out) {
  auto m = oracle_sat(f, max_size, c.budgets.oracle_models);
  Json j{{"result", m ? "SAT" : "UNKNOWN"}, {"max_size", max_size}};
  if (m) {
    j["model"] = Json::parse(structure_to_json(m->model));
    Json a = Json::object();
    for (const auto& [x, e] : m->witness) a[x] = m->model.domain()[static_cast<size_t>(e)];
    j["assignment"] = a;
  }
  if (c.json) {
    out << j.dump() << "\n";
  } else if (m) {
    out << "SAT\nmodel: " << j["model"].dump() << "\n";
    if (!m->witness.empty()) out << "assignment: " << j["assignment"].dump() << "\n";
  } else {
    out << "UNKNOWN (no model of size <= " << max_size << ")\n";
  }
  return m ? kExitYes : kExitNo;
}

int cmd_tile_encode(const Config& c, const TileSet& ts, const std::string& fragment, std::ostream& out) {
  Formula f = fragment == "gf1" ? conj(grid_axioms_gf1(), tiling_sentence_gf1(ts))
                                : conj(grid_axioms_suf2(), tiling_sentence_suf2(ts));
  if (c.json) {
    Json syms = Json::array();
    for (const auto& s : vocabulary_of(f).symbols()) syms.push_back({{"name", s.name}, {"arity", s.arity}});
    out << Json{{"fragment", fragment}, {"tiles", ts.tiles.size()}, {"vocabulary", syms}, {"sentence", print(f)}}.dump()
        << "\n";
  } else {
    out << print(f) << "\n";
  }
  return kExitYes;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Satisfiability for the uniform one-dimensional fragment UF1.\n"
               "Satisfiability and finite satisfiability coincide along the decision chain,\n"
               "so there is no separate finite mode.",
               "uf1"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "Seed for randomized work (default 1; the current commands are deterministic)");
  app.add_flag("-v,--verbose", c.verbose, "Print stage progress and statistics to stderr");
  std::vector<std::optional<uint64_t>> budget_flags(std::size(Budgets::kNames));
  for (size_t i = 0; i < budget_flags.size(); ++i)
    app.add_option(std::string("--budget-") + Budgets::kNames[i], budget_flags[i],
                   "Override one budget (profile from UF1_BUDGET_PROFILE: desk, ci or unbounded)");

  std::string file, file2, fragment, to;
  int verify = 0, max_size = 3;
  bool witness = false;
  std::vector<std::string> assigns;

  auto* check = app.add_subcommand("check", "Fragment membership (exit 0 member, 1 not)");
  check->add_option("file", file, "Formula file or -")->required();
  check->add_option("--fragment", fragment, "Fragment")->required()->check(CLI::IsMember({"uf1", "duf1", "gf1", "suf2"}));

  auto* translate = app.add_subcommand("translate", "Print one stage of the translation chain");
  translate->add_option("file", file, "UF1 formula file or -")->required();
  translate->add_option("--to", to, "Target stage")->required()->check(CLI::IsMember({"duf1", "muf1", "mfo"}));
  translate->add_option("--verify", verify, "Check stage equivalence on all structures up to this size")
      ->check(CLI::Range(1, 4));

  auto* decide = app.add_subcommand("decide", "Decide satisfiability of a UF1 formula (exit 0 SAT, 1 UNSAT)");
  decide->add_option("file", file, "UF1 formula file or -")->required();
  decide->add_flag("--witness", witness, "Reconstruct, replay and print a model");

  auto* modelcheck = app.add_subcommand("modelcheck", "Evaluate a formula on a JSON structure");
  modelcheck->add_option("model", file2, "Structure JSON file")->required();
  modelcheck->add_option("file", file, "Formula file or -")->required();
  modelcheck->add_option("--assign", assigns, "Free variable binding x=element (repeatable)");

  auto* tile = app.add_subcommand("tile-encode", "Print the grid axioms and tiling sentence for a tile set");
  tile->add_option("tiles", file, "Tile set JSON file or -")->required();
  tile->add_option("--fragment", fragment, "Target fragment")->required()->check(CLI::IsMember({"gf1", "suf2"}));

  auto* oracle = app.add_subcommand("oracle", "Exhaustive model search (exit 0 SAT, 1 UNKNOWN)");
  oracle->add_option("file", file, "Formula file or -")->required();
  oracle->add_option("--max-size", max_size, "Largest domain tried")->check(CLI::Range(1, 8));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitUsage;
  }

  try {
    c.budgets = Budgets::from_env();
    for (size_t i = 0; i < budget_flags.size(); ++i)
      if (budget_flags[i]) c.budgets.set(Budgets::kNames[i], *budget_flags[i]);
    c.json = format == "json";
    if (check->parsed()) return cmd_check(c, parse(read_input(file, in)), fragment, out);
    if (translate->parsed()) return cmd_translate(c, parse(read_input(file, in)), to, verify, out);
    if (decide->parsed()) return cmd_decide(c, parse(read_input(file, in)), witness, out, err);
    if (modelcheck->parsed())
      return cmd_modelcheck(c, structure_from_json(read_input(file2, in)), parse(read_input(file, in)), assigns, out);
    if (tile->parsed()) return cmd_tile_encode(c, parse_tiles(read_input(file, in)), fragment, out);
    if (oracle->parsed()) return cmd_oracle(c, parse(read_input(file, in)), max_size, out);
  } catch (const BudgetExceeded& e) {
    err << e.what() << "; raise it with --budget-" << e.budget << " or UF1_BUDGET_PROFILE=unbounded\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace uf1
