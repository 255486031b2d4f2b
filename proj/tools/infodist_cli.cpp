#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "infodist/catalog.hpp"
#include "infodist/distance.hpp"
#include "infodist/error.hpp"
#include "infodist/game_value.hpp"
#include "infodist/io.hpp"
#include "infodist/large_space.hpp"
#include "infodist/nonzero_sum.hpp"
#include "infodist/structure_analysis.hpp"

using namespace infodist;
using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::optional<double> budget;  // --budget, else INFODIST_BUDGET
  double tol = kDistTol;

  double budget_or(double fallback) const { return budget.value_or(fallback); }
  std::uint64_t seed_or_notice() const {
    if (!seed) std::cerr << "notice: no --seed given, using seed 0\n";
    return seed.value_or(0);
  }
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string cell(const ojson& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + cell(v[i]);
    return s;
  }
  return v.dump();
}

// Flat key/value report. Text with a single key prints the bare value.
void emit(const ojson& rep, const RunConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << rep.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "key,value\n";
    for (auto it = rep.begin(); it != rep.end(); ++it) std::cout << it.key() << "," << cell(it.value()) << "\n";
  } else if (rep.size() == 1) {
    std::cout << cell(rep.begin().value()) << "\n";
  } else {
    for (auto it = rep.begin(); it != rep.end(); ++it) std::cout << it.key() << ": " << cell(it.value()) << "\n";
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
};

void emit(const Table& t, const RunConfig& cfg) {
  if (cfg.format == "json") {
    ojson arr = ojson::array();
    for (const auto& r : t.rows) {
      ojson o;
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      arr.push_back(o);
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  const char* sep = cfg.format == "csv" ? "," : "  ";
  for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? sep : "") << t.columns[i];
  std::cout << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? sep : "") << cell(r[i]);
    std::cout << "\n";
  }
}

void emit_document(const nlohmann::json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_json_file(out, j);
}

InformationStructure load_structure(const std::string& path) {
  return io::structure_from_json(io::read_json_file(path), path);
}

ojson rows_json(const Garbling& q) {
  ojson rows = ojson::array();
  for (int s = 0; s < q.source(); ++s) {
    ojson r = ojson::array();
    for (int t = 0; t < q.target(); ++t) r.push_back(q(s, t));
    rows.push_back(r);
  }
  return rows;
}

ojson opt_num(const std::optional<double>& x) { return x ? ojson(*x) : ojson(); }

struct Command {
  CLI::App* app;
  std::function<void()> run;
};

const CLI::Validator kOpenTol(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (...) {
        return "not a number";
      }
      return (v > 0.0 && v < 1e-2) ? std::string() : "tolerance must lie in (0, 1e-2)";
    },
    "TOL in (0, 1e-2)");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value-based distances between information structures"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::uint64_t seed_value = 0;
  double budget_value = 0.0;

  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->default_val("text");
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed for randomized commands");
  auto* budget_opt = app.add_option("--budget", budget_value, "Enumeration budget override")
                         ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Comparison tolerance")->check(kOpenTol);

  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  // Shared positional holders.
  std::string a_path, b_path, c_path, out_path;

  {
    auto* s = add("value", "Value of a zero-sum game on a structure");
    static bool normal_form = false;
    s->add_option("structure", a_path)->required();
    s->add_option("game", b_path)->required();
    s->add_flag("--normal-form", normal_form, "Also solve the pure-rule normal form");
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path);
      const auto g = io::game_from_json(io::read_json_file(b_path), b_path);
      const ValueResult r = value(u, g);
      ojson rep;
      rep["value"] = r.value;
      if (normal_form) rep["normal_form_value"] = normal_form_value(u, g, cfg.budget_or(4e6));
      if (cfg.format == "json") {
        rep["strategy1"] = rows_json(r.strategy1);
        rep["strategy2"] = rows_json(r.strategy2);
      }
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("distance", "Value-based distance d(u, v)");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path), v = load_structure(b_path);
      ojson rep;
      rep["distance"] = value_distance(u, v);
      if (cfg.format != "text") {
        rep["gap_u_to_v"] = one_sided_gap(u, v).gap;
        rep["gap_v_to_u"] = one_sided_gap(v, u).gap;
      }
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("compare", "Is u better than v for player 1");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path), v = load_structure(b_path);
      const Comparison c = is_better(u, v);
      ojson rep;
      rep["better"] = c.gap <= cfg.tol;
      rep["gap"] = c.gap;
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("witness", "Game attaining sup_g val(v, g) - val(u, g)");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    s->add_option("-o,--output", out_path, "Write the game here");
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path), v = load_structure(b_path);
      const ZeroSumGame g = witness_game(u, v);
      if (out_path.empty() && cfg.format == "json") {
        std::cout << io::to_json(g).dump(2) << "\n";
        return;
      }
      if (!out_path.empty()) io::write_json_file(out_path, io::to_json(g));
      ojson rep;
      rep["val_u"] = value(u, g).value;
      rep["val_v"] = value(v, g).value;
      rep["difference"] = rep["val_v"].get<double>() - rep["val_u"].get<double>();
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("d1", "Single-agent distance between the player-1 views");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    commands.push_back({s, [&] {
      ojson rep;
      rep["d1"] = single_agent_distance(load_structure(a_path), load_structure(b_path));
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("diameter", "Diameter bounds for two state distributions");
    s->add_option("p", a_path)->required();
    s->add_option("q", b_path)->required();
    commands.push_back({s, [&] {
      const auto p = io::distribution_from_json(io::read_json_file(a_path), a_path);
      const auto q = io::distribution_from_json(io::read_json_file(b_path), b_path);
      const DiameterBounds d = diameter_bounds(p, q);
      ojson rep;
      rep["lower"] = d.lower;
      rep["upper"] = d.upper;
      rep["heuristic"] = d.heuristic;
      rep["p_prime"] = d.p_prime;
      rep["q_prime"] = d.q_prime;
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("dw", "Weighted game distance over a listed game family");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    s->add_option("--games", c_path, "Game or array of games")->required();
    commands.push_back({s, [&] {
      const auto games = io::games_from_json(io::read_json_file(c_path), c_path);
      ojson rep;
      rep["dw"] = dw(load_structure(a_path), load_structure(b_path), games);
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("reduce", "Merge redundant signals");
    s->add_option("u", a_path)->required();
    s->add_option("-o,--output", out_path);
    commands.push_back({s, [&] { emit_document(io::to_json(reduce_redundancy(load_structure(a_path))), out_path); }});
  }
  {
    auto* s = add("decompose", "Split into common-knowledge components");
    s->add_option("u", a_path)->required();
    s->add_option("-o,--output", out_path);
    commands.push_back({s, [&] {
      const Decomposition dec = ck_decompose(load_structure(a_path));
      if (cfg.format == "json" || !out_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : dec.components)
          arr.push_back({{"weight", c.weight},
                         {"signals1", c.signals1},
                         {"signals2", c.signals2},
                         {"structure", io::to_json(c.structure)}});
        emit_document(arr, out_path);
        return;
      }
      Table t{{"component", "weight", "signals1", "signals2"}, {}};
      for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const auto& c = dec.components[i];
        t.rows.push_back({static_cast<int>(i), c.weight, c.signals1, c.signals2});
      }
      emit(t, cfg);
    }});
  }
  {
    auto* s = add("dnzs", "Distance modulo redundancy and component relabeling");
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    commands.push_back({s, [&] {
      ojson rep;
      rep["dnzs"] = dnzs(load_structure(a_path), load_structure(b_path));
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("feasible", "Vertices of the feasible payoff set of a bimatrix game");
    s->add_option("u", a_path)->required();
    s->add_option("game", b_path)->required();
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path);
      const auto g = io::bimatrix_from_json(io::read_json_file(b_path), b_path);
      Table t{{"x", "y"}, {}};
      for (const Point& p : feasible_set(u, g, cfg.budget_or(1e6)).vertices) t.rows.push_back({p.x, p.y});
      emit(t, cfg);
    }});
  }
  {
    auto* s = add("verify-bound", "Check the feasible-set or individually rational bound");
    static std::string case_name = "cond_indep";
    static std::vector<double> point;
    s->add_option("u", a_path)->required();
    s->add_option("v", b_path)->required();
    s->add_option("game", c_path)->required();
    s->add_option("--case", case_name)->check(CLI::IsMember({"cond_indep", "public", "one_sided"}));
    s->add_option("--point", point, "x y: check the individually rational bound at this payoff")
        ->expected(2);
    commands.push_back({s, [&] {
      const auto u = load_structure(a_path), v = load_structure(b_path);
      const auto g = io::bimatrix_from_json(io::read_json_file(c_path), c_path);
      const FeasibleCase fc = parse_case(case_name);
      ojson rep;
      rep["case"] = case_name;
      if (point.size() == 2) {
        const IrBoundReport r = verify_ir_bound(u, v, g, {point[0], point[1]}, fc);
        rep["d"] = r.d;
        rep["m1_u"] = r.m1_u;
        rep["m2_u"] = r.m2_u;
        rep["m1_v"] = r.m1_v;
        rep["m2_v"] = r.m2_v;
        rep["distance"] = r.distance;
        rep["nearest"] = {r.nearest.x, r.nearest.y};
        rep["bound"] = r.bound;
        rep["pass"] = r.pass;
      } else {
        const FeasibleBoundReport r = verify_feasible_bound(u, v, g, fc);
        rep["d"] = r.d;
        rep["hausdorff"] = r.hausdorff;
        rep["multiplier"] = r.multiplier;
        rep["bound"] = r.bound;
        rep["pass"] = r.pass;
      }
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("catalog", "Emit a named structure or example as JSON");
    static std::string name;
    static int n = 2, m = 0, states = 2, M = 40;
    static double p = 0.75, r = 0.75, eps = 0.1;
    static std::vector<double> prior{0.5, 0.5};
    s->add_option("name", name,
                  "appendix-f-u1 | appendix-f-u2 | appendix-f-u2prime | appendix-f-game | blackwell | "
                  "no-information | exa6 | email | common-knowledge | approx-knowledge | F3 | F4a | F4b | F5 | I4")
        ->required();
    s->add_option("--n", n);
    s->add_option("--m", m);
    s->add_option("--p", p);
    s->add_option("--r", r);
    s->add_option("--eps", eps);
    s->add_option("--M", M);
    s->add_option("--states", states);
    s->add_option("--prior", prior);
    s->add_option("-o,--output", out_path);
    commands.push_back({s, [&] {
      using nlohmann::json;
      json doc;
      if (name == "appendix-f-u1") {
        doc = io::to_json(appendix_f().u1);
      } else if (name == "appendix-f-u2") {
        doc = io::to_json(appendix_f().u2);
      } else if (name == "appendix-f-u2prime") {
        doc = io::to_json(appendix_f().u2prime);
      } else if (name == "appendix-f-game") {
        doc = io::to_json(appendix_f_game());
      } else if (name == "blackwell") {
        doc = io::to_json(blackwell_structure({n, m, p, r}));
      } else if (name == "no-information") {
        doc = io::to_json(no_information(states));
      } else if (name == "exa6") {
        doc = io::to_json(exa6_structure(n));
      } else if (name == "email") {
        doc = io::to_json(email_game(eps, p, M));
      } else if (name == "common-knowledge") {
        doc = io::to_json(common_knowledge(prior));
      } else if (name == "approx-knowledge") {
        const ApproxKnowledgePair ak = approx_knowledge_pair(eps);
        doc = {{"u", io::to_json(ak.u)}, {"v", io::to_json(ak.v)}, {"eps_prime", ak.eps_prime}};
      } else {
        const Counterexample ce = counterexample(name);
        doc = {{"name", ce.name}, {"description", ce.description}, {"u", io::to_json(ce.u)}, {"v", io::to_json(ce.v)}};
        if (ce.u_prime) doc["u_prime"] = io::to_json(*ce.u_prime);
        if (ce.v_prime) doc["v_prime"] = io::to_json(*ce.v_prime);
        if (ce.game) doc["game"] = io::to_json(*ce.game);
      }
      emit_document(doc, out_path);
    }});
  }
  {
    auto* s = add("blackwell-table", "d1(u_n, u_l) for l < n <= nmax, LP against closed form");
    static double p = 0.75;
    static int nmax = 4;
    s->add_option("--p,--pmax", p, "Experiment accuracy in (1/2, 1)");
    s->add_option("--nmax", nmax)->check(CLI::Range(1, 12));
    commands.push_back({s, [&] {
      RunConfig c = cfg;
      if (c.format == "text") c.format = "csv";
      Table t{{"n", "l", "p", "d1_lp", "d1_closed_form"}, {}};
      for (int n = 1; n <= nmax; ++n)
        for (int l = 0; l < n; ++l) {
          const double lp = single_agent_distance(blackwell_structure({n, 0, p, p}), blackwell_structure({l, 0, p, p}));
          t.rows.push_back({n, l, p, lp, blackwell_d1_closed_form(n, l, p)});
        }
      emit(t, c);
    }});
  }

  auto* markov = add("markov", "Large-space Markov construction");
  markov->require_subcommand(1);
  markov->fallthrough();
  static int N = 4, l = 1, pp = 1;
  static double alpha = 1.0 / 25.0;
  static std::optional<double> eps_opt;
  auto world = [&](std::uint64_t seed) {
    return MarkovWorld(sample_S(N, seed), eps_opt.value_or(MarkovWorld::default_epsilon(N)), alpha);
  };
  {
    auto* s = markov->add_subcommand("sample", "Sample the mixing matrix S");
    s->add_option("-N", N)->check(CLI::Range(2, 1 << 20));
    s->add_option("-o,--output", out_path);
    commands.push_back({s, [&] {
      const std::uint64_t seed = cfg.seed_or_notice();
      const MixingMatrix S = sample_S(N, seed);
      if (cfg.format == "json" || !out_path.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int a = 0; a < N; ++a) {
          std::vector<int> row = S.row(a);
          for (int& b : row) ++b;
          rows.push_back(row);
        }
        emit_document({{"N", N}, {"seed", seed}, {"rows", rows}}, out_path);
        return;
      }
      Table t{{"a", "b"}, {}};
      for (int a = 0; a < N; ++a)
        for (int b : S.row(a)) t.rows.push_back({a + 1, b + 1});
      emit(t, cfg);
    }});
  }
  {
    auto* s = markov->add_subcommand("check-e", "Empirical frequency of the concentration event E");
    s->add_option("-N", N)->check(CLI::Range(2, 1 << 20));
    s->add_option("--alpha", alpha);
    commands.push_back({s, [&] {
      const EventEReport r = event_e_report(sample_S(N, cfg.seed_or_notice()), alpha,
                                            static_cast<long>(cfg.budget_or(1e5)), cfg.seed.value_or(0));
      ojson rep;
      rep["N"] = r.N;
      rep["alpha"] = r.alpha;
      rep["tuples"] = r.tuples;
      rep["sampled"] = r.sampled;
      for (std::size_t i = 0; i < kYFamilies.size(); ++i)
        rep[std::string("max_deviation ") + kYFamilies[i]] = r.max_deviation[i];
      for (std::size_t i = 0; i < kERatios.size(); ++i)
        rep[std::string("ratio_pass ") + kERatios[i]] = r.ratio_pass[i];
      rep["all_pass"] = r.all_pass;
      rep["pass_rate"] = r.pass_rate();
      rep["ui_checked"] = r.ui_checked;
      rep["implication_violations"] = r.implication_violations;
      emit(rep, cfg);
    }});
  }
  {
    auto* s = markov->add_subcommand("check-ui", "Check the UI ratio conditions on u^l");
    s->add_option("-N", N)->check(CLI::Range(2, 1 << 20));
    s->add_option("-l", l)->check(CLI::Range(1, 64));
    s->add_option("--eps", eps_opt);
    commands.push_back({s, [&] {
      const std::uint64_t seed = cfg.seed_or_notice();
      const UiReport r = check_ui(world(seed), l, static_cast<long>(cfg.budget_or(1e6)), seed);
      Table t{{"condition", "checked", "vacuous", "passed", "failed", "worst", "sampled"}, {}};
      for (const auto& c : r.conditions)
        t.rows.push_back({c.name, c.checked, c.vacuous, c.passed, c.failed, c.worst, c.sampled});
      emit(t, cfg);
    }});
  }
  {
    auto* s = markov->add_subcommand("games", "Value of g^p on u^l and the truthful guarantees");
    s->add_option("-N", N)->check(CLI::Range(2, 1 << 20));
    s->add_option("-l", l)->check(CLI::Range(1, 64));
    s->add_option("-p", pp)->check(CLI::Range(1, 64));
    s->add_option("--eps", eps_opt);
    commands.push_back({s, [&] {
      const MarkovWorld w = world(cfg.seed_or_notice());
      const double budget = cfg.budget_or(4e6);
      ojson rep;
      rep["N"] = N;
      rep["l"] = l;
      rep["p"] = pp;
      rep["epsilon"] = w.epsilon;
      std::optional<double> val;
      try {
        const InformationStructure u = build_structure_ul(w, l, budget);
        const ZeroSumGame g = build_game_gp(w, pp, budget);
        if (static_cast<double>(u.signals1()) * g.actions1() + static_cast<double>(u.signals2()) * g.actions2() <= 2e4)
          val = value(u, g).value;
      } catch (const Error& e) {
        if (e.kind() != "BudgetExceeded") throw;
      }
      rep["value"] = opt_num(val);
      const TruthfulGuarantee tg = truthful_guarantee(w, l, pp, std::max(budget, 1e8));
      rep["truthful_lower"] = opt_num(tg.lower);
      rep["truthful_upper"] = opt_num(tg.upper);
      emit(rep, cfg);
    }});
  }
  {
    auto* s = add("repro-appendix-f", "Distances for the three-structure example");
    commands.push_back({s, [&] {
      const AppendixF f = appendix_f();
      Table t{{"quantity", "value"}, {}};
      t.rows.push_back({"d(u1,u2)", value_distance(f.u1, f.u2)});
      t.rows.push_back({"d(u1,u2')", value_distance(f.u1, f.u2prime)});
      emit(t, cfg);
    }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*seed_opt) cfg.seed = seed_value;
    if (*budget_opt) {
      cfg.budget = budget_value;
    } else if (const char* env = std::getenv("INFODIST_BUDGET")) {
      char* end = nullptr;
      const double b = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(b > 0.0)) {
        std::cerr << "INFODIST_BUDGET must be a positive number\n";
        return 2;
      }
      cfg.budget = b;
    }
    for (const Command& c : commands)
      if (c.app->parsed()) {
        c.run();
        return 0;
      }
    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
