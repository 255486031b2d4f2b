// Acceptance runner: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--known-failure ID]...
// Exits 0 iff the set of failing criteria equals the declared known failures,
// so a documented shortfall stays visible without masking regressions.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "infodist/catalog.hpp"
#include "infodist/distance.hpp"
#include "infodist/large_space.hpp"
#include "infodist/nonzero_sum.hpp"
#include "infodist/structure_analysis.hpp"
#include "test_support.hpp"

using namespace infodist;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

Outcome criterion1() {
  Outcome o;
  const std::string cmd = std::string(INFODIST_CLI_PATH) + " --format csv repro-appendix-f 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {false, "cannot launch CLI"};
  std::map<std::string, double> rows;
  std::array<char, 512> line{};
  while (fgets(line.data(), line.size(), pipe)) {
    std::string s(line.data());
    const auto comma = s.rfind(',');
    if (comma == std::string::npos || s.rfind("quantity", 0) == 0) continue;
    rows[s.substr(0, comma)] = std::stod(s.substr(comma + 1));
  }
  const int st = pclose(pipe);
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0 || !rows.count("d(u1,u2)") || !rows.count("d(u1,u2')"))
    return {false, "repro-appendix-f did not produce both rows"};
  const double a = rows["d(u1,u2)"], b = rows["d(u1,u2')"];
  o.pass = std::abs(a - 0.5) <= 1e-6 && std::abs(b - 1.0) <= 1e-6;
  o.detail = "d(u1,u2)=" + fmt(a) + " d(u1,u2')=" + fmt(b);
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (double p : {0.6, 0.75, 0.9}) {
    const double q = 1 - p, s = 2 * p - 1;
    const std::map<std::pair<int, int>, double> quoted{
        {{2, 1}, 2 * p * q * s}, {{4, 3}, 6 * p * p * q * q * s}, {{4, 1}, 2 * p * q * s * (1 + 3 * p - 3 * p * p)}};
    for (int n = 1; n <= 4; ++n)
      for (int l = 0; l < n; ++l) {
        const double lp = single_agent_distance(blackwell_structure({n, 0, p, p}), blackwell_structure({l, 0, p, p}));
        worst = std::max(worst, std::abs(lp - blackwell_d1_closed_form(n, l, p)));
        if (auto it = quoted.find({n, l}); it != quoted.end()) worst = std::max(worst, std::abs(lp - it->second));
      }
  }
  o.pass = worst <= 1e-6;
  o.detail = "max |LP - closed form| = " + fmt(worst);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const double p = 0.75;
  double worst = 0.0;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 3; ++l) {
        if (n == l) continue;
        const double d = value_distance(blackwell_structure({n, m, p, p}), blackwell_structure({l, m, p, p}));
        const double d1 = blackwell_d1_closed_form(std::max(n, l), std::min(n, l), p);
        worst = std::max(worst, std::abs(d - d1));
      }
  o.pass = worst <= 1e-6;
  o.detail = "max |d(u_nm,u_lm) - d1(u_n,u_l)| = " + fmt(worst);
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(2024);
  std::uniform_int_distribution<int> ks(1, 3), sig(1, 4);
  double sym = 0, tri = 0, l1ex = 0, d1ex = 0, wit = 0, mono = 0;
  for (int t = 0; t < 200; ++t) {
    const int K = ks(rng);
    const InformationStructure a = random_structure(rng, K, sig(rng), sig(rng));
    const InformationStructure b = random_structure(rng, K, sig(rng), sig(rng));
    const InformationStructure c = random_structure(rng, K, sig(rng), sig(rng));
    const double ab = value_distance(a, b), ba = value_distance(b, a);
    sym = std::max(sym, std::abs(ab - ba));
    tri = std::max(tri, value_distance(a, c) - ab - value_distance(b, c));
    l1ex = std::max(l1ex, ab - l1(pad(a, 4, 4).probs(), pad(b, 4, 4).probs()));
    d1ex = std::max(d1ex, single_agent_distance(a, b) - ab);
    const GapCertificate cert = one_sided_gap(a, b);
    const ZeroSumGame g = witness_game(a, b);
    wit = std::max(wit, std::abs(cert.gap - (value(b, g).value - value(a, g).value)));
    // Garbling player 1 can only hurt player 1; garbling player 2 can only help.
    const ZeroSumGame h = random_game(rng, K, 2, 2);
    const double va = value(a, h).value;
    const double g1 = value(garble(a, Side::Player1, random_garbling(rng, a.signals1(), 3)), h).value;
    const double g2 = value(garble(a, Side::Player2, random_garbling(rng, a.signals2(), 3)), h).value;
    mono = std::max({mono, g1 - va, va - g2});
  }
  o.pass = sym <= 1e-7 && tri <= 1e-6 && l1ex <= 1e-7 && d1ex <= 1e-6 && wit <= 1e-5 && mono <= 1e-7;
  o.detail = "symmetry " + fmt(sym) + ", triangle excess " + fmt(tri) + ", l1 excess " + fmt(l1ex) +
             ", d1 excess " + fmt(d1ex) + ", witness " + fmt(wit) + ", monotonicity " + fmt(mono);
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(55);
  std::uniform_int_distribution<int> n(1, 3);
  double worst = 0.0, cert = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int K = n(rng);
    const InformationStructure u = random_structure(rng, K, n(rng), n(rng));
    const ZeroSumGame g = random_game(rng, K, n(rng), n(rng));
    int rows = 0, cols = 0;
    const std::vector<double> A = normal_form_matrix(u, g, rows, cols);
    // The matrix game value is certified by its own strategies.
    const MatrixGameResult mg = solve_matrix_game(A, rows, cols);
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < cols; ++j) {
      double s = 0;
      for (int i = 0; i < rows; ++i) s += mg.row_strategy[i] * A[i * cols + j];
      lo = std::min(lo, s);
    }
    for (int i = 0; i < rows; ++i) {
      double s = 0;
      for (int j = 0; j < cols; ++j) s += mg.col_strategy[j] * A[i * cols + j];
      hi = std::max(hi, s);
    }
    cert = std::max(cert, hi - lo);
    worst = std::max(worst, std::abs(value(u, g).value - lo));
  }
  o.pass = worst <= 1e-6 && cert <= 1e-9;
  o.detail = "max |LP - normal form| = " + fmt(worst) + ", certificate gap " + fmt(cert);
  return o;
}

// mu(k, c, c1, d, d1) = base(k, c, d) [(1 - t) a(c1|c) b(d1|d) + t r(c1, d1 | k, c, d)]
Tensor joint_instance(Rng& rng, double t) {
  const InformationStructure base = random_structure(rng, 2, 2, 2, 0.0);
  const Garbling a = random_garbling(rng, 2, 2), b = random_garbling(rng, 2, 2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> data;
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < 2; ++c) {
      std::array<double, 2 * 2 * 2> r{};
      for (int d = 0; d < 2; ++d) {
        double s = 0.0;
        for (int x = 0; x < 4; ++x) s += (r[d * 4 + x] = U(rng));
        for (int x = 0; x < 4; ++x) r[d * 4 + x] /= s;
      }
      for (int c1 = 0; c1 < 2; ++c1)
        for (int d = 0; d < 2; ++d)
          for (int d1 = 0; d1 < 2; ++d1)
            data.push_back(base(k, c, d) * ((1 - t) * a(c, c1) * b(d, d1) + t * r[d * 4 + c1 * 2 + d1]));
    }
  return Tensor({2, 2, 2, 2, 2}, data);
}

Outcome criterion6() {
  Outcome o;
  Rng rng(6);
  std::uniform_real_distribution<double> T(0.0, 0.5);
  double worst = -1e300;
  int fails = 0;
  for (int i = 0; i < 50; ++i) {
    const PropositionCheck r = check_joint_information_prop(joint_instance(rng, i < 5 ? 0.0 : T(rng)));
    worst = std::max(worst, r.lhs - r.rhs);
    fails += r.lhs > r.rhs + 1e-6;
  }
  double worst_ak = -1e300;
  for (double eps : {0.01, 0.05, 0.1}) {
    const ApproxKnowledgePair p = approx_knowledge_pair(eps);
    const double d = value_distance(p.u, p.v);
    worst_ak = std::max(worst_ak, d - 20 * p.eps_prime);
    fails += d > 20 * p.eps_prime + 1e-6;
  }
  o.pass = fails == 0;
  o.detail = "max d - eps = " + fmt(worst) + ", max d - 20 eps' = " + fmt(worst_ak);
  return o;
}

InformationStructure block_mixture(double w, const InformationStructure& a, const InformationStructure& b) {
  const int C = a.signals1() + b.signals1(), D = a.signals2() + b.signals2();
  std::vector<double> p(static_cast<std::size_t>(a.states()) * C * D, 0.0);
  for (int k = 0; k < a.states(); ++k) {
    for (int c = 0; c < a.signals1(); ++c)
      for (int d = 0; d < a.signals2(); ++d) p[(k * C + c) * D + d] = w * a(k, c, d);
    for (int c = 0; c < b.signals1(); ++c)
      for (int d = 0; d < b.signals2(); ++d) p[(k * C + a.signals1() + c) * D + a.signals2() + d] = (1 - w) * b(k, c, d);
  }
  return InformationStructure(a.state_labels(), C, D, p);
}

// u with every player-1 signal duplicated at half mass.
InformationStructure duplicate_signals(const InformationStructure& u) {
  const int C = u.signals1(), D = u.signals2();
  std::vector<double> p;
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < 2 * C; ++c)
      for (int d = 0; d < D; ++d) p.push_back(u(k, c / 2, d) / 2);
  return InformationStructure(u.state_labels(), 2 * C, D, p);
}

Outcome criterion7() {
  Outcome o;
  const AppendixF f = appendix_f();
  const double simple = dnzs(f.u2, f.u2prime);
  const double mix = dnzs(block_mixture(0.3, f.u2, f.u2prime), block_mixture(0.5, f.u2, f.u2prime));
  Rng rng(7);
  double red = 0.0;
  for (int t = 0; t < 10; ++t) {
    const InformationStructure u = duplicate_signals(random_structure(rng, 2, 2, 2));
    red = std::max(red, value_distance(reduce_redundancy(u), u));
  }
  o.pass = is_simple(f.u2) && is_simple(f.u2prime) && simple == 2.0 && std::abs(mix - 0.4) <= 1e-9 && red <= 1e-6;
  o.detail = "simple pair " + fmt(simple) + ", mixture pair " + fmt(mix) + ", reduce " + fmt(red);
  return o;
}

Outcome criterion8a() {
  Outcome o;
  const MarkovWorld w(sample_S(4, 0), MarkovWorld::default_epsilon(4));
  const InformationStructure u1 = build_structure_ul(w, 1), u2 = build_structure_ul(w, 2);
  const ZeroSumGame g1 = build_game_gp(w, 1), g2 = build_game_gp(w, 2);
  double worst = 0.0;
  bool order = true;
  for (const ZeroSumGame* g : {&g1, &g2}) {
    const ValueResult r = value(u1, *g);
    // Independent best-response evaluation of the LP strategies.
    worst = std::max({worst, std::abs(oracle_guarantee1(u1, *g, r.strategy1) - r.value),
                      std::abs(oracle_guarantee2(u1, *g, r.strategy2) - r.value)});
  }
  const double v11 = value(u1, g1).value, v12 = value(u1, g2).value;
  // Exhaustive pure-rule normal form where it fits (4^4 x 4^4 for g^1).
  int rows = 0, cols = 0;
  const std::vector<double> A = normal_form_matrix(u1, g1, rows, cols);
  const double nf = solve_matrix_game(A, rows, cols).value;
  worst = std::max(worst, std::abs(nf - v11));
  const TruthfulGuarantee t11 = truthful_guarantee(w, 1, 1), t12 = truthful_guarantee(w, 1, 2);
  order &= t11.lower && *t11.lower <= v11 + 1e-9 && t11.upper && v11 <= *t11.upper + 1e-9;
  order &= t12.upper && v12 <= *t12.upper + 1e-9;
  worst = std::max({worst, std::abs(*t11.lower - oracle_guarantee1(u1, g1, truthful_strategy1(4, 1, 1))),
                    std::abs(*t12.upper - oracle_guarantee2(u1, g2, truthful_strategy2(4, 1, 2)))});
  const double lhs = value_distance(u2, u1), rhs = value(u2, g2).value - v12;
  o.pass = worst <= 1e-6 && order && lhs >= rhs - 1e-6;
  o.detail = "val(u1,g1)=" + fmt(v11) + " val(u1,g2)=" + fmt(v12) + ", cross-check " + fmt(worst) + ", d(u2,u1)=" +
             fmt(lhs) + " >= " + fmt(rhs);
  return o;
}

Outcome criterion8b() {
  Outcome o;
  const EventEReport r = event_e_report(sample_S(2000, 0), 1.0 / 25, 100000, 0);
  o.pass = r.tuples == 100000 && r.pass_rate() >= 0.99 && r.implication_violations == 0;
  o.detail = "N=2000 seed 0: pass rate " + fmt(r.pass_rate()) + " over " + std::to_string(r.tuples) +
             " tuples, implication violations " + std::to_string(r.implication_violations) + " of " +
             std::to_string(r.ui_checked);
  return o;
}

// Parts that failed inside a multi-part criterion, e.g. "8b".
std::set<std::string> failed_parts;

Outcome criterion8() {
  const Outcome a = criterion8a(), b = criterion8b();
  if (!a.pass) failed_parts.insert("8a");
  if (!b.pass) failed_parts.insert("8b");
  return {a.pass && b.pass, std::string("(a) ") + (a.pass ? "PASS " : "FAIL ") + a.detail + "; (b) " +
                                (b.pass ? "PASS " : "FAIL ") + b.detail};
}

BimatrixGame random_bimatrix(Rng& rng, int K, int I, int J) {
  return BimatrixGame(random_game(rng, K, I, J), random_game(rng, K, I, J));
}

InformationStructure random_public(Rng& rng, int K, int S) {
  const InformationStructure base = random_structure(rng, K, S, 1, 0.2);
  std::vector<double> p(static_cast<std::size_t>(K) * S * S, 0.0);
  for (int k = 0; k < K; ++k)
    for (int s = 0; s < S; ++s) p[(k * S + s) * S + s] = base(k, s, 0);
  return InformationStructure(labels(K), S, S, p);
}

Outcome criterion9() {
  Outcome o;
  const Counterexample i4 = counterexample("I4");
  const double d = value_distance(i4.u, i4.v);
  const double H = hausdorff_max(feasible_set(i4.u, *i4.game), feasible_set(i4.v, *i4.game));
  Rng rng(9);
  int ci_fail = 0, pub_fail = 0;
  double ci_slack = 1e300, pub_slack = 1e300;
  for (int t = 0; t < 30; ++t) {
    const FeasibleBoundReport r = verify_feasible_bound(random_cond_indep(rng, 2, 2, 2), random_cond_indep(rng, 2, 2, 2),
                                                        random_bimatrix(rng, 2, 2, 2), FeasibleCase::CondIndep);
    ci_fail += !r.pass;
    ci_slack = std::min(ci_slack, r.bound - r.hausdorff);
  }
  for (int t = 0; t < 10; ++t) {
    const FeasibleBoundReport r = verify_feasible_bound(random_public(rng, 2, 2), random_public(rng, 2, 2),
                                                        random_bimatrix(rng, 2, 2, 2), FeasibleCase::Public);
    pub_fail += !r.pass || r.multiplier != 1.0;
    pub_slack = std::min(pub_slack, r.bound - r.hausdorff);
  }
  o.pass = d <= 1e-6 && H >= 1 - 1e-6 && ci_fail == 0 && pub_fail == 0;
  o.detail = "I4 d=" + fmt(d) + " H=" + fmt(H) + ", cond-indep min slack " + fmt(ci_slack) + ", public min slack " +
             fmt(pub_slack);
  return o;
}

Outcome criterion10() {
  Outcome o;
  Rng rng(10);
  std::uniform_int_distribution<int> n(1, 3);
  double worst = 1e300;
  for (int t = 0; t < 30; ++t) {
    const int K = n(rng);
    const InformationStructure u = random_structure(rng, K, n(rng), n(rng));
    const InformationStructure v = random_structure(rng, K, n(rng), n(rng));
    const ZeroSumGame g = random_game(rng, K, n(rng), n(rng));
    const double d = value_distance(u, v);
    const GapCertificate cert = one_sided_gap(u, v);
    const Garbling sv = value(v, g).strategy1;
    // Rows past v's signals are never reached with positive weight; fill uniformly.
    std::vector<double> rows(static_cast<std::size_t>(cert.common) * g.actions1(), 1.0 / g.actions1());
    for (int c = 0; c < sv.source(); ++c)
      for (int i = 0; i < g.actions1(); ++i) rows[c * g.actions1() + i] = sv(c, i);
    const Garbling moved = transport_strategy(Garbling(cert.common, g.actions1(), rows), cert.q1);
    const double secured = oracle_guarantee1(u, g, moved);
    worst = std::min(worst, secured - (value(u, g).value - 2 * d));
  }
  o.pass = worst >= -1e-6;
  o.detail = "min guarantee - (val - 2d) = " + fmt(worst);
  return o;
}

Outcome criterion11() {
  Outcome o;
  const InformationStructure none = no_information(2);
  double excess = -1e300;
  for (int n : {1, 2, 4, 8}) excess = std::max(excess, value_distance(exa6_structure(n), none) - 2.0 / (n + 1));
  const InformationStructure ck = common_knowledge({0.5, 0.5});
  std::vector<double> ds;
  for (double eps : {0.5, 0.2, 0.05}) ds.push_back(value_distance(email_game(eps, 0.5, 12), ck));
  const bool decreasing = ds[0] > ds[1] && ds[1] > ds[2];
  o.pass = excess <= 1e-6 && decreasing;
  o.detail = "exa6 max excess " + fmt(excess) + ", email d = " + fmt(ds[0]) + ", " + fmt(ds[1]) + ", " + fmt(ds[2]);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-failure") known.insert(argv[++i]);

  struct Entry {
    const char* id;
    Outcome (*run)();
    double limit;  // seconds
  };
  const Entry entries[] = {{"1", criterion1, 1},      {"2", criterion2, 10},   {"3", criterion3, 30},
                           {"4", criterion4, 600},    {"5", criterion5, 600},  {"6", criterion6, 600},
                           {"7", criterion7, 600},    {"8", criterion8, 120},
                           {"9", criterion9, 600},    {"10", criterion10, 600}, {"11", criterion11, 600}};
  std::set<std::string> failed;
  for (const Entry& e : entries) {
    Outcome o;
    const Timer timer;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = timer.seconds();
    if (secs > e.limit) {
      o.pass = false;
      o.detail += ", over the " + fmt(e.limit) + " s budget";
    }
    if (!o.pass && std::string(e.id) != "8") failed.insert(e.id);
    std::cout << "criterion " << e.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ("
              << fmt(secs) << " s)" << std::endl;
  }
  failed.insert(failed_parts.begin(), failed_parts.end());
  if (failed != known) {
    std::cout << "unexpected outcome: failing set differs from the declared known failures\n";
    return 1;
  }
  return 0;
}
