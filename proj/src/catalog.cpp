#include "infodist/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "infodist/error.hpp"

namespace infodist {

namespace {

const std::vector<std::string> kBlueRed{"Blue", "Red"};
const std::vector<std::string> kBinary{"0", "1"};

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// P(2 Bin(n, p) - n = x) for every x in [-n, n]; index x + n.
std::vector<double> difference_law(int n, double p) {
  std::vector<double> law(2 * n + 1, 0.0);
  for (int s = 0; s <= n; ++s) law[2 * s] = binom(n, s) * std::pow(p, s) * std::pow(1.0 - p, n - s);
  return law;
}

double prob_greater(const std::vector<double>& law, int n, int d) {
  double s = 0.0;
  for (int x = d + 1; x <= n; ++x) s += law[x + n];
  return s;
}

double prob_less(const std::vector<double>& law, int n, int d) {
  double s = 0.0;
  for (int x = -n; x < d; ++x) s += law[x + n];
  return s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) fail("InvalidParameters", msg);
}

Tensor tensor_from(std::vector<int> shape, const std::vector<std::pair<std::vector<int>, double>>& atoms) {
  Tensor t(std::move(shape));
  for (const auto& [idx, w] : atoms) t.data[t.offset(idx)] += w;
  return t;
}

}  // namespace

AppendixF appendix_f() {
  return AppendixF{
      InformationStructure::uniform_on(kBlueRed, 3, 2, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 2, 1}}),
      InformationStructure::uniform_on(kBlueRed, 2, 1, {{0, 0, 0}, {1, 1, 0}}),
      InformationStructure::uniform_on(kBlueRed, 1, 2, {{0, 0, 0}, {1, 0, 1}}),
  };
}

ZeroSumGame appendix_f_game() {
  return ZeroSumGame(2, 2, 2, {0, 1, 0, -1, -1, 0, 1, 0});
}

InformationStructure blackwell_structure(const BlackwellSpec& s) {
  require(s.n >= 0 && s.m >= 0, "experiment counts must be nonnegative");
  require(s.p > 0.5 && s.p < 1.0 && s.r > 0.5 && s.r < 1.0, "accuracies must lie in (1/2, 1)");
  const int C = s.n + 1, D = s.m + 1;
  std::vector<double> probs(static_cast<std::size_t>(2) * C * D);
  for (int c = 0; c < C; ++c)
    for (int d = 0; d < D; ++d) {
      const double w = 0.5 * binom(s.n, c) * binom(s.m, d);
      probs[static_cast<std::size_t>(c) * D + d] =
          w * std::pow(s.p, s.n - c) * std::pow(1 - s.p, c) * std::pow(s.r, s.m - d) * std::pow(1 - s.r, d);
      probs[static_cast<std::size_t>(C + c) * D + d] =
          w * std::pow(s.p, c) * std::pow(1 - s.p, s.n - c) * std::pow(s.r, d) * std::pow(1 - s.r, s.m - d);
    }
  return InformationStructure(kBinary, C, D, std::move(probs));
}

std::vector<double> blackwell_gammas(int n, int l, double p) {
  require(n > l && l >= 0, "need n > l >= 0");
  require(p > 0.5 && p < 1.0, "accuracy must lie in (1/2, 1)");
  const auto law_n = difference_law(n, p), law_l = difference_law(l, p);
  std::vector<double> out;
  for (int d = 0; d <= l; ++d) {
    const double pd = std::pow(p, d), qd = pd / (pd + std::pow(1.0 - p, d));
    out.push_back(2.0 * (1.0 - qd) * (prob_greater(law_n, n, d) - prob_greater(law_l, l, d)) -
                  2.0 * qd * (prob_less(law_n, n, -d) - prob_less(law_l, l, -d)));
  }
  return out;
}

double blackwell_d1_closed_form(int n, int l, double p) {
  const auto g = blackwell_gammas(n, l, p);
  return *std::max_element(g.begin(), g.end());
}

InformationStructure no_information(int states) {
  require(states >= 1, "need at least one state");
  return InformationStructure(default_state_labels(states), 1, 1,
                              std::vector<double>(states, 1.0 / states));
}

InformationStructure exa6_structure(int n) {
  require(n >= 0, "n must be nonnegative");
  std::vector<std::array<int, 3>> atoms;
  for (int i = 0; i <= n; ++i) {
    atoms.push_back({0, i, i});
    atoms.push_back({1, i, i + 1});
  }
  return InformationStructure::uniform_on(kBlueRed, n + 1, n + 2, atoms);
}

InformationStructure email_game(double eps, double p, int M) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  require(M >= 1, "truncation must be at least 1");
  const int C = 2 + M / 2, D = 1 + (M + 1) / 2;
  std::vector<double> probs(static_cast<std::size_t>(2) * C * D, 0.0);
  probs[0] = 1.0 - p;
  for (int t = 0; t <= M; ++t) {
    const double pt = t < M ? std::pow(1.0 - eps, t) * eps : std::pow(1.0 - eps, M);
    const int c = 1 + t / 2, d = (t + 1) / 2;
    probs[static_cast<std::size_t>(C + c) * D + d] += p * pt;
  }
  return InformationStructure(kBinary, C, D, std::move(probs));
}

InformationStructure common_knowledge(const std::vector<double>& prior) {
  const int K = static_cast<int>(prior.size());
  require(K >= 1, "empty prior");
  std::vector<double> probs(static_cast<std::size_t>(K) * K * K, 0.0);
  for (int k = 0; k < K; ++k) probs[(static_cast<std::size_t>(k) * K + k) * K + k] = prior[k];
  return InformationStructure(default_state_labels(K), K, K, std::move(probs));
}

double knowledge_level(const InformationStructure& u) {
  auto one_side = [&](bool player1) {
    const int S = player1 ? u.signals1() : u.signals2();
    std::vector<std::pair<double, double>> gap_mass;  // (1 - max posterior, signal mass)
    for (int s = 0; s < S; ++s) {
      double mass = 0.0, best = 0.0;
      for (int k = 0; k < u.states(); ++k) {
        double w = 0.0;
        for (int t = 0; t < (player1 ? u.signals2() : u.signals1()); ++t)
          w += player1 ? u(k, s, t) : u(k, t, s);
        mass += w;
        best = std::max(best, w);
      }
      if (mass >= kZeroTol) gap_mass.emplace_back(1.0 - best / mass, mass);
    }
    std::sort(gap_mass.begin(), gap_mass.end());
    std::vector<double> candidates{1.0};
    double cum = 0.0;
    for (const auto& [gap, mass] : gap_mass) {
      candidates.push_back(gap);
      cum += mass;
      candidates.push_back(std::max(0.0, 1.0 - cum));
    }
    double best_eps = 1.0;
    for (double e : candidates) {
      double covered = 0.0;
      for (const auto& [gap, mass] : gap_mass)
        if (gap <= e + 1e-15) covered += mass;
      if (covered >= 1.0 - e - 1e-12) best_eps = std::min(best_eps, e);
    }
    return best_eps;
  };
  return std::max(one_side(true), one_side(false));
}

ApproxKnowledgePair approx_knowledge_pair(double eps) {
  require(eps >= 0.0 && eps < 0.5, "eps must lie in [0, 1/2)");
  std::vector<double> probs(8, 0.0);
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d)
        probs[(k * 2 + c) * 2 + d] = 0.5 * (c == k ? 1.0 - eps : eps) * (d == k ? 1.0 - eps : eps);
  InformationStructure u(kBinary, 2, 2, std::move(probs));
  InformationStructure v = common_knowledge({0.5, 0.5});
  const double level = knowledge_level(u);
  return ApproxKnowledgePair{std::move(u), std::move(v), level};
}

std::vector<Counterexample> counterexample_pairs() {
  std::vector<Counterexample> out;

  {
    // c' independent of k but correlated with d.
    std::vector<double> probs(8);
    for (int k = 0; k < 2; ++k)
      for (int c = 0; c < 2; ++c) {
        const double h = (k + c) / 2.0;
        probs[(k * 2 + c) * 2 + 1] = 0.25 * h;
        probs[(k * 2 + c) * 2 + 0] = 0.25 * (1.0 - h);
      }
    InformationStructure u(kBinary, 2, 2, probs);
    InformationStructure v = structure_from_tensor(as_tensor(u), {0}, {}, {2}, kBinary);
    out.push_back({"F3", "extra player-1 signal useless alone but informative about d", u, v,
                   std::nullopt, std::nullopt, as_tensor(u), std::nullopt});
  }
  {
    // axes (k, c, c1, c2, d); c and d trivial, k = c1 xor c2
    std::vector<std::pair<std::vector<int>, double>> atoms;
    for (int c1 = 0; c1 < 2; ++c1)
      for (int c2 = 0; c2 < 2; ++c2) atoms.push_back({{(c1 + c2) % 2, 0, c1, c2, 0}, 0.25});
    const Tensor t = tensor_from({2, 1, 2, 2, 1}, atoms);
    out.push_back({"F4a", "k = c1 xor c2: c2 gains value when c1 is present",
                   structure_from_tensor(t, {0}, {1, 2, 3}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1, 2}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1, 3}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1}, {4}, kBinary), t, std::nullopt});
  }
  {
    // c1, d uniform, c2 = d, k = c1 xor d
    std::vector<std::pair<std::vector<int>, double>> atoms;
    for (int c1 = 0; c1 < 2; ++c1)
      for (int d = 0; d < 2; ++d) atoms.push_back({{(c1 + d) % 2, 0, c1, d, d}, 0.25});
    const Tensor t = tensor_from({2, 1, 2, 2, 2}, atoms);
    out.push_back({"F4b", "c2 = d, k = c1 xor d: c1 and d dependent given k",
                   structure_from_tensor(t, {0}, {1, 2, 3}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1, 2}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1, 3}, {4}, kBinary),
                   structure_from_tensor(t, {0}, {1}, {4}, kBinary), t, std::nullopt});
  }
  {
    // axes (k, c, c1, d, d1): d = k w.p. 2/3, d1 = k, c1 = [d == k]
    std::vector<std::pair<std::vector<int>, double>> atoms;
    for (int k = 0; k < 2; ++k) {
      atoms.push_back({{k, 0, 1, k, k}, 0.5 * 2.0 / 3.0});
      atoms.push_back({{k, 0, 0, 1 - k, k}, 0.5 / 3.0});
    }
    const Tensor t = tensor_from({2, 1, 2, 2, 2}, atoms);
    out.push_back({"F5", "c1 reveals the quality of d; worthless once d1 reveals k",
                   structure_from_tensor(t, {0}, {1, 2}, {3, 4}, kBinary),
                   structure_from_tensor(t, {0}, {1}, {3, 4}, kBinary),
                   structure_from_tensor(t, {0}, {1, 2}, {3}, kBinary),
                   structure_from_tensor(t, {0}, {1}, {3}, kBinary), t, std::nullopt});
  }
  {
    std::vector<std::array<int, 3>> atoms;
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) atoms.push_back({(c + d) % 2, c, d});
    InformationStructure u = InformationStructure::uniform_on(kBinary, 2, 2, atoms);
    InformationStructure v = InformationStructure::uniform_on(kBinary, 2, 2, {{0, 0, 0}, {1, 0, 0}});
    std::vector<double> g(8);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g[(k * 2 + i) * 2 + j] = k == (i + j) % 2 ? 1.0 : -1.0;
    ZeroSumGame half(2, 2, 2, g);
    out.push_back({"I4", "k = c xor d against no information: d = 0 but feasible sets differ", u, v,
                   std::nullopt, std::nullopt, std::nullopt, BimatrixGame(half, half)});
  }
  return out;
}

Counterexample counterexample(const std::string& name) {
  for (Counterexample& c : counterexample_pairs())
    if (c.name == name) return c;
  fail("InvalidParameters", "unknown counterexample " + name);
}

}  // namespace infodist
