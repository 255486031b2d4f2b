#include "infodist/large_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "infodist/error.hpp"

namespace infodist {

namespace {

// Unbiased draw in [0, n) by rejection; the standard distributions are not
// reproducible across library implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem + 1;
  std::uint64_t x = rng();
  if (rem != 0)
    while (x >= limit) x = rng();
  return x % n;
}

Niceness classify(const std::vector<int>& seq, const MixingMatrix& S) {
  for (std::size_t t = 1; t < seq.size(); ++t)
    if (!S(seq[t - 1], seq[t])) return (t + 1) % 2 == 1 ? Niceness::NotNiceP1 : Niceness::NotNiceP2;
  return Niceness::Nice;
}

double ipow(int base, int e) { return std::pow(static_cast<double>(base), e); }

long long lpow(int base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

int and_count(const std::uint64_t* a, const std::uint64_t* b, int W) {
  int s = 0;
  for (int w = 0; w < W; ++w) s += std::popcount(a[w] & b[w]);
  return s;
}

int and_count(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* c, int W) {
  int s = 0;
  for (int w = 0; w < W; ++w) s += std::popcount(a[w] & b[w] & c[w]);
  return s;
}

int and_count(const std::uint64_t* a, const std::uint64_t* b, const std::uint64_t* c,
              const std::uint64_t* d, int W) {
  int s = 0;
  for (int w = 0; w < W; ++w) s += std::popcount(a[w] & b[w] & c[w] & d[w]);
  return s;
}

bool half_within(long num, long den, double alpha) {
  return std::abs(2.0 * num - den) <= 2.0 * alpha * den + 1e-9;
}

}  // namespace

MixingMatrix::MixingMatrix(int N, const std::vector<std::vector<int>>& rows)
    : N_(N), W_((N + 63) / 64) {
  if (N < 2 || N % 2 != 0) fail("InvalidParameters", "N must be even and at least 2");
  if (static_cast<int>(rows.size()) != N) fail("InvalidParameters", "need one row per symbol");
  rows_.assign(static_cast<std::size_t>(N) * W_, 0);
  cols_.assign(static_cast<std::size_t>(N) * W_, 0);
  for (int a = 0; a < N; ++a) {
    for (int b : rows[a]) {
      if (b < 0 || b >= N) fail("InvalidParameters", "column index out of range");
      std::uint64_t& word = rows_[static_cast<std::size_t>(a) * W_ + (b >> 6)];
      if ((word >> (b & 63)) & 1u) fail("InvalidParameters", "repeated column in a row");
      word |= std::uint64_t{1} << (b & 63);
      cols_[static_cast<std::size_t>(b) * W_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
    }
    if (static_cast<int>(rows[a].size()) != N / 2) fail("InvalidParameters", "row size must be N/2");
  }
}

std::vector<int> MixingMatrix::row(int a) const {
  std::vector<int> out;
  for (int b = 0; b < N_; ++b)
    if ((*this)(a, b)) out.push_back(b);
  return out;
}

MixingMatrix sample_S(int N, std::uint64_t seed) {
  if (N < 4 || N % 2 != 0) fail("InvalidParameters", "N must be even and at least 4");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> rows(N);
  std::vector<int> perm(N);
  for (int a = 0; a < N; ++a) {
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int i = 0; i < N / 2; ++i) std::swap(perm[i], perm[i + bounded(rng, N - i)]);
    rows[a].assign(perm.begin(), perm.begin() + N / 2);
  }
  return MixingMatrix(N, rows);
}

MarkovWorld::MarkovWorld(MixingMatrix matrix, double eps, double a)
    : S(std::move(matrix)), epsilon(eps), alpha(a) {
  const double n1 = S.size() + 1.0;
  if (!(epsilon > 0.0 && epsilon < 1.0 / (10.0 * n1 * n1)))
    fail("InvalidParameters", "epsilon must lie in (0, 1/(10 (N+1)^2))");
  if (!(alpha > 0.0 && alpha < 0.5)) fail("InvalidParameters", "alpha must lie in (0, 1/2)");
}

std::string to_string(Niceness n) {
  switch (n) {
    case Niceness::Nice: return "nice";
    case Niceness::NotNiceP1: return "not_nice_p1";
    case Niceness::NotNiceP2: return "not_nice_p2";
  }
  return "?";
}

Niceness is_nice(const std::vector<int>& seq, const MixingMatrix& S) {
  if (seq.empty()) fail("InvalidSymbol", "empty sequence");
  std::vector<int> zero(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (seq[t] < 1 || seq[t] > S.size()) fail("InvalidSymbol", "symbol " + std::to_string(seq[t]) + " outside 1..N");
    zero[t] = seq[t] - 1;
  }
  return classify(zero, S);
}

SequenceSupport nice_sequences(const MixingMatrix& S, int l, double budget) {
  if (l < 1) fail("InvalidParameters", "l must be at least 1");
  const int N = S.size();
  if (N * ipow(N / 2, 2 * l - 1) > budget) fail("BudgetExceeded", "too many nice sequences");
  SequenceSupport out;
  out.N = N;
  out.l = l;
  std::vector<int> seq(2 * l);
  const double step = 2.0 / N;
  std::function<void(int, double)> walk = [&](int t, double mass) {
    if (t == 2 * l) {
      out.atoms.push_back(seq);
      out.nu.push_back(mass);
      return;
    }
    for (int b : S.row(seq[t - 1])) {
      seq[t] = b;
      walk(t + 1, mass * step);
    }
  };
  for (int a = 0; a < N; ++a) {
    seq[0] = a;
    walk(1, 1.0 / N);
  }
  return out;
}

InformationStructure build_structure_ul(const MarkovWorld& world, int l, double budget) {
  const int N = world.S.size();
  if (2.0 * ipow(N, 2 * l) > budget) fail("BudgetExceeded", "dense u^l exceeds the cell budget");
  const SequenceSupport sup = nice_sequences(world.S, l);
  const long long C = lpow(N, l);
  std::vector<double> probs(static_cast<std::size_t>(2 * C * C), 0.0);
  for (std::size_t i = 0; i < sup.atoms.size(); ++i) {
    const auto& s = sup.atoms[i];
    long long c = 0, d = 0;
    for (int t = 0; t < l; ++t) {
      c = c * N + s[2 * t];
      d = d * N + s[2 * t + 1];
    }
    const double up = (s[0] + 1.0) / (N + 1.0);
    probs[static_cast<std::size_t>(c * C + d)] += sup.nu[i] * (1.0 - up);
    probs[static_cast<std::size_t>((C + c) * C + d)] += sup.nu[i] * up;
  }
  return InformationStructure({"0", "1"}, static_cast<int>(C), static_cast<int>(C), std::move(probs));
}

double g0(int N, int k, int s) {
  const double x = k - s / (N + 1.0);
  return -x * x + (N + 2.0) / (6.0 * (N + 1.0));
}

ZeroSumGame build_game_gp(const MarkovWorld& world, int p, double budget) {
  if (p < 1) fail("InvalidParameters", "p must be at least 1");
  const int N = world.S.size();
  if (2.0 * ipow(N, 2 * p - 1) > budget) fail("BudgetExceeded", "g^p exceeds the cell budget");
  const long long I = lpow(N, p), J = lpow(N, p - 1);
  const double eps = world.epsilon;
  std::vector<double> pay(static_cast<std::size_t>(2 * I * J));
  std::vector<int> seq(2 * p - 1);
  for (long long i = 0; i < I; ++i) {
    long long x = i;
    for (int t = p - 1; t >= 0; --t, x /= N) seq[2 * t] = static_cast<int>(x % N);
    for (long long j = 0; j < J; ++j) {
      long long y = j;
      for (int t = p - 2; t >= 0; --t, y /= N) seq[2 * t + 1] = static_cast<int>(y % N);
      double h = eps;
      const Niceness cls = classify(seq, world.S);
      if (cls == Niceness::NotNiceP2) h = 5.0 * eps;
      if (cls == Niceness::NotNiceP1) h = -5.0 * eps;
      for (int k = 0; k < 2; ++k)
        pay[static_cast<std::size_t>((k * I + i) * J + j)] = g0(N, k, seq[0] + 1) + h;
    }
  }
  return ZeroSumGame(2, static_cast<int>(I), static_cast<int>(J), std::move(pay), 8.0 / 9.0);
}

Garbling truthful_strategy1(int N, int l, int p) {
  if (p < 1 || p > l) fail("InvalidParameters", "truthful player 1 needs 1 <= p <= l");
  const long long C = lpow(N, l), drop = lpow(N, l - p);
  std::vector<int> map(C);
  for (long long c = 0; c < C; ++c) map[c] = static_cast<int>(c / drop);
  return Garbling::deterministic(static_cast<int>(lpow(N, p)), map);
}

Garbling truthful_strategy2(int N, int l, int p) {
  if (p < 1 || p > l + 1) fail("InvalidParameters", "truthful player 2 needs 1 <= p <= l + 1");
  const long long D = lpow(N, l), drop = lpow(N, l - p + 1);
  std::vector<int> map(D);
  for (long long d = 0; d < D; ++d) map[d] = static_cast<int>(d / drop);
  return Garbling::deterministic(static_cast<int>(lpow(N, p - 1)), map);
}

TruthfulGuarantee truthful_guarantee(const MarkovWorld& world, int l, int p, double budget) {
  if (l < 1 || p < 1 || p > l + 1) fail("InvalidParameters", "need l >= 1 and 1 <= p <= l + 1");
  const MixingMatrix& S = world.S;
  const int N = S.size();
  const double eps = world.epsilon;
  const SequenceSupport sup = nice_sequences(S, l);
  const std::size_t n_atoms = sup.atoms.size();

  auto expected_g0 = [&](int c1_true, int reported) {
    const double up = (c1_true + 1.0) / (N + 1.0);
    return up * g0(N, 1, reported + 1) + (1.0 - up) * g0(N, 0, reported + 1);
  };

  TruthfulGuarantee out;
  if (p <= l) {
    if (n_atoms * ipow(N, p - 1) > budget) fail("BudgetExceeded", "player-2 report search too large");
    std::map<std::vector<int>, std::vector<int>> by_d;
    for (std::size_t i = 0; i < n_atoms; ++i) {
      std::vector<int> d;
      for (int t = 0; t < l; ++t) d.push_back(sup.atoms[i][2 * t + 1]);
      by_d[d].push_back(static_cast<int>(i));
    }
    double total = 0.0;
    for (const auto& [d, members] : by_d) {
      double base = 0.0;
      for (int i : members) base += sup.nu[i] * expected_g0(sup.atoms[i][0], sup.atoms[i][0]);
      double best = std::numeric_limits<double>::infinity();
      // choose d'_t, t = 1..p-1, minimizing; h-range bound prunes
      std::function<void(int, const std::vector<int>&, double)> dfs = [&](int t, const std::vector<int>& active,
                                                                         double resolved) {
        double mass = 0.0;
        for (int i : active) mass += sup.nu[i];
        if (t == p) {
          best = std::min(best, resolved + eps * mass);
          return;
        }
        if (resolved - 5.0 * eps * mass >= best) return;
        for (int x = 0; x < N; ++x) {
          std::vector<int> next;
          double r = resolved;
          for (int i : active) {
            const auto& s = sup.atoms[i];
            if (!S(s[2 * (t - 1)], x)) r += 5.0 * eps * sup.nu[i];
            else if (!S(x, s[2 * t])) r -= 5.0 * eps * sup.nu[i];
            else next.push_back(i);
          }
          dfs(t + 1, next, r);
        }
      };
      dfs(1, members, 0.0);
      total += base + best;
    }
    out.lower = total;
  }

  if (n_atoms * ipow(N, p) > budget) fail("BudgetExceeded", "player-1 report search too large");
  std::map<std::vector<int>, std::vector<int>> by_c;
  for (std::size_t i = 0; i < n_atoms; ++i) {
    std::vector<int> c;
    for (int t = 0; t < l; ++t) c.push_back(sup.atoms[i][2 * t]);
    by_c[c].push_back(static_cast<int>(i));
  }
  double total = 0.0;
  for (const auto& [c, members] : by_c) {
    double best = -std::numeric_limits<double>::infinity();
    // choose c'_t, t = 1..p, maximizing
    std::function<void(int, const std::vector<int>&, double)> dfs = [&](int t, const std::vector<int>& active,
                                                                       double resolved) {
      double mass = 0.0;
      for (int i : active) mass += sup.nu[i];
      if (t > p) {
        best = std::max(best, resolved + eps * mass);
        return;
      }
      if (t > 1 && resolved + 5.0 * eps * mass <= best) return;
      for (int x = 0; x < N; ++x) {
        std::vector<int> next;
        double r = resolved;
        for (int i : active) {
          const auto& s = sup.atoms[i];
          if (t == 1) r += sup.nu[i] * expected_g0(s[0], x);
          if (t >= 2 && !S(s[2 * t - 3], x)) {
            r -= 5.0 * eps * sup.nu[i];
            continue;
          }
          if (t <= p - 1 && !S(x, s[2 * t - 1])) {
            r += 5.0 * eps * sup.nu[i];
            continue;
          }
          next.push_back(i);
        }
        dfs(t + 1, next, r);
      }
    };
    dfs(1, members, 0.0);
    total += best;
  }
  out.upper = total;
  return out;
}

EventEReport event_e_report(const MixingMatrix& S, double alpha, long budget, std::uint64_t seed) {
  if (budget < 1) fail("InvalidParameters", "budget must be positive");
  const int N = S.size(), W = S.words();
  EventEReport rep;
  rep.N = N;
  rep.alpha = alpha;
  rep.sampled = ipow(N, 4) > static_cast<double>(budget);

  auto ratio_ok = [&](double top, double bottom) {
    return bottom > 0.0 && std::abs(top - bottom) <= 2.0 * alpha * bottom + 1e-9;
  };

  auto visit = [&](int a, int b, int c, int d) {
    const std::uint64_t *ca = S.col_bits(a), *cb = S.col_bits(b), *rc = S.row_bits(c), *rd = S.row_bits(d);
    int sa = 0, sc = 0;
    for (int w = 0; w < W; ++w) {
      sa += std::popcount(ca[w]);
      sc += std::popcount(rc[w]);
    }
    const double Y[8] = {2.0 * sa,
                         2.0 * sc,
                         4.0 * and_count(ca, cb, W),
                         4.0 * and_count(rc, rd, W),
                         4.0 * and_count(ca, rc, W),
                         8.0 * and_count(ca, cb, rc, W),
                         8.0 * and_count(ca, rc, rd, W),
                         16.0 * and_count(ca, cb, rc, rd, W)};
    for (int f = 0; f < 8; ++f) rep.max_deviation[f] = std::max(rep.max_deviation[f], std::abs(Y[f] / N - 1.0));
    const bool ok[7] = {ratio_ok(Y[2], Y[0]), ratio_ok(Y[5], Y[4]), ratio_ok(Y[6], Y[4]), ratio_ok(Y[7], Y[6]),
                        ratio_ok(Y[3], Y[1]), ratio_ok(Y[4], Y[1]), ratio_ok(Y[6], Y[3])};
    bool all = true;
    for (int r = 0; r < 7; ++r) {
      rep.ratio_pass[r] += ok[r];
      all = all && ok[r];
    }
    ++rep.tuples;
    if (!all) return;
    ++rep.all_pass;

    // The same seven conditions as conditional-probability ratios, counted
    // entry by entry from X rather than from the Y statistics.
    long n[7] = {0}, m[7] = {0};
    for (int i = 0; i < N; ++i) {
      const int xa = S(i, a), xb = S(i, b), xc = S(c, i), xd = S(d, i);
      m[0] += xa;                n[0] += xa * xb;
      m[1] += xc * xa;           n[1] += xc * xa * xb;
      m[2] += xc * xa;           n[2] += xc * xa * xd;
      m[3] += xc * xd * xa;      n[3] += xc * xd * xa * xb;
      m[4] += xc;                n[4] += xc * xd;
      m[5] += xc;                n[5] += xc * xa;
      m[6] += xc * xd;           n[6] += xc * xd * xa;
    }
    ++rep.ui_checked;
    for (int r = 0; r < 7; ++r)
      if (m[r] == 0 || !half_within(n[r], m[r], alpha)) {
        ++rep.implication_violations;
        break;
      }
  };

  if (!rep.sampled) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          for (int d = 0; d < N; ++d)
            if (a != b && c != d) visit(a, b, c, d);
  } else {
    std::mt19937_64 rng(seed);
    for (long s = 0; s < budget; ++s) {
      const int a = static_cast<int>(bounded(rng, N));
      int b = static_cast<int>(bounded(rng, N));
      while (b == a) b = static_cast<int>(bounded(rng, N));
      const int c = static_cast<int>(bounded(rng, N));
      int d = static_cast<int>(bounded(rng, N));
      while (d == c) d = static_cast<int>(bounded(rng, N));
      visit(a, b, c, d);
    }
  }
  return rep;
}

bool UiReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const UiCondition& c) { return c.failed == 0; });
}

UiReport check_ui(const MarkovWorld& world, int l, long budget, std::uint64_t seed) {
  if (l < 1) fail("InvalidParameters", "l must be at least 1");
  if (budget < 1) fail("InvalidParameters", "budget must be positive");
  const MixingMatrix& S = world.S;
  const int N = S.size(), W = S.words();
  UiReport rep;
  rep.l = l;
  std::mt19937_64 rng(seed);

  using Counts = std::pair<long, long>;  // (numerator, denominator)
  struct Kind {
    std::string name;
    int arity;
    std::function<bool(const std::array<int, 4>&)> admissible;
    std::function<Counts(const std::array<int, 4>&)> counts;
  };
  std::vector<Kind> kinds;
  auto row = [&](int a) { return S.row_bits(a); };
  auto col = [&](int a) { return S.col_bits(a); };

  // Player 1 misreports against a truthful opponent.
  kinds.push_back({"UI1 r=1", 3, [l](const std::array<int, 4>& t) { return l > 1 || t[0] == t[1]; },
                   [&](const std::array<int, 4>& t) {
                     return Counts{and_count(row(t[0]), row(t[1]), col(t[2]), W), and_count(row(t[0]), row(t[1]), W)};
                   }});
  if (l >= 2) {
    kinds.push_back({"UI1 r=2m-2", 4,
                     [l](const std::array<int, 4>& t) { return t[2] != t[3] && (l > 2 || t[0] == t[1]); },
                     [&](const std::array<int, 4>& t) {
                       return Counts{and_count(row(t[0]), col(t[2]), row(t[1]), col(t[3]), W),
                                     and_count(row(t[0]), col(t[2]), row(t[1]), W)};
                     }});
    kinds.push_back({"UI1 r=2l-1", 2, [](const std::array<int, 4>& t) { return t[0] != t[1]; },
                     [&](const std::array<int, 4>& t) {
                       int den = 0;
                       for (int w = 0; w < W; ++w) den += std::popcount(row(t[0])[w]);
                       return Counts{and_count(row(t[0]), row(t[1]), W), den};
                     }});
    kinds.push_back({"UI2 r=1", 2, [](const std::array<int, 4>& t) { return t[0] != t[1]; },
                     [&](const std::array<int, 4>& t) {
                       int den = 0;
                       for (int w = 0; w < W; ++w) den += std::popcount(col(t[0])[w]);
                       return Counts{and_count(col(t[0]), col(t[1]), W), den};
                     }});
    kinds.push_back({"UI2 r=2m", 3, [](const std::array<int, 4>& t) { return t[0] != t[1]; },
                     [&](const std::array<int, 4>& t) {
                       return Counts{and_count(row(t[0]), col(t[2]), row(t[1]), W), and_count(row(t[0]), col(t[2]), W)};
                     }});
  }
  if (l >= 3) {
    kinds.push_back({"UI1 r=2m-1", 3, [](const std::array<int, 4>& t) { return t[0] != t[1]; },
                     [&](const std::array<int, 4>& t) {
                       return Counts{and_count(row(t[0]), col(t[2]), row(t[1]), W), and_count(row(t[0]), col(t[2]), W)};
                     }});
    kinds.push_back({"UI2 r=2m-1", 4, [](const std::array<int, 4>& t) { return t[2] != t[3]; },
                     [&](const std::array<int, 4>& t) {
                       return Counts{and_count(row(t[0]), col(t[2]), row(t[1]), col(t[3]), W),
                                     and_count(row(t[0]), col(t[2]), row(t[1]), W)};
                     }});
  }

  for (const Kind& kind : kinds) {
    UiCondition cond;
    cond.name = kind.name;
    auto tally = [&](const std::array<int, 4>& t) {
      const auto [num, den] = kind.counts(t);
      ++cond.checked;
      if (den == 0) {
        ++cond.vacuous;
        return;
      }
      cond.worst = std::max(cond.worst, std::abs(static_cast<double>(num) / den - 0.5));
      if (half_within(num, den, world.alpha)) ++cond.passed;
      else ++cond.failed;
    };
    const double total = ipow(N, kind.arity);
    cond.sampled = total > static_cast<double>(budget);
    std::array<int, 4> t{0, 0, 0, 0};
    if (!cond.sampled) {
      for (long long code = 0; code < static_cast<long long>(total); ++code) {
        long long x = code;
        for (int i = kind.arity - 1; i >= 0; --i, x /= N) t[i] = static_cast<int>(x % N);
        if (kind.admissible(t)) tally(t);
      }
    } else {
      for (long s = 0; s < budget; ++s) {
        do {
          for (int i = 0; i < kind.arity; ++i) t[i] = static_cast<int>(bounded(rng, N));
        } while (!kind.admissible(t));
        tally(t);
      }
    }
    rep.conditions.push_back(cond);
  }
  return rep;
}

}  // namespace infodist
