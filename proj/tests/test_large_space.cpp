#include "doctest.h"

#include <set>

#include "infodist/distance.hpp"
#include "infodist/large_space.hpp"
#include "test_support.hpp"

using namespace infodist;
using namespace testing_support;

namespace {

int first_outside(const MixingMatrix& S, int a) {
  for (int b = 0; b < S.size(); ++b)
    if (!S(a, b)) return b;
  return -1;
}

}  // namespace

TEST_CASE("sample_S rows and determinism") {
  const MixingMatrix S = sample_S(4, 0);
  for (int a = 0; a < 4; ++a) {
    const std::vector<int> row = S.row(a);
    CHECK(row.size() == 2);
    const std::set<int> distinct(row.begin(), row.end());
    CHECK(distinct.size() == 2);
  }
  const MixingMatrix T = sample_S(4, 0);
  for (int a = 0; a < 4; ++a) CHECK(S.row(a) == T.row(a));
  const MixingMatrix big1 = sample_S(200, 42), big2 = sample_S(200, 42), other = sample_S(200, 43);
  bool same = true, differs = false;
  for (int a = 0; a < 200; ++a) {
    same &= big1.row(a) == big2.row(a);
    differs |= big1.row(a) != other.row(a);
  }
  CHECK(same);
  CHECK(differs);
  CHECK(kind_of([] { sample_S(5, 0); }) == "InvalidParameters");
}

TEST_CASE("row intersections concentrate near N/4") {
  const int N = 1000;
  const MixingMatrix S = sample_S(N, 7);
  Rng rng(7);
  std::uniform_int_distribution<int> pick(0, N - 1);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    int common = 0;
    for (int w = 0; w < S.words(); ++w) common += __builtin_popcountll(S.row_bits(a)[w] & S.row_bits(b)[w]);
    worst = std::max(worst, std::abs(common - N / 4.0) / N);
  }
  MESSAGE("max |S_a n S_b| deviation / N = " << worst);
  CHECK(worst < 0.06);
}

TEST_CASE("niceness") {
  const MixingMatrix S = sample_S(6, 3);
  for (int s = 1; s <= 6; ++s) CHECK(is_nice({s}, S) == Niceness::Nice);
  const int a = 0, in = S.row(a)[0], out = first_outside(S, a);
  CHECK(is_nice({a + 1, in + 1}, S) == Niceness::Nice);
  CHECK(is_nice({a + 1, out + 1}, S) == Niceness::NotNiceP2);
  const int out2 = first_outside(S, in);
  CHECK(is_nice({a + 1, in + 1, out2 + 1}, S) == Niceness::NotNiceP1);
  CHECK(kind_of([&] { is_nice({0}, S); }) == "InvalidSymbol");
  CHECK(kind_of([&] { is_nice({7}, S); }) == "InvalidSymbol");
  CHECK(to_string(Niceness::NotNiceP2) == "not_nice_p2");
}

TEST_CASE("nice sequence counts") {
  const MixingMatrix S = sample_S(6, 1);
  const SequenceSupport one = nice_sequences(S, 1);
  CHECK(one.atoms.size() == 6 * 6 / 2);
  double mass = 0.0;
  for (std::size_t i = 0; i < one.atoms.size(); ++i) {
    std::vector<int> seq;
    for (int x : one.atoms[i]) seq.push_back(x + 1);
    CHECK(is_nice(seq, S) == Niceness::Nice);
    mass += one.nu[i];
  }
  CHECK(mass == doctest::Approx(1.0));
  CHECK(nice_sequences(S, 2).atoms.size() == 6 * 3 * 3 * 3);
}

TEST_CASE("g0 values and misreport loss") {
  CHECK(g0(2, 1, 2) == doctest::Approx(1.0 / 9.0));
  // Truthful g0 decision problem has value zero: E[g0(k, c1)] over k given c1.
  for (int N : {4, 6, 10}) {
    double truthful = 0.0;
    for (int c = 1; c <= N; ++c) {
      const double up = c / (N + 1.0);
      truthful += (up * g0(N, 1, c) + (1 - up) * g0(N, 0, c)) / N;
      for (int r = 1; r <= N; ++r) {
        if (r == c) continue;
        const double loss = (up * g0(N, 1, c) + (1 - up) * g0(N, 0, c)) - (up * g0(N, 1, r) + (1 - up) * g0(N, 0, r));
        CHECK(loss >= 1.0 / ((N + 1.0) * (N + 1.0)) - 1e-12);
      }
    }
    CHECK(truthful == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("u^l structures") {
  const MarkovWorld w(sample_S(4, 0), MarkovWorld::default_epsilon(4));
  const InformationStructure u1 = build_structure_ul(w, 1), u2 = build_structure_ul(w, 2);
  const auto m = state_marginal(u1);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(0.5));
  // Marginal of u^2 over (K, c1, d1) equals u^1.
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d) {
        double s = 0.0;
        for (int c2 = 0; c2 < 4; ++c2)
          for (int d2 = 0; d2 < 4; ++d2) s += u2(k, c * 4 + c2, d * 4 + d2);
        CHECK(s == doctest::Approx(u1(k, c, d)).epsilon(1e-12));
      }
  // Support atoms are nice.
  for (int c = 0; c < 16; ++c)
    for (int d = 0; d < 16; ++d)
      if (u2(0, c, d) + u2(1, c, d) > 0)
        CHECK(is_nice({c / 4 + 1, d / 4 + 1, c % 4 + 1, d % 4 + 1}, w.S) == Niceness::Nice);
  CHECK(kind_of([&] { MarkovWorld(sample_S(4, 0), 0.01); }) == "InvalidParameters");
  CHECK(kind_of([&] { build_structure_ul(w, 3, 1e3); }) == "BudgetExceeded");
}

TEST_CASE("truthful guarantees agree with dense computations at N = 4") {
  const MarkovWorld w(sample_S(4, 0), MarkovWorld::default_epsilon(4));
  for (int l = 1; l <= 2; ++l) {
    const InformationStructure u = build_structure_ul(w, l);
    for (int p = 1; p <= l + 1; ++p) {
      const ZeroSumGame g = build_game_gp(w, p);
      CHECK(g.bound() == doctest::Approx(8.0 / 9.0));
      const TruthfulGuarantee tg = truthful_guarantee(w, l, p);
      const double val = value(u, g).value;
      if (p <= l) {
        REQUIRE(tg.lower);
        CHECK(*tg.lower == doctest::Approx(oracle_guarantee1(u, g, truthful_strategy1(4, l, p))).epsilon(1e-9));
        CHECK(*tg.lower <= val + 1e-9);
      }
      REQUIRE(tg.upper);
      CHECK(*tg.upper == doctest::Approx(oracle_guarantee2(u, g, truthful_strategy2(4, l, p))).epsilon(1e-9));
      CHECK(*tg.upper >= val - 1e-9);
    }
  }
  // Definitional lower bound on the distance between u^2 and u^1.
  const InformationStructure u1 = build_structure_ul(w, 1), u2 = build_structure_ul(w, 2);
  const ZeroSumGame g2 = build_game_gp(w, 2);
  CHECK(value_distance(u2, u1) >= value(u2, g2).value - value(u1, g2).value - 1e-7);
}

TEST_CASE("event E report") {
  const EventEReport small = event_e_report(sample_S(4, 0), 1.0 / 25, 1000, 0);
  CHECK_FALSE(small.sampled);
  CHECK(small.tuples == 4 * 3 * 4 * 3);
  CHECK(small.implication_violations == 0);
  // Y^c = N exactly for every tuple.
  CHECK(small.max_deviation[1] == doctest::Approx(0.0));

  const EventEReport mid = event_e_report(sample_S(400, 5), 1.0 / 25, 20000, 5);
  CHECK(mid.sampled);
  CHECK(mid.tuples == 20000);
  CHECK(mid.ui_checked == mid.all_pass);
  CHECK(mid.implication_violations == 0);
  const EventEReport again = event_e_report(sample_S(400, 5), 1.0 / 25, 20000, 5);
  CHECK(again.all_pass == mid.all_pass);
}

TEST_CASE("UI report") {
  const MarkovWorld w(sample_S(4, 0), MarkovWorld::default_epsilon(4));
  const UiReport one = check_ui(w, 1, 100000, 0);
  // UI2 quantifies over an empty range at l = 1, so it contributes nothing.
  for (const UiCondition& c : one.conditions) CHECK(c.name.rfind("UI2", 0) != 0);
  const UiReport two = check_ui(w, 2, 100000, 0);
  CHECK(two.conditions.size() > one.conditions.size());
  for (const UiCondition& c : two.conditions) CHECK(c.checked == c.vacuous + c.passed + c.failed);
}
