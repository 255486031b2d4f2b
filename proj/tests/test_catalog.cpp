#include "doctest.h"

#include "infodist/catalog.hpp"
#include "infodist/distance.hpp"
#include "test_support.hpp"

using namespace infodist;
using namespace testing_support;

TEST_CASE("worked example: catalog entries") {
  const AppendixF f = appendix_f();
  for (const InformationStructure* u : {&f.u1, &f.u2, &f.u2prime}) {
    const auto m = state_marginal(*u);
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(0.5));
  }
  CHECK(value_distance(f.u1, f.u2) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(value_distance(f.u1, f.u2prime) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("blackwell structures") {
  const InformationStructure z = blackwell_structure({0, 0, 0.75, 0.75});
  CHECK(z.signals1() == 1);
  CHECK(z(0, 0, 0) == doctest::Approx(0.5));
  CHECK(z(1, 0, 0) == doctest::Approx(0.5));
  const InformationStructure one = blackwell_structure({1, 0, 0.75, 0.75});
  CHECK(one(1, 1, 0) == doctest::Approx(0.375));
  CHECK(one(1, 0, 0) == doctest::Approx(0.125));
  CHECK(kind_of([] { blackwell_structure({1, 0, 0.5, 0.75}); }) == "InvalidParameters");
  CHECK(kind_of([] { blackwell_d1_closed_form(1, 1, 0.75); }) == "InvalidParameters");
}

TEST_CASE("blackwell closed forms from the worked values") {
  for (double p : {0.6, 0.75, 0.9}) {
    const double q = 1 - p, s = 2 * p - 1;
    CHECK(blackwell_d1_closed_form(2, 1, p) == doctest::Approx(2 * p * q * s).epsilon(1e-12));
    CHECK(blackwell_d1_closed_form(4, 3, p) == doctest::Approx(6 * p * p * q * q * s).epsilon(1e-12));
    CHECK(blackwell_d1_closed_form(4, 1, p) ==
          doctest::Approx(2 * p * q * s * (1 + 3 * p - 3 * p * p)).epsilon(1e-12));
    CHECK(blackwell_d1_closed_form(1, 0, p) == doctest::Approx(s).epsilon(1e-12));
    for (int n = 1; n <= 4; ++n)
      for (int l = 0; l < n; ++l) {
        const double lp = single_agent_distance(blackwell_structure({n, 0, p, p}), blackwell_structure({l, 0, p, p}));
        CHECK(lp == doctest::Approx(blackwell_d1_closed_form(n, l, p)).epsilon(1e-6));
        const auto g = blackwell_gammas(n, l, p);
        CHECK(*std::max_element(g.begin(), g.end()) == doctest::Approx(blackwell_d1_closed_form(n, l, p)));
      }
  }
  CHECK(blackwell_d1_closed_form(2, 1, 0.75) == doctest::Approx(0.1875));
  CHECK(blackwell_d1_closed_form(4, 3, 0.75) == doctest::Approx(0.10546875));
}

TEST_CASE("two-sided experiments reduce to the one-sided distance") {
  const double p = 0.75;
  for (int m : {0, 1})
    for (auto [n, l] : {std::pair{2, 1}, std::pair{3, 0}}) {
      const double d = value_distance(blackwell_structure({n, m, p, p}), blackwell_structure({l, m, p, p}));
      CHECK(d == doctest::Approx(blackwell_d1_closed_form(n, l, p)).epsilon(1e-6));
    }
}

TEST_CASE("exa6 family") {
  const InformationStructure none = no_information(2);
  for (int n : {1, 2, 4}) {
    const InformationStructure u = exa6_structure(n);
    CHECK(value_distance(u, none) <= 2.0 / (n + 1) + 1e-6);
    CHECK(is_better(none, u).better);
  }
  // n = 0: player 2 knows the state. The guessing game (player 2 scores by
  // naming the state) separates by 1, and 1 is the diameter bound for a
  // uniform binary state.
  const InformationStructure u0 = exa6_structure(0);
  std::vector<double> g;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) g.push_back(j == k ? -1.0 : 1.0);
  const ZeroSumGame guess(2, 1, 2, g);
  CHECK(value(none, guess).value - value(u0, guess).value == doctest::Approx(1.0));
  CHECK(value_distance(u0, none) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("email game") {
  const InformationStructure lost = email_game(1.0, 0.5, 6);
  double d0 = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < lost.signals1(); ++c) d0 += lost(k, c, 0);
  CHECK(d0 == doctest::Approx(1.0));

  const InformationStructure ck = common_knowledge({0.5, 0.5});
  double prev = 3.0;
  for (double eps : {0.5, 0.2, 0.05}) {
    const double d = value_distance(email_game(eps, 0.5, 12), ck);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(kind_of([] { email_game(0.0, 0.5, 4); }) == "InvalidParameters");
  CHECK(kind_of([] { email_game(0.5, 1.0, 4); }) == "InvalidParameters");
}

TEST_CASE("knowledge level") {
  CHECK(knowledge_level(common_knowledge({0.3, 0.7})) == doctest::Approx(0.0));
  // Player 1 sees the state with accuracy 0.9, player 2 exactly: each
  // player-1 signal has posterior 0.9 on its MAP state.
  std::vector<double> p;
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) p.push_back(d == k ? 0.5 * (c == k ? 0.9 : 0.1) : 0.0);
  CHECK(knowledge_level(InformationStructure(labels(2), 2, 2, p)) == doctest::Approx(0.1));
}

TEST_CASE("approximate knowledge pairs") {
  const ApproxKnowledgePair z = approx_knowledge_pair(0.0);
  CHECK(value_distance(z.u, z.v) <= 1e-6);
  for (double eps : {0.01, 0.05, 0.1}) {
    const ApproxKnowledgePair a = approx_knowledge_pair(eps);
    CHECK(a.eps_prime == doctest::Approx(eps));
    CHECK(value_distance(a.u, a.v) <= 20 * a.eps_prime + 1e-6);
  }
  CHECK(kind_of([] { approx_knowledge_pair(0.5); }) == "InvalidParameters");
}

TEST_CASE("counterexample pairs") {
  const Counterexample f3 = counterexample("F3");
  CHECK(single_agent_distance(f3.u, f3.v) <= 1e-6);
  CHECK(value_distance(f3.u, f3.v) > 1e-3);

  const Counterexample i4 = counterexample("I4");
  CHECK(value_distance(i4.u, i4.v) <= 1e-6);
  REQUIRE(i4.game);
  CHECK(i4.game->g1.payoffs() == i4.game->g2.payoffs());

  const Counterexample f4 = counterexample("F4a");
  REQUIRE(f4.u_prime);
  REQUIRE(f4.v_prime);
  CHECK(value_distance(f4.u, f4.v) > value_distance(*f4.u_prime, *f4.v_prime) + 1e-3);

  CHECK(counterexample_pairs().size() == 5);
  CHECK(kind_of([] { counterexample("nope"); }) == "InvalidParameters");
}
