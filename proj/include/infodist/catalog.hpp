#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infodist/game_value.hpp"
#include "infodist/prob_core.hpp"

namespace infodist {

struct AppendixF {
  InformationStructure u1;
  InformationStructure u2;
  InformationStructure u2prime;
};

// States Blue, Red; u1 on {(B,0,0),(B,1,1),(R,1,0),(R,2,1)}, u2 on
// {(B,0,0),(R,1,0)}, u2' on {(B,0,0),(R,0,1)}, each uniform.
AppendixF appendix_f();

// The game that separates u1 from u2 by 1/2.
ZeroSumGame appendix_f_game();

struct BlackwellSpec {
  int n = 0;  // player-1 experiments, accuracy p
  int m = 0;  // player-2 experiments, accuracy r
  double p = 0.75;
  double r = 0.75;
};

// Uniform binary state; signals count observed 1s, so with binomial weights.
InformationStructure blackwell_structure(const BlackwellSpec& spec);

// gamma^d for d = 0..l; d1(u_n, u_l) is their max.
std::vector<double> blackwell_gammas(int n, int l, double p);
double blackwell_d1_closed_form(int n, int l, double p);

InformationStructure no_information(int states = 2);

// Uniform on Blue (i, i) and Red (i, i + 1), i = 0..n.
InformationStructure exa6_structure(int n);

// k = 1 with probability p; T successful hops before the first loss,
// P(T = t) = (1 - eps)^t eps, tail from M on lumped at T = M. Player 1's
// signal is 0 when k = 0 and 1 + floor(T / 2) otherwise; player 2's is
// ceil(T / 2).
InformationStructure email_game(double eps, double p, int M);

// v(k, k, k) = prior[k], two-sided knowledge of the state.
InformationStructure common_knowledge(const std::vector<double>& prior);

// Smallest eps such that, with kappa the MAP state, each player puts
// posterior >= 1 - eps on kappa with probability >= 1 - eps.
double knowledge_level(const InformationStructure& u);

struct ApproxKnowledgePair {
  InformationStructure u;
  InformationStructure v;
  double eps_prime = 0.0;  // knowledge_level(u)
};

ApproxKnowledgePair approx_knowledge_pair(double eps);

struct Counterexample {
  std::string name;
  std::string description;
  InformationStructure u;
  InformationStructure v;
  std::optional<InformationStructure> u_prime;
  std::optional<InformationStructure> v_prime;
  std::optional<Tensor> joint;  // axes used by the matching harness
  std::optional<BimatrixGame> game;
};

// Names: "F3", "F4a", "F4b", "F5", "I4".
std::vector<Counterexample> counterexample_pairs();
Counterexample counterexample(const std::string& name);

}  // namespace infodist
