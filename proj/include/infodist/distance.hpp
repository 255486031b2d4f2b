#pragma once

#include <optional>
#include <vector>

#include "infodist/game_value.hpp"
#include "infodist/prob_core.hpp"

namespace infodist {

// Certifies gap = sup_g (val(v, g) - val(u, g)) = min ||q1.u - v.q2||, with
// q1 acting on u's player-1 signals and q2 on v's player-2 signals, both
// into the common range L = max of all four signal counts.
struct GapCertificate {
  double gap = 0.0;
  int common = 0;  // L
  Garbling q1;     // C_u -> L
  Garbling q2;     // D_v -> L
  std::vector<double> duals;  // (k, c, d) over K x L x L
};

GapCertificate one_sided_gap(const InformationStructure& u, const InformationStructure& v);

// Both structures zero-padded to L x L and garbled per the certificate;
// their l1 distance reproduces cert.gap.
double recheck_certificate(const InformationStructure& u, const InformationStructure& v,
                           const GapCertificate& cert);

double value_distance(const InformationStructure& u, const InformationStructure& v);

// g* with val(v, g*) - val(u, g*) = one_sided_gap(u, v).gap within 1e-5.
ZeroSumGame witness_game(const InformationStructure& u, const InformationStructure& v);

struct Comparison {
  bool better = false;  // u is at least as good as v for player 1
  double gap = 0.0;
  std::optional<GapCertificate> certificate;
};

// u is better than v iff sup_g (val(v, g) - val(u, g)) <= 1e-6.
Comparison is_better(const InformationStructure& u, const InformationStructure& v);

double single_agent_distance(const InformationStructure& u, const InformationStructure& v);

struct DiameterBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool heuristic = false;
  std::vector<double> p_prime;
  std::vector<double> q_prime;
};

DiameterBounds diameter_bounds(const std::vector<double>& p, const std::vector<double>& q);

double dw(const InformationStructure& u, const InformationStructure& v,
          const std::vector<ZeroSumGame>& games);

// Verification harnesses. The hypothesis is measured on the data; the
// inequality is checked regardless and reported alongside.
struct PropositionCheck {
  double hypothesis_measure = 0.0;
  bool hypothesis_holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool inequality_holds = false;
};

inline constexpr double kHypothesisTol = 1e-9;

// u, v conditionally independent with equal K x D marginals: d = d1.
PropositionCheck check_conditional_independence_prop(const InformationStructure& u,
                                                     const InformationStructure& v);
// mu over (k, c, c1, c2, d): checks d(u, v) <= d(u', v').
PropositionCheck check_substitutes_prop(const Tensor& mu);
// mu over (k, c, c1, d, d1): checks d(u', v') <= d(u, v).
PropositionCheck check_complements_prop(const Tensor& mu);
// mu over (k, c, c1, d, d1): checks d(u, v) <= eps, eps measured.
PropositionCheck check_joint_information_prop(const Tensor& mu);

}  // namespace infodist
