#include "infodist/distance.hpp"

#include <algorithm>
#include <cmath>

#include "infodist/error.hpp"
#include "infodist/lp.hpp"

namespace infodist {

namespace {

Garbling clean_garbling(int source, int target, const std::vector<double>& x, int offset) {
  std::vector<double> rows(static_cast<std::size_t>(source) * target);
  for (int s = 0; s < source; ++s) {
    double sum = 0.0;
    for (int t = 0; t < target; ++t) {
      const double val = std::max(0.0, x[offset + s * target + t]);
      rows[static_cast<std::size_t>(s) * target + t] = val;
      sum += val;
    }
    if (sum <= 0.0) fail("NumericalFailure", "garbling row lost its mass");
    for (int t = 0; t < target; ++t) rows[static_cast<std::size_t>(s) * target + t] /= sum;
  }
  return Garbling(source, target, std::move(rows));
}

void require_same_states(const InformationStructure& u, const InformationStructure& v) {
  if (u.states() != v.states()) fail("ShapeMismatch", "structures have different state counts");
}

void check_simplex(const std::vector<double>& p, const char* name) {
  double s = 0.0;
  for (double x : p) {
    if (!(x >= -kZeroTol)) fail("NegativeMass", std::string(name) + " has a negative entry");
    s += x;
  }
  if (std::abs(s - 1.0) > kNormTol) fail("NotNormalized", std::string(name) + " does not sum to 1");
}

}  // namespace

GapCertificate one_sided_gap(const InformationStructure& u, const InformationStructure& v) {
  require_same_states(u, v);
  const int K = u.states();
  const int Cu = u.signals1(), Du = u.signals2(), Cv = v.signals1(), Dv = v.signals2();
  const int L = std::max({Cu, Du, Cv, Dv});

  lp::Problem p;
  p.sense = lp::ObjSense::Minimize;
  for (int i = 0; i < Cu * L + Dv * L; ++i) p.add_variable(0.0);
  const int q1_0 = 0, q2_0 = Cu * L;

  // Cells outside both supports carry no constraint; their dual is 0.
  std::vector<int> row_of(static_cast<std::size_t>(K) * L * L, -1);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < L; ++c)
      for (int d = 0; d < L; ++d) {
        if (d >= Du && c >= Cv) continue;
        const int r = p.add_row(lp::RowSense::Eq, 0.0);
        row_of[(static_cast<std::size_t>(k) * L + c) * L + d] = r;
        if (d < Du)
          for (int c0 = 0; c0 < Cu; ++c0) {
            const double w = u(k, c0, d);
            if (w != 0.0) p.add_entry(r, q1_0 + c0 * L + c, w);
          }
        if (c < Cv)
          for (int d0 = 0; d0 < Dv; ++d0) {
            const double w = v(k, c, d0);
            if (w != 0.0) p.add_entry(r, q2_0 + d0 * L + d, -w);
          }
        const int pos = p.add_variable(1.0);
        const int neg = p.add_variable(1.0);
        p.add_entry(r, pos, -1.0);
        p.add_entry(r, neg, 1.0);
      }
  for (int c0 = 0; c0 < Cu; ++c0) {
    const int r = p.add_row(lp::RowSense::Eq, 1.0);
    for (int c = 0; c < L; ++c) p.add_entry(r, q1_0 + c0 * L + c, 1.0);
  }
  for (int d0 = 0; d0 < Dv; ++d0) {
    const int r = p.add_row(lp::RowSense::Eq, 1.0);
    for (int d = 0; d < L; ++d) p.add_entry(r, q2_0 + d0 * L + d, 1.0);
  }

  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal)
    fail("NumericalFailure", "gap LP reported " + lp::to_string(s.status));

  GapCertificate cert;
  cert.gap = std::max(0.0, s.objective);
  cert.common = L;
  cert.q1 = clean_garbling(Cu, L, s.primal, q1_0);
  cert.q2 = clean_garbling(Dv, L, s.primal, q2_0);
  cert.duals.assign(row_of.size(), 0.0);
  for (std::size_t i = 0; i < row_of.size(); ++i)
    if (row_of[i] >= 0) cert.duals[i] = s.row_duals[row_of[i]];
  return cert;
}

double recheck_certificate(const InformationStructure& u, const InformationStructure& v,
                           const GapCertificate& cert) {
  const int L = cert.common;
  const InformationStructure a = embed_signals(garble(u, Side::Player1, cert.q1), L, L);
  const InformationStructure b = embed_signals(garble(v, Side::Player2, cert.q2), L, L);
  return l1_distance(a, b);
}

double value_distance(const InformationStructure& u, const InformationStructure& v) {
  return std::max(one_sided_gap(u, v).gap, one_sided_gap(v, u).gap);
}

ZeroSumGame witness_game(const InformationStructure& u, const InformationStructure& v) {
  const GapCertificate cert = one_sided_gap(u, v);
  std::vector<double> g = cert.duals;
  for (double& x : g) x = std::clamp(x, -1.0, 1.0);
  ZeroSumGame game(u.states(), cert.common, cert.common, std::move(g));
  const double achieved = value(v, game).value - value(u, game).value;
  if (std::abs(achieved - cert.gap) > 1e-5)
    fail("NumericalFailure", "witness recheck failed: gap " + std::to_string(cert.gap) +
                                 ", game achieves " + std::to_string(achieved));
  return game;
}

Comparison is_better(const InformationStructure& u, const InformationStructure& v) {
  GapCertificate cert = one_sided_gap(u, v);
  Comparison out;
  out.gap = cert.gap;
  out.better = cert.gap <= kDistTol;
  if (out.better) out.certificate = std::move(cert);
  return out;
}

double single_agent_distance(const InformationStructure& u, const InformationStructure& v) {
  return value_distance(player1_view(u), player1_view(v));
}

// The objective sum_k min(p_k q'_k, p'_k q_k) is concave in (p', q'), so the
// maximization is an exact LP in the epigraph variables s_k.
DiameterBounds diameter_bounds(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.empty() || p.size() != q.size()) fail("ShapeMismatch", "state distributions differ in length");
  check_simplex(p, "p");
  check_simplex(q, "q");
  const int K = static_cast<int>(p.size());

  lp::Problem prob;
  prob.sense = lp::ObjSense::Maximize;
  for (int k = 0; k < 2 * K; ++k) prob.add_variable(0.0, 0.0, 1.0);
  for (int k = 0; k < K; ++k) prob.add_variable(1.0, -lp::kInf, lp::kInf);
  const int pp = 0, qp = K, s0 = 2 * K;
  for (int k = 0; k < K; ++k) {
    int r = prob.add_row(lp::RowSense::Le, 0.0);
    prob.add_entry(r, s0 + k, 1.0);
    prob.add_entry(r, qp + k, -p[k]);
    r = prob.add_row(lp::RowSense::Le, 0.0);
    prob.add_entry(r, s0 + k, 1.0);
    prob.add_entry(r, pp + k, -q[k]);
  }
  int r = prob.add_row(lp::RowSense::Eq, 1.0);
  for (int k = 0; k < K; ++k) prob.add_entry(r, pp + k, 1.0);
  r = prob.add_row(lp::RowSense::Eq, 1.0);
  for (int k = 0; k < K; ++k) prob.add_entry(r, qp + k, 1.0);

  const lp::Solution s = lp::solve(prob);
  if (s.status != lp::Status::Optimal) fail("NumericalFailure", "diameter LP not optimal");

  DiameterBounds out;
  for (int k = 0; k < K; ++k) out.lower += std::abs(p[k] - q[k]);
  out.upper = 2.0 * (1.0 - std::clamp(s.objective, 0.0, 1.0));
  out.p_prime.assign(s.primal.begin() + pp, s.primal.begin() + pp + K);
  out.q_prime.assign(s.primal.begin() + qp, s.primal.begin() + qp + K);
  return out;
}

double dw(const InformationStructure& u, const InformationStructure& v,
          const std::vector<ZeroSumGame>& games) {
  double total = 0.0, weight = 0.5;
  for (const ZeroSumGame& g : games) {
    total += weight * std::abs(value(u, g).value - value(v, g).value);
    weight *= 0.5;
  }
  return total;
}

PropositionCheck check_conditional_independence_prop(const InformationStructure& u,
                                                     const InformationStructure& v) {
  require_same_states(u, v);
  PropositionCheck out;
  const ConditionalQuery q{{1}, {2}, {0}};
  const Tensor tu = as_tensor(u), tv = as_tensor(v);
  double measure = std::max(eps_conditional_independence(tu, q), eps_conditional_independence(tv, q));
  if (u.signals2() != v.signals2()) {
    measure = 2.0;
  } else {
    const Tensor mu = marginalize(tu, {0, 2}), mv = marginalize(tv, {0, 2});
    double diff = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) diff += std::abs(mu.data[i] - mv.data[i]);
    measure = std::max(measure, diff);
  }
  out.hypothesis_measure = measure;
  out.hypothesis_holds = measure <= kHypothesisTol;
  out.lhs = value_distance(u, v);
  out.rhs = single_agent_distance(u, v);
  out.inequality_holds = std::abs(out.lhs - out.rhs) <= kDistTol;
  return out;
}

PropositionCheck check_substitutes_prop(const Tensor& mu) {
  if (mu.rank() != 5) fail("ShapeMismatch", "expected axes (k, c, c1, c2, d)");
  PropositionCheck out;
  out.hypothesis_measure = eps_conditional_independence(mu, {{2}, {1, 3, 4}, {0}});
  out.hypothesis_holds = out.hypothesis_measure <= kHypothesisTol;
  const auto u = structure_from_tensor(mu, {0}, {1, 2, 3}, {4});
  const auto v = structure_from_tensor(mu, {0}, {1, 2}, {4});
  const auto u2 = structure_from_tensor(mu, {0}, {1, 3}, {4});
  const auto v2 = structure_from_tensor(mu, {0}, {1}, {4});
  out.lhs = value_distance(u, v);
  out.rhs = value_distance(u2, v2);
  out.inequality_holds = out.lhs <= out.rhs + kDistTol;
  return out;
}

PropositionCheck check_complements_prop(const Tensor& mu) {
  if (mu.rank() != 5) fail("ShapeMismatch", "expected axes (k, c, c1, d, d1)");
  PropositionCheck out;
  out.hypothesis_measure = eps_conditional_independence(marginalize(mu, {0, 1, 2, 3}), {{1, 2}, {3}, {0}});
  out.hypothesis_holds = out.hypothesis_measure <= kHypothesisTol;
  const auto u = structure_from_tensor(mu, {0}, {1, 2}, {3, 4});
  const auto v = structure_from_tensor(mu, {0}, {1}, {3, 4});
  const auto u2 = structure_from_tensor(mu, {0}, {1, 2}, {3});
  const auto v2 = structure_from_tensor(mu, {0}, {1}, {3});
  out.lhs = value_distance(u2, v2);
  out.rhs = value_distance(u, v);
  out.inequality_holds = out.lhs <= out.rhs + kDistTol;
  return out;
}

PropositionCheck check_joint_information_prop(const Tensor& mu) {
  if (mu.rank() != 5) fail("ShapeMismatch", "expected axes (k, c, c1, d, d1)");
  PropositionCheck out;
  // d1 against (k, c) given d, on axes (k, c, d, d1)
  const double e2 = eps_conditional_independence(marginalize(mu, {0, 1, 3, 4}), {{3}, {0, 1}, {2}});
  // c1 against (k, d) given c, on axes (k, c, c1, d)
  const double e1 = eps_conditional_independence(marginalize(mu, {0, 1, 2, 3}), {{2}, {0, 3}, {1}});
  out.hypothesis_measure = std::max(e1, e2);
  out.hypothesis_holds = true;
  const auto u = structure_from_tensor(mu, {0}, {1, 2}, {3, 4});
  const auto v = structure_from_tensor(mu, {0}, {1}, {3});
  out.lhs = value_distance(u, v);
  out.rhs = out.hypothesis_measure;
  out.inequality_holds = out.lhs <= out.rhs + kDistTol;
  return out;
}

}  // namespace infodist
