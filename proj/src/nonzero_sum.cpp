#include "infodist/nonzero_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "infodist/distance.hpp"
#include "infodist/error.hpp"

namespace infodist {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double max_norm(const Point& a, const Point& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// min over t in [0, 1] of |x - (a + t (b - a))|_max; the objective is convex
// piecewise linear, so its breakpoints and the endpoints suffice.
NearestPoint segment_distance(const Point& x, const Point& a, const Point& b) {
  const double ax = a.x - x.x, ay = a.y - x.y, dx = b.x - a.x, dy = b.y - a.y;
  std::vector<double> ts{0.0, 1.0};
  if (dx != 0.0) ts.push_back(-ax / dx);
  if (dy != 0.0) ts.push_back(-ay / dy);
  if (dx - dy != 0.0) ts.push_back((ay - ax) / (dx - dy));
  if (dx + dy != 0.0) ts.push_back((-ay - ax) / (dx + dy));
  NearestPoint best{std::numeric_limits<double>::infinity(), a};
  for (double t : ts) {
    t = std::clamp(t, 0.0, 1.0);
    const Point p{a.x + t * dx, a.y + t * dy};
    const double dist = max_norm(x, p);
    if (dist < best.distance) best = {dist, p};
  }
  return best;
}

bool same_point(const Point& a, const Point& b) { return max_norm(a, b) <= 1e-12; }

void require_states(const InformationStructure& u, const BimatrixGame& g) {
  if (u.states() != g.g1.states()) fail("ShapeMismatch", "structure and game have different state counts");
}

bool conditionally_independent(const InformationStructure& u) {
  return eps_conditional_independence(as_tensor(u), {{1}, {2}, {0}}) <= kHypothesisTol;
}

bool public_signals(const InformationStructure& u) {
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d)
        if (c != d && u(k, c, d) >= kZeroTol) return false;
  return true;
}

bool player1_fully_informed(const InformationStructure& u) {
  for (int c = 0; c < u.signals1(); ++c) {
    int seen = 0;
    for (int k = 0; k < u.states(); ++k)
      for (int d = 0; d < u.signals2(); ++d)
        if (u(k, c, d) >= kZeroTol) ++seen;
    if (seen > 1) return false;
  }
  return true;
}

void gate(const InformationStructure& u, const InformationStructure& v, FeasibleCase c) {
  if (!satisfies_case(u, c) || !satisfies_case(v, c))
    fail("HypothesisViolated", "structures do not satisfy the " + to_string(c) + " hypothesis");
}

}  // namespace

PayoffPolygon convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point> uniq;
  for (const Point& p : pts)
    if (uniq.empty() || !same_point(uniq.back(), p)) uniq.push_back(p);
  if (uniq.size() <= 2) {
    if (uniq.size() == 2 && same_point(uniq[0], uniq[1])) uniq.pop_back();
    return PayoffPolygon{uniq};
  }
  std::vector<Point> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const Point& p : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-15) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], uniq[i]) <= 1e-15) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return PayoffPolygon{hull};
}

PayoffPolygon feasible_set(const InformationStructure& u, const BimatrixGame& g, double budget) {
  require_states(u, g);
  const int K = u.states(), C = u.signals1(), D = u.signals2();
  const int I = g.g1.actions1(), J = g.g1.actions2();
  const double n1 = std::pow(static_cast<double>(I), C), n2 = std::pow(static_cast<double>(J), D);
  if (n1 * n2 > budget) fail("BudgetExceeded", "pure profile count " + std::to_string(n1 * n2) + " exceeds budget");
  const long R1 = static_cast<long>(n1), R2 = static_cast<long>(n2);

  std::vector<std::vector<int>> rules2(R2, std::vector<int>(D));
  for (long b = 0; b < R2; ++b) {
    long x = b;
    for (int d = D - 1; d >= 0; --d, x /= J) rules2[b][d] = static_cast<int>(x % J);
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(R1 * R2));
  std::vector<int> r1(C);
  std::vector<double> m1(static_cast<std::size_t>(D) * J), m2(static_cast<std::size_t>(D) * J);
  for (long a = 0; a < R1; ++a) {
    long x = a;
    for (int c = C - 1; c >= 0; --c, x /= I) r1[c] = static_cast<int>(x % I);
    std::fill(m1.begin(), m1.end(), 0.0);
    std::fill(m2.begin(), m2.end(), 0.0);
    for (int k = 0; k < K; ++k)
      for (int c = 0; c < C; ++c)
        for (int d = 0; d < D; ++d) {
          const double w = u(k, c, d);
          if (w == 0.0) continue;
          for (int j = 0; j < J; ++j) {
            m1[d * J + j] += w * g.g1(k, r1[c], j);
            m2[d * J + j] += w * g.g2(k, r1[c], j);
          }
        }
    for (long b = 0; b < R2; ++b) {
      Point p;
      for (int d = 0; d < D; ++d) {
        p.x += m1[d * J + rules2[b][d]];
        p.y += m2[d * J + rules2[b][d]];
      }
      pts.push_back(p);
    }
  }
  return convex_hull(std::move(pts));
}

NearestPoint distance_to_polygon(const Point& x, const PayoffPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.empty()) fail("EmptyInput", "empty polygon");
  if (v.size() == 1) return {max_norm(x, v[0]), v[0]};
  if (v.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < v.size() && inside; ++i)
      inside = cross(v[i], v[(i + 1) % v.size()], x) >= -1e-12;
    if (inside) return {0.0, x};
  }
  NearestPoint best{std::numeric_limits<double>::infinity(), v[0]};
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const NearestPoint np = segment_distance(x, v[i], v[(i + 1) % v.size()]);
    if (np.distance < best.distance) best = np;
  }
  return best;
}

double hausdorff_max(const PayoffPolygon& a, const PayoffPolygon& b) {
  if (a.vertices.empty() || b.vertices.empty()) fail("EmptyInput", "Hausdorff distance of an empty polygon");
  double h = 0.0;
  for (const Point& p : a.vertices) h = std::max(h, distance_to_polygon(p, b).distance);
  for (const Point& p : b.vertices) h = std::max(h, distance_to_polygon(p, a).distance);
  return h;
}

PayoffPolygon clip_lower_left(const PayoffPolygon& poly, double x_min, double y_min) {
  auto clip = [](const std::vector<Point>& in, auto value) {
    std::vector<Point> out;
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = in[i];
      const Point& b = in[(i + 1) % n];
      const double va = value(a), vb = value(b);
      if (va >= 0.0) out.push_back(a);
      if ((va >= 0.0) != (vb >= 0.0)) {
        const double t = va / (va - vb);
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
    return out;
  };
  std::vector<Point> pts = clip(poly.vertices, [&](const Point& p) { return p.x - x_min; });
  if (!pts.empty()) pts = clip(pts, [&](const Point& p) { return p.y - y_min; });
  return convex_hull(std::move(pts));
}

FeasibleCase parse_case(const std::string& name) {
  if (name == "cond_indep") return FeasibleCase::CondIndep;
  if (name == "public") return FeasibleCase::Public;
  if (name == "one_sided") return FeasibleCase::OneSided;
  fail("InvalidParameters", "unknown case " + name + " (cond_indep, public, one_sided)");
}

std::string to_string(FeasibleCase c) {
  switch (c) {
    case FeasibleCase::CondIndep: return "cond_indep";
    case FeasibleCase::Public: return "public";
    case FeasibleCase::OneSided: return "one_sided";
  }
  return "?";
}

double case_multiplier(FeasibleCase c) { return c == FeasibleCase::CondIndep ? 3.0 : 1.0; }

bool satisfies_case(const InformationStructure& u, FeasibleCase c) {
  switch (c) {
    case FeasibleCase::CondIndep: return conditionally_independent(u);
    case FeasibleCase::Public: return public_signals(u);
    case FeasibleCase::OneSided: return player1_fully_informed(u);
  }
  return false;
}

FeasibleBoundReport verify_feasible_bound(const InformationStructure& u, const InformationStructure& v,
                                          const BimatrixGame& g, FeasibleCase c) {
  gate(u, v, c);
  FeasibleBoundReport rep;
  rep.d = value_distance(u, v);
  rep.hausdorff = hausdorff_max(feasible_set(u, g), feasible_set(v, g));
  rep.multiplier = case_multiplier(c);
  rep.bound = rep.multiplier * rep.d;
  rep.pass = rep.hausdorff <= rep.bound + kDistTol;
  return rep;
}

IrBoundReport verify_ir_bound(const InformationStructure& u, const InformationStructure& v,
                              const BimatrixGame& g, const Point& x, FeasibleCase c) {
  gate(u, v, c);
  IrBoundReport rep;
  rep.d = value_distance(u, v);
  std::tie(rep.m1_u, rep.m2_u) = minmax_levels(u, g);
  std::tie(rep.m1_v, rep.m2_v) = minmax_levels(v, g);
  if (distance_to_polygon(x, feasible_set(u, g)).distance > kNormTol)
    fail("HypothesisViolated", "x is not feasible in the game on u");
  if (x.x < rep.m1_u + 4.0 * rep.d - kNormTol || x.y < rep.m2_u + 4.0 * rep.d - kNormTol)
    fail("HypothesisViolated", "x is not 4d above the minmax levels on u");
  rep.bound = 3.0 * rep.d;
  const PayoffPolygon target = clip_lower_left(feasible_set(v, g), rep.m1_v, rep.m2_v);
  if (target.vertices.empty()) {
    rep.distance = std::numeric_limits<double>::infinity();
    rep.pass = false;
    return rep;
  }
  const NearestPoint np = distance_to_polygon(x, target);
  rep.distance = np.distance;
  rep.nearest = np.point;
  rep.pass = rep.distance <= rep.bound + kDistTol;
  return rep;
}

CommonInterestReport common_interest_gap(const InformationStructure& u, const InformationStructure& v,
                                         const BimatrixGame& g, FeasibleCase c) {
  if (g.g1.payoffs() != g.g2.payoffs()) fail("InvalidParameters", "common-interest game needs g1 == g2");
  gate(u, v, c);
  auto best = [&](const InformationStructure& s) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Point& p : feasible_set(s, g).vertices) m = std::max(m, p.x);
    return m;
  };
  CommonInterestReport rep;
  rep.best_u = best(u);
  rep.best_v = best(v);
  rep.d = value_distance(u, v);
  rep.pass = std::abs(rep.best_u - rep.best_v) <= 3.0 * rep.d + kDistTol;
  return rep;
}

}  // namespace infodist
