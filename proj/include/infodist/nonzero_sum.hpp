#pragma once

#include <string>
#include <vector>

#include "infodist/game_value.hpp"
#include "infodist/prob_core.hpp"

namespace infodist {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Convex hull, counter-clockwise, no repeated or collinear vertices. One or
// two vertices for degenerate sets.
struct PayoffPolygon {
  std::vector<Point> vertices;
};

PayoffPolygon convex_hull(std::vector<Point> points);

// Hull of the expected payoff pairs of all pure decision-rule profiles.
PayoffPolygon feasible_set(const InformationStructure& u, const BimatrixGame& g, double budget = 1e6);

struct NearestPoint {
  double distance = 0.0;  // max norm
  Point point;
};

NearestPoint distance_to_polygon(const Point& x, const PayoffPolygon& poly);

double hausdorff_max(const PayoffPolygon& a, const PayoffPolygon& b);

// Keeps the part with x >= x_min and y >= y_min; may come back empty.
PayoffPolygon clip_lower_left(const PayoffPolygon& poly, double x_min, double y_min);

enum class FeasibleCase { CondIndep, Public, OneSided };

FeasibleCase parse_case(const std::string& name);
std::string to_string(FeasibleCase c);
double case_multiplier(FeasibleCase c);  // 3 for CondIndep, 1 otherwise
bool satisfies_case(const InformationStructure& u, FeasibleCase c);

struct FeasibleBoundReport {
  double d = 0.0;
  double hausdorff = 0.0;
  double multiplier = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// Throws HypothesisViolated unless both structures satisfy the case.
FeasibleBoundReport verify_feasible_bound(const InformationStructure& u, const InformationStructure& v,
                                          const BimatrixGame& g, FeasibleCase c);

struct IrBoundReport {
  double d = 0.0;
  double m1_u = 0.0, m2_u = 0.0;
  double m1_v = 0.0, m2_v = 0.0;
  double distance = 0.0;  // to the feasible and individually rational part of F(v, g)
  Point nearest;
  double bound = 0.0;     // 3 d
  bool pass = false;
};

IrBoundReport verify_ir_bound(const InformationStructure& u, const InformationStructure& v,
                              const BimatrixGame& g, const Point& x, FeasibleCase c = FeasibleCase::CondIndep);

struct CommonInterestReport {
  double best_u = 0.0;
  double best_v = 0.0;
  double d = 0.0;
  bool pass = false;  // |best_u - best_v| <= 3 d
};

// g must have g1 == g2.
CommonInterestReport common_interest_gap(const InformationStructure& u, const InformationStructure& v,
                                         const BimatrixGame& g, FeasibleCase c);

}  // namespace infodist
