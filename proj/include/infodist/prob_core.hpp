#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace infodist {

inline constexpr double kNormTol = 1e-9;   // unit-sum checks
inline constexpr double kZeroTol = 1e-12;  // entrywise zero
inline constexpr double kDistTol = 1e-6;   // distance equality

enum class Side { Player1, Player2 };

std::vector<std::string> default_state_labels(int count);

// Common-prior distribution u(k, c, d) over states x player-1 signals x
// player-2 signals. Stored dense, k outer, c middle, d inner.
class InformationStructure {
 public:
  // Validates and returns the normalized view. Throws NegativeMass,
  // NotNormalized or ShapeMismatch.
  InformationStructure(std::vector<std::string> states, int signals1, int signals2,
                       std::vector<double> probs);

  // Uniform distribution over the listed (k, c, d) atoms; repeated atoms add mass.
  static InformationStructure uniform_on(std::vector<std::string> states, int signals1,
                                         int signals2,
                                         const std::vector<std::array<int, 3>>& atoms);

  int states() const { return static_cast<int>(labels_.size()); }
  int signals1() const { return n1_; }
  int signals2() const { return n2_; }
  const std::vector<std::string>& state_labels() const { return labels_; }
  const std::vector<double>& probs() const { return p_; }
  std::size_t index(int k, int c, int d) const {
    return (static_cast<std::size_t>(k) * n1_ + c) * n2_ + d;
  }
  double operator()(int k, int c, int d) const { return p_[index(k, c, d)]; }

 private:
  std::vector<std::string> labels_;
  int n1_ = 0;
  int n2_ = 0;
  std::vector<double> p_;
};

InformationStructure validate_structure(std::vector<std::string> states, int signals1,
                                        int signals2, std::vector<double> probs);

// Row-stochastic map q(t | s) from source signals to target signals.
class Garbling {
 public:
  Garbling() = default;
  Garbling(int source, int target, std::vector<double> rows);

  static Garbling identity(int n);
  // Row s puts all mass on map[s].
  static Garbling deterministic(int target, const std::vector<int>& map);

  int source() const { return source_; }
  int target() const { return target_; }
  double operator()(int s, int t) const { return rows_[static_cast<std::size_t>(s) * target_ + t]; }
  const std::vector<double>& data() const { return rows_; }

 private:
  int source_ = 0;
  int target_ = 0;
  std::vector<double> rows_;
};

InformationStructure garble(const InformationStructure& u, Side side, const Garbling& q);

// (outer o inner)(t | s) = sum_m outer(t | m) inner(m | s): apply inner first.
Garbling compose_garblings(const Garbling& outer, const Garbling& inner);

double l1_distance(const InformationStructure& u, const InformationStructure& v);

// Zero-pads the signal axes. Throws ShrinkNotAllowed.
InformationStructure embed_signals(const InformationStructure& u, int target1, int target2);

// Generic dense tensor, row-major, first axis most significant.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<int> shape_, std::vector<double> data_);
  explicit Tensor(std::vector<int> shape_);

  std::size_t rank() const { return shape.size(); }
  std::size_t size() const { return data.size(); }
  double total() const;
  std::size_t offset(const std::vector<int>& idx) const;
};

Tensor as_tensor(const InformationStructure& u);

// Marginal over the kept axes, in the order given.
Tensor marginalize(const Tensor& t, const std::vector<int>& keep);

// Distribution over the axes not fixed by `given` (pairs of axis, value),
// normalized. Throws ZeroMassCondition.
Tensor conditional(const Tensor& t, const std::vector<std::pair<int, int>>& given);

// Builds a structure by grouping tensor axes: each group is flattened in
// mixed radix with its first axis most significant. Axes not listed are
// summed out.
InformationStructure structure_from_tensor(const Tensor& t, const std::vector<int>& state_axes,
                                           const std::vector<int>& p1_axes,
                                           const std::vector<int>& p2_axes,
                                           std::vector<std::string> labels = {});

struct ConditionalQuery {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
};

// sum_z mu(z) sum_{x,y} |mu(x,y|z) - mu(x|z) mu(y|z)|
double eps_conditional_independence(const Tensor& t, const ConditionalQuery& query);

std::vector<double> state_marginal(const InformationStructure& u);
// Marginal over (K x C) kept as a structure with a single player-2 signal.
InformationStructure player1_view(const InformationStructure& u);
// result(k, d, c) = u(k, c, d)
InformationStructure swap_players(const InformationStructure& u);

}  // namespace infodist
