#include "infodist/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infodist/error.hpp"

namespace infodist {

namespace {

std::size_t product(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

std::vector<std::size_t> strides_of(const std::vector<int>& shape) {
  std::vector<std::size_t> st(shape.size(), 1);
  for (int a = static_cast<int>(shape.size()) - 2; a >= 0; --a) st[a] = st[a + 1] * shape[a + 1];
  return st;
}

// For a flat index of `shape`, the flat index in the tensor restricted to
// `axes` (in that order). Precomputed per element for small tensors.
std::vector<std::size_t> projection_map(const std::vector<int>& shape, const std::vector<int>& axes) {
  const auto st = strides_of(shape);
  std::vector<int> sub;
  for (int a : axes) sub.push_back(shape[a]);
  const auto sub_st = strides_of(sub);
  const std::size_t n = product(shape);
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    for (std::size_t g = 0; g < axes.size(); ++g) {
      const std::size_t coord = (i / st[axes[g]]) % shape[axes[g]];
      j += coord * sub_st[g];
    }
    out[i] = j;
  }
  return out;
}

void check_axes(const Tensor& t, const std::vector<int>& axes) {
  for (int a : axes)
    if (a < 0 || a >= static_cast<int>(t.rank())) fail("ShapeMismatch", "axis out of range");
}

}  // namespace

std::vector<std::string> default_state_labels(int count) {
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) out.push_back(std::to_string(k));
  return out;
}

InformationStructure::InformationStructure(std::vector<std::string> states, int signals1,
                                           int signals2, std::vector<double> probs)
    : labels_(std::move(states)), n1_(signals1), n2_(signals2), p_(std::move(probs)) {
  if (labels_.empty() || n1_ <= 0 || n2_ <= 0)
    fail("ShapeMismatch", "structure needs at least one state and one signal per player");
  if (p_.size() != labels_.size() * static_cast<std::size_t>(n1_) * n2_)
    fail("ShapeMismatch", "probability tensor has " + std::to_string(p_.size()) +
                              " entries, expected " +
                              std::to_string(labels_.size() * n1_ * n2_));
  double sum = 0.0;
  for (double& x : p_) {
    if (!std::isfinite(x)) fail("ShapeMismatch", "non-finite probability entry");
    if (x < -kZeroTol) fail("NegativeMass", "probability entry " + std::to_string(x) + " < 0");
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    fail("NotNormalized", "probabilities sum to " + std::to_string(sum));
  // Already unit up to rounding: leave entries untouched so JSON round trips are exact.
  if (std::abs(sum - 1.0) > 1e-14)
    for (double& x : p_) x /= sum;
}

InformationStructure InformationStructure::uniform_on(std::vector<std::string> states, int signals1,
                                                      int signals2,
                                                      const std::vector<std::array<int, 3>>& atoms) {
  const std::size_t K = states.size();
  std::vector<double> p(K * signals1 * signals2, 0.0);
  for (const auto& a : atoms) {
    if (a[0] < 0 || a[0] >= static_cast<int>(K) || a[1] < 0 || a[1] >= signals1 || a[2] < 0 ||
        a[2] >= signals2)
      fail("ShapeMismatch", "atom outside the declared ranges");
    p[(static_cast<std::size_t>(a[0]) * signals1 + a[1]) * signals2 + a[2]] += 1.0 / atoms.size();
  }
  return InformationStructure(std::move(states), signals1, signals2, std::move(p));
}

InformationStructure validate_structure(std::vector<std::string> states, int signals1,
                                        int signals2, std::vector<double> probs) {
  return InformationStructure(std::move(states), signals1, signals2, std::move(probs));
}

Garbling::Garbling(int source, int target, std::vector<double> rows)
    : source_(source), target_(target), rows_(std::move(rows)) {
  if (source_ <= 0 || target_ <= 0) fail("ShapeMismatch", "garbling dimensions must be positive");
  if (rows_.size() != static_cast<std::size_t>(source_) * target_)
    fail("ShapeMismatch", "garbling has wrong number of entries");
  for (int s = 0; s < source_; ++s) {
    double sum = 0.0;
    for (int t = 0; t < target_; ++t) {
      double& x = rows_[static_cast<std::size_t>(s) * target_ + t];
      if (!std::isfinite(x)) fail("ShapeMismatch", "non-finite garbling entry");
      if (x < -kZeroTol) fail("NegativeMass", "negative garbling entry in row " + std::to_string(s));
      if (x < 0.0) x = 0.0;
      sum += x;
    }
    if (std::abs(sum - 1.0) > kNormTol)
      fail("NotNormalized", "garbling row " + std::to_string(s) + " sums to " + std::to_string(sum));
    for (int t = 0; t < target_; ++t) rows_[static_cast<std::size_t>(s) * target_ + t] /= sum;
  }
}

Garbling Garbling::identity(int n) {
  std::vector<double> r(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i) * n + i] = 1.0;
  return Garbling(n, n, std::move(r));
}

Garbling Garbling::deterministic(int target, const std::vector<int>& map) {
  std::vector<double> r(map.size() * static_cast<std::size_t>(target), 0.0);
  for (std::size_t s = 0; s < map.size(); ++s) {
    if (map[s] < 0 || map[s] >= target) fail("ShapeMismatch", "deterministic target out of range");
    r[s * target + map[s]] = 1.0;
  }
  return Garbling(static_cast<int>(map.size()), target, std::move(r));
}

InformationStructure garble(const InformationStructure& u, Side side, const Garbling& q) {
  const int K = u.states();
  if (side == Side::Player1) {
    if (q.source() != u.signals1()) fail("ShapeMismatch", "garbling source != player-1 signal count");
    const int C = q.target(), D = u.signals2();
    std::vector<double> p(static_cast<std::size_t>(K) * C * D, 0.0);
    for (int k = 0; k < K; ++k)
      for (int c0 = 0; c0 < u.signals1(); ++c0)
        for (int d = 0; d < D; ++d) {
          const double m = u(k, c0, d);
          if (m == 0.0) continue;
          for (int c = 0; c < C; ++c) p[(static_cast<std::size_t>(k) * C + c) * D + d] += m * q(c0, c);
        }
    return InformationStructure(u.state_labels(), C, D, std::move(p));
  }
  if (q.source() != u.signals2()) fail("ShapeMismatch", "garbling source != player-2 signal count");
  const int C = u.signals1(), D = q.target();
  std::vector<double> p(static_cast<std::size_t>(K) * C * D, 0.0);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < C; ++c)
      for (int d0 = 0; d0 < u.signals2(); ++d0) {
        const double m = u(k, c, d0);
        if (m == 0.0) continue;
        for (int d = 0; d < D; ++d) p[(static_cast<std::size_t>(k) * C + c) * D + d] += m * q(d0, d);
      }
  return InformationStructure(u.state_labels(), C, D, std::move(p));
}

Garbling compose_garblings(const Garbling& outer, const Garbling& inner) {
  if (outer.source() != inner.target()) fail("ShapeMismatch", "outer.source != inner.target");
  std::vector<double> r(static_cast<std::size_t>(inner.source()) * outer.target(), 0.0);
  for (int s = 0; s < inner.source(); ++s)
    for (int m = 0; m < inner.target(); ++m) {
      const double w = inner(s, m);
      if (w == 0.0) continue;
      for (int t = 0; t < outer.target(); ++t)
        r[static_cast<std::size_t>(s) * outer.target() + t] += w * outer(m, t);
    }
  return Garbling(inner.source(), outer.target(), std::move(r));
}

double l1_distance(const InformationStructure& u, const InformationStructure& v) {
  if (u.states() != v.states() || u.signals1() != v.signals1() || u.signals2() != v.signals2())
    fail("ShapeMismatch", "l1_distance needs identical shapes (embed_signals first)");
  double s = 0.0;
  for (std::size_t i = 0; i < u.probs().size(); ++i) s += std::abs(u.probs()[i] - v.probs()[i]);
  return s;
}

InformationStructure embed_signals(const InformationStructure& u, int target1, int target2) {
  if (target1 < u.signals1() || target2 < u.signals2())
    fail("ShrinkNotAllowed", "embedding target smaller than current signal count");
  const int K = u.states();
  std::vector<double> p(static_cast<std::size_t>(K) * target1 * target2, 0.0);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d)
        p[(static_cast<std::size_t>(k) * target1 + c) * target2 + d] = u(k, c, d);
  return InformationStructure(u.state_labels(), target1, target2, std::move(p));
}

Tensor::Tensor(std::vector<int> shape_, std::vector<double> data_)
    : shape(std::move(shape_)), data(std::move(data_)) {
  for (int s : shape)
    if (s <= 0) fail("ShapeMismatch", "tensor dimensions must be positive");
  if (data.size() != product(shape)) fail("ShapeMismatch", "tensor data size does not match shape");
}

Tensor::Tensor(std::vector<int> shape_) : shape(std::move(shape_)) {
  for (int s : shape)
    if (s <= 0) fail("ShapeMismatch", "tensor dimensions must be positive");
  data.assign(product(shape), 0.0);
}

double Tensor::total() const { return std::accumulate(data.begin(), data.end(), 0.0); }

std::size_t Tensor::offset(const std::vector<int>& idx) const {
  std::size_t o = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) o = o * shape[a] + idx[a];
  return o;
}

Tensor as_tensor(const InformationStructure& u) {
  return Tensor({u.states(), u.signals1(), u.signals2()}, u.probs());
}

Tensor marginalize(const Tensor& t, const std::vector<int>& keep) {
  check_axes(t, keep);
  std::vector<int> sub;
  for (int a : keep) sub.push_back(t.shape[a]);
  Tensor out(sub);
  const auto map = projection_map(t.shape, keep);
  for (std::size_t i = 0; i < t.size(); ++i) out.data[map[i]] += t.data[i];
  return out;
}

Tensor conditional(const Tensor& t, const std::vector<std::pair<int, int>>& given) {
  std::vector<int> fixed_axes;
  for (const auto& [axis, value] : given) {
    check_axes(t, {axis});
    if (value < 0 || value >= t.shape[axis]) fail("ShapeMismatch", "conditioning value out of range");
    fixed_axes.push_back(axis);
  }
  std::vector<int> rest;
  for (int a = 0; a < static_cast<int>(t.rank()); ++a)
    if (std::find(fixed_axes.begin(), fixed_axes.end(), a) == fixed_axes.end()) rest.push_back(a);
  std::vector<int> sub;
  for (int a : rest) sub.push_back(t.shape[a]);
  if (sub.empty()) sub.push_back(1);
  Tensor out(sub);
  const auto st = strides_of(t.shape);
  const auto map = projection_map(t.shape, rest);
  double mass = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool match = true;
    for (const auto& [axis, value] : given)
      if (static_cast<int>((i / st[axis]) % t.shape[axis]) != value) { match = false; break; }
    if (!match) continue;
    out.data[map[i]] += t.data[i];
    mass += t.data[i];
  }
  if (mass < kZeroTol) fail("ZeroMassCondition", "conditioning event has mass " + std::to_string(mass));
  for (double& x : out.data) x /= mass;
  return out;
}

InformationStructure structure_from_tensor(const Tensor& t, const std::vector<int>& state_axes,
                                           const std::vector<int>& p1_axes,
                                           const std::vector<int>& p2_axes,
                                           std::vector<std::string> labels) {
  std::vector<int> keep = state_axes;
  keep.insert(keep.end(), p1_axes.begin(), p1_axes.end());
  keep.insert(keep.end(), p2_axes.begin(), p2_axes.end());
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail("ShapeMismatch", "an axis appears in two groups");
  const Tensor m = marginalize(t, keep);
  auto group_size = [&](const std::vector<int>& g) {
    int n = 1;
    for (int a : g) n *= t.shape[a];
    return n;
  };
  const int K = group_size(state_axes), C = group_size(p1_axes), D = group_size(p2_axes);
  if (labels.empty()) labels = default_state_labels(K);
  return InformationStructure(std::move(labels), C, D, m.data);
}

double eps_conditional_independence(const Tensor& t, const ConditionalQuery& query) {
  std::vector<int> all = query.x;
  all.insert(all.end(), query.y.begin(), query.y.end());
  all.insert(all.end(), query.z.begin(), query.z.end());
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != all.size() || all.size() != t.rank())
    fail("ShapeMismatch", "query groups must partition the tensor axes");
  check_axes(t, all);
  if (query.x.empty() || query.y.empty()) fail("ShapeMismatch", "x and y groups must be non-empty");

  auto size_of = [&](const std::vector<int>& g) {
    std::size_t n = 1;
    for (int a : g) n *= t.shape[a];
    return n;
  };
  const std::size_t nx = size_of(query.x), ny = size_of(query.y), nz = size_of(query.z);
  const Tensor m = marginalize(t, all);  // flat layout (x, y, z)
  std::vector<double> pxz(nx * nz, 0.0), pyz(ny * nz, 0.0), pz(nz, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const double w = m.data[(x * ny + y) * nz + z];
        pxz[x * nz + z] += w;
        pyz[y * nz + z] += w;
        pz[z] += w;
      }
  double eps = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    if (pz[z] < kZeroTol) continue;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        eps += std::abs(m.data[(x * ny + y) * nz + z] - pxz[x * nz + z] * pyz[y * nz + z] / pz[z]);
  }
  return eps;
}

std::vector<double> state_marginal(const InformationStructure& u) {
  std::vector<double> p(u.states(), 0.0);
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d) p[k] += u(k, c, d);
  return p;
}

InformationStructure player1_view(const InformationStructure& u) {
  std::vector<double> p(static_cast<std::size_t>(u.states()) * u.signals1(), 0.0);
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d) p[static_cast<std::size_t>(k) * u.signals1() + c] += u(k, c, d);
  return InformationStructure(u.state_labels(), u.signals1(), 1, std::move(p));
}

InformationStructure swap_players(const InformationStructure& u) {
  const int C = u.signals1(), D = u.signals2();
  std::vector<double> p(u.probs().size(), 0.0);
  for (int k = 0; k < u.states(); ++k)
    for (int c = 0; c < C; ++c)
      for (int d = 0; d < D; ++d) p[(static_cast<std::size_t>(k) * D + d) * C + c] = u(k, c, d);
  return InformationStructure(u.state_labels(), D, C, std::move(p));
}

}  // namespace infodist
