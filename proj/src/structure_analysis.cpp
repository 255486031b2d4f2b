#include "infodist/structure_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "infodist/error.hpp"

namespace infodist {

namespace {

using boost::multiprecision::cpp_rational;

// Refines both players' partitions together until the class counts stop
// growing. `key` maps a conditional probability to a hashable grid value.
template <class Scalar, class KeyFn>
SignalPartition refine(int K, int C, int D, const std::vector<Scalar>& p, KeyFn key) {
  using KeyElem = decltype(key(Scalar{}));
  auto at = [&](int k, int c, int d) -> const Scalar& {
    return p[(static_cast<std::size_t>(k) * C + c) * D + d];
  };
  std::vector<Scalar> mass1(C, Scalar(0)), mass2(D, Scalar(0));
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < C; ++c)
      for (int d = 0; d < D; ++d) {
        mass1[c] += at(k, c, d);
        mass2[d] += at(k, c, d);
      }

  SignalPartition part;
  part.class1.assign(C, kNullClass);
  part.class2.assign(D, kNullClass);
  auto positive = [](const Scalar& m) {
    if constexpr (std::is_floating_point_v<Scalar>) return m >= kZeroTol;
    else return m > 0;
  };
  for (int c = 0; c < C; ++c)
    if (positive(mass1[c])) part.class1[c] = 0;
  for (int d = 0; d < D; ++d)
    if (positive(mass2[d])) part.class2[d] = 0;
  part.classes1 = 1;
  part.classes2 = 1;

  // Conditional over K x opponent classes, prefixed by the own class.
  auto relabel = [&](const std::vector<int>& own, const std::vector<int>& other,
                     int other_classes, const std::vector<Scalar>& mass, bool player1) {
    std::map<std::pair<int, std::vector<KeyElem>>, int> ids;
    std::vector<int> next(own.size(), kNullClass);
    for (std::size_t s = 0; s < own.size(); ++s) {
      if (own[s] == kNullClass) continue;
      std::vector<Scalar> cond(static_cast<std::size_t>(K) * other_classes, Scalar(0));
      const int n_other = static_cast<int>(other.size());
      for (int k = 0; k < K; ++k)
        for (int t = 0; t < n_other; ++t) {
          if (other[t] == kNullClass) continue;
          const Scalar& w = player1 ? at(k, static_cast<int>(s), t) : at(k, t, static_cast<int>(s));
          cond[static_cast<std::size_t>(k) * other_classes + other[t]] += w;
        }
      std::vector<KeyElem> sig;
      sig.reserve(cond.size());
      for (const Scalar& x : cond) sig.push_back(key(Scalar(x / mass[s])));
      auto [it, inserted] = ids.emplace(std::make_pair(own[s], std::move(sig)), static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    return std::make_pair(next, static_cast<int>(ids.size()));
  };

  for (int round = 0; round <= C + D + 1; ++round) {
    auto [n1, k1] = relabel(part.class1, part.class2, part.classes2, mass1, true);
    auto [n2, k2] = relabel(part.class2, part.class1, part.classes1, mass2, false);
    if (k1 == part.classes1 && k2 == part.classes2) return part;
    part.class1 = std::move(n1);
    part.class2 = std::move(n2);
    part.classes1 = k1;
    part.classes2 = k2;
    part.level = round + 1;
  }
  fail("NumericalFailure", "partition refinement did not stabilize");
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Distribution of one component over (k, class1, class2), keyed sparsely.
using Signature = std::map<std::array<int, 3>, double>;

Signature component_signature(const Component& comp, const std::vector<int>& cls1,
                              const std::vector<int>& cls2, int offset1, int offset2) {
  Signature sig;
  const InformationStructure& s = comp.structure;
  for (int k = 0; k < s.states(); ++k)
    for (int c = 0; c < s.signals1(); ++c)
      for (int d = 0; d < s.signals2(); ++d) {
        const double w = s(k, c, d);
        if (w < kZeroTol) continue;
        sig[{k, cls1[offset1 + comp.signals1[c]], cls2[offset2 + comp.signals2[d]]}] += w;
      }
  return sig;
}

bool same_signature(const Signature& a, const Signature& b) {
  for (const auto& [key, w] : a) {
    auto it = b.find(key);
    const double other = it == b.end() ? 0.0 : it->second;
    if (std::abs(w - other) > kNormTol) return false;
  }
  for (const auto& [key, w] : b)
    if (!a.count(key) && w > kNormTol) return false;
  return true;
}

}  // namespace

SignalPartition hierarchy_partition(const InformationStructure& u) {
  return refine(u.states(), u.signals1(), u.signals2(), u.probs(),
                [](double x) { return static_cast<long long>(std::llround(x * 1e12)); });
}

SignalPartition hierarchy_partition_exact(int states, int signals1, int signals2,
                                          const std::vector<std::string>& probs) {
  if (states <= 0 || signals1 <= 0 || signals2 <= 0 ||
      probs.size() != static_cast<std::size_t>(states) * signals1 * signals2)
    fail("ShapeMismatch", "exact partition: probability count does not match the shape");
  std::vector<cpp_rational> p;
  p.reserve(probs.size());
  cpp_rational total(0);
  for (const std::string& s : probs) {
    cpp_rational x;
    try {
      x = cpp_rational(s);
    } catch (const std::exception&) {
      fail("ShapeMismatch", "not a rational number: " + s);
    }
    if (x < 0) fail("NegativeMass", "negative rational entry " + s);
    total += x;
    p.push_back(x);
  }
  if (total != 1) fail("NotNormalized", "rational entries do not sum to 1");
  return refine(states, signals1, signals2, p, [](const cpp_rational& x) { return x; });
}

bool is_non_redundant(const InformationStructure& u) {
  const SignalPartition part = hierarchy_partition(u);
  auto live = [](const std::vector<int>& cls) {
    return static_cast<int>(std::count_if(cls.begin(), cls.end(), [](int c) { return c != kNullClass; }));
  };
  return part.classes1 == live(part.class1) && part.classes2 == live(part.class2);
}

InformationStructure reduce_redundancy(const InformationStructure& u) {
  const SignalPartition part = hierarchy_partition(u);
  const int K = u.states();
  std::vector<double> p(static_cast<std::size_t>(K) * part.classes1 * part.classes2, 0.0);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < u.signals1(); ++c)
      for (int d = 0; d < u.signals2(); ++d) {
        const int a = part.class1[c], b = part.class2[d];
        if (a == kNullClass || b == kNullClass) continue;
        p[(static_cast<std::size_t>(k) * part.classes1 + a) * part.classes2 + b] += u(k, c, d);
      }
  return InformationStructure(u.state_labels(), part.classes1, part.classes2, std::move(p));
}

Decomposition ck_decompose(const InformationStructure& u) {
  Decomposition dec;
  dec.reduced = !is_non_redundant(u);
  const InformationStructure base = dec.reduced ? reduce_redundancy(u) : u;
  const int K = base.states(), C = base.signals1(), D = base.signals2();

  UnionFind uf(C + D);
  std::vector<char> live1(C, 0), live2(D, 0);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < C; ++c)
      for (int d = 0; d < D; ++d)
        if (base(k, c, d) >= kZeroTol) {
          uf.unite(c, C + d);
          live1[c] = live2[d] = 1;
        }

  std::map<int, int> root_to_comp;
  std::vector<std::vector<int>> s1, s2;
  for (int c = 0; c < C; ++c) {
    if (!live1[c]) continue;
    auto [it, inserted] = root_to_comp.emplace(uf.find(c), static_cast<int>(s1.size()));
    if (inserted) {
      s1.emplace_back();
      s2.emplace_back();
    }
    s1[it->second].push_back(c);
  }
  for (int d = 0; d < D; ++d)
    if (live2[d]) s2[root_to_comp.at(uf.find(C + d))].push_back(d);

  for (std::size_t a = 0; a < s1.size(); ++a) {
    const int c_n = static_cast<int>(s1[a].size()), d_n = static_cast<int>(s2[a].size());
    std::vector<double> p(static_cast<std::size_t>(K) * c_n * d_n);
    double w = 0.0;
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < c_n; ++i)
        for (int j = 0; j < d_n; ++j) {
          const double x = base(k, s1[a][i], s2[a][j]);
          p[(static_cast<std::size_t>(k) * c_n + i) * d_n + j] = x;
          w += x;
        }
    for (double& x : p) x /= w;
    dec.components.push_back(
        Component{w, InformationStructure(base.state_labels(), c_n, d_n, std::move(p)), s1[a], s2[a]});
  }
  return dec;
}

InformationStructure recompose(const Decomposition& dec, const InformationStructure& like) {
  const int K = like.states(), C = like.signals1(), D = like.signals2();
  std::vector<double> p(static_cast<std::size_t>(K) * C * D, 0.0);
  for (const Component& comp : dec.components) {
    const InformationStructure& s = comp.structure;
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < s.signals1(); ++i)
        for (int j = 0; j < s.signals2(); ++j) {
          const int c = comp.signals1[i], d = comp.signals2[j];
          if (c >= C || d >= D) fail("ShapeMismatch", "component signal outside the target shape");
          p[(static_cast<std::size_t>(k) * C + c) * D + d] += comp.weight * s(k, i, j);
        }
  }
  return InformationStructure(like.state_labels(), C, D, std::move(p));
}

bool is_simple(const InformationStructure& u) { return ck_decompose(u).components.size() == 1; }

double dnzs(const InformationStructure& u, const InformationStructure& v) {
  if (u.states() != v.states()) fail("ShapeMismatch", "structures have different state counts");
  const InformationStructure ru = reduce_redundancy(u), rv = reduce_redundancy(v);
  const Decomposition du = ck_decompose(ru), dv = ck_decompose(rv);

  // Half-half disjoint union, so classes are shared across the two inputs.
  const int K = u.states();
  const int C = ru.signals1() + rv.signals1(), D = ru.signals2() + rv.signals2();
  std::vector<double> p(static_cast<std::size_t>(K) * C * D, 0.0);
  for (int k = 0; k < K; ++k) {
    for (int c = 0; c < ru.signals1(); ++c)
      for (int d = 0; d < ru.signals2(); ++d)
        p[(static_cast<std::size_t>(k) * C + c) * D + d] = 0.5 * ru(k, c, d);
    for (int c = 0; c < rv.signals1(); ++c)
      for (int d = 0; d < rv.signals2(); ++d)
        p[(static_cast<std::size_t>(k) * C + ru.signals1() + c) * D + ru.signals2() + d] = 0.5 * rv(k, c, d);
  }
  const SignalPartition part =
      hierarchy_partition(InformationStructure(u.state_labels(), C, D, std::move(p)));

  std::vector<Signature> sig_v;
  for (const Component& comp : dv.components)
    sig_v.push_back(component_signature(comp, part.class1, part.class2, ru.signals1(), ru.signals2()));
  std::vector<char> used(sig_v.size(), 0);
  double total = 0.0;
  for (const Component& comp : du.components) {
    const Signature s = component_signature(comp, part.class1, part.class2, 0, 0);
    bool matched = false;
    for (std::size_t b = 0; b < sig_v.size() && !matched; ++b) {
      if (used[b] || !same_signature(s, sig_v[b])) continue;
      used[b] = 1;
      matched = true;
      total += std::abs(comp.weight - dv.components[b].weight);
    }
    if (!matched) total += comp.weight;
  }
  for (std::size_t b = 0; b < sig_v.size(); ++b)
    if (!used[b]) total += dv.components[b].weight;
  return total;
}

}  // namespace infodist
