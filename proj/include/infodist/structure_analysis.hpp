#pragma once

#include <string>
#include <vector>

#include "infodist/prob_core.hpp"

namespace infodist {

inline constexpr int kNullClass = -1;

// Per-player signal -> class id. Signals of mass below kZeroTol sit in
// kNullClass; other ids are dense and numbered by first appearance.
struct SignalPartition {
  std::vector<int> class1;
  std::vector<int> class2;
  int classes1 = 0;
  int classes2 = 0;
  int level = 0;  // refinement rounds until the fixpoint
};

SignalPartition hierarchy_partition(const InformationStructure& u);

// Same refinement in exact rational arithmetic. probs are "p/q" or integer
// strings, laid out like InformationStructure::probs(), and must sum to 1.
SignalPartition hierarchy_partition_exact(int states, int signals1, int signals2,
                                          const std::vector<std::string>& probs);

bool is_non_redundant(const InformationStructure& u);

InformationStructure reduce_redundancy(const InformationStructure& u);

struct Component {
  double weight = 0.0;
  InformationStructure structure;
  std::vector<int> signals1;  // original index of each component signal
  std::vector<int> signals2;
};

struct Decomposition {
  std::vector<Component> components;
  bool reduced = false;  // input was redundant and got reduced first
};

Decomposition ck_decompose(const InformationStructure& u);

// Inverse of ck_decompose on the (possibly reduced) structure it split.
InformationStructure recompose(const Decomposition& dec, const InformationStructure& like);

bool is_simple(const InformationStructure& u);

double dnzs(const InformationStructure& u, const InformationStructure& v);

}  // namespace infodist
