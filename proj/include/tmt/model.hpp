#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmt/bubble.hpp"
#include "tmt/necklaces.hpp"

namespace tmt {

/// One interaction of a model: the measure carries exp(-N^omega * t * B).
struct ModelEntry {
  Bubble bubble;
  std::string coupling;
  int omega = 3;
  /// Present when the bubble is a tree of necklaces of color type 12 and
  /// `bubble` is exactly its realization.
  std::optional<NecklaceTreeSpec> tree;
};

struct ModelSpec {
  int rank = 4;
  std::vector<ModelEntry> entries;

  int alpha() const { return rank - 1; }
  std::vector<std::string> symbols() const;
  /// Throws on duplicate couplings or on bubbles that are invalid for the rank.
  void check() const;

  /// Quartic model with every interaction at N^3.
  static ModelSpec standard_quartic();
  /// Melons at N^3, the three necklaces at N^4.
  static ModelSpec full_quartic();
  /// Melons at N^3, only the 12 necklace at N^4. Entry order: melons 1..4, necklace 12.
  static ModelSpec restricted_quartic();
  /// Measure over trees of necklaces weighted by N^omega(L).
  static ModelSpec trees_of_necklaces(const std::vector<std::pair<std::string, NecklaceTreeSpec>>& trees);
  /// Preset by name: "standard", "full", "restricted".
  static ModelSpec preset(const std::string& name);
};

}  // namespace tmt
