#include "tmt/model.hpp"

#include <set>
#include <stdexcept>

namespace tmt {

std::vector<std::string> ModelSpec::symbols() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.coupling);
  return out;
}

void ModelSpec::check() const {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.coupling).second) throw std::invalid_argument("duplicate coupling symbol " + e.coupling);
    if (e.bubble.rank() != rank) throw std::invalid_argument("model entry rank mismatch for " + e.coupling);
    auto report = validate_bubble(e.bubble);
    if (!report.valid) throw std::invalid_argument("model entry " + e.coupling + ": " + report.summary());
    if (e.tree && !(realize_tree_of_necklaces(*e.tree) == e.bubble))
      throw std::invalid_argument("model entry " + e.coupling + ": bubble differs from its tree realization");
  }
}

namespace {

ModelEntry melon_entry(int color) {
  return {quartic_melon(color), "l" + std::to_string(color), 3, chain_tree({1, 1}, color)};
}

}  // namespace

ModelSpec ModelSpec::standard_quartic() {
  ModelSpec m;
  for (int c = 1; c <= 4; ++c) m.entries.push_back(melon_entry(c));
  m.entries.push_back({build_necklace(2, 2), "l12", 3, chain_tree({2}, 1)});
  m.entries.push_back({build_necklace(3, 2), "l13", 3, std::nullopt});
  m.entries.push_back({build_necklace(4, 2), "l14", 3, std::nullopt});
  return m;
}

ModelSpec ModelSpec::full_quartic() {
  ModelSpec m = standard_quartic();
  for (std::size_t k = 4; k < m.entries.size(); ++k) m.entries[k].omega = 4;
  return m;
}

ModelSpec ModelSpec::restricted_quartic() {
  ModelSpec m = full_quartic();
  m.entries.resize(5);
  return m;
}

ModelSpec ModelSpec::trees_of_necklaces(const std::vector<std::pair<std::string, NecklaceTreeSpec>>& trees) {
  ModelSpec m;
  for (const auto& [name, spec] : trees) m.entries.push_back({realize_tree_of_necklaces(spec), name, spec.omega(), spec});
  m.check();
  return m;
}

ModelSpec ModelSpec::preset(const std::string& name) {
  if (name == "standard") return standard_quartic();
  if (name == "full") return full_quartic();
  if (name == "restricted") return restricted_quartic();
  throw std::invalid_argument("unknown model preset '" + name + "'");
}

}  // namespace tmt
