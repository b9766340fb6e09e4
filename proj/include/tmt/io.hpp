#pragma once

#include <string>

#include "json.hpp"
#include "tmt/bubble.hpp"
#include "tmt/feynman.hpp"
#include "tmt/if_maps.hpp"
#include "tmt/laurent.hpp"
#include "tmt/model.hpp"
#include "tmt/sd_solver.hpp"

namespace tmt {

using nlohmann::json;

json to_json(const Bubble& b);
Bubble bubble_from_json(const json& j);

json to_json(const FeynmanGraph& g);
FeynmanGraph feynman_from_json(const json& j);

/// {vertices: [{rotation, cilium}], edges: [{label, ends}]}; the rotation
/// lists half-edges without the cilium, whose slot is given separately.
json to_json(const StrandedMap& m);
StrandedMap map_from_json(const json& j);

json to_json(const NecklaceTreeSpec& spec);
NecklaceTreeSpec tree_from_json(const json& j);

/// Models are either {"preset": name} or {"rank": D, "entries": [...]}, where
/// an entry gives "coupling" plus a "bubble" or a "tree". Tree entries take
/// their omega from the tree unless "omega" is set.
json to_json(const ModelSpec& model);
ModelSpec model_from_json(const json& j);
/// Preset name or path to a JSON model file.
ModelSpec load_model(const std::string& name_or_path);

json to_json(const LaurentPolynomial& p);
/// {monomial: {power of N: coefficient}}.
json to_json(const CouplingSeries& s);
json to_json(const DiskSeries& s);
json to_json(const GammaFit& fit);
json to_json(const CriticalEstimate& c);

json read_json_file(const std::string& path);

/// Graphviz output. Bubble edges carry their color index; 0-edges are
/// dashed; bicolored map edges are drawn doubled.
std::string to_dot(const Bubble& b, const std::string& name = "bubble");
std::string to_dot(const FeynmanGraph& g, const std::string& name = "graph");
std::string to_dot(const StrandedMap& m, const std::string& name = "map");

}  // namespace tmt
