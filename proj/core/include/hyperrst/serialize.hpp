#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hyperrst/experiments.hpp"
#include "hyperrst/forest.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/sampler.hpp"

namespace hyperrst {

/// Malformed or inconsistent configuration / input document.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Clouds: {d, lambda, R, seed, points: [{r, u: [...]}, ...]}.
std::string cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const std::string& text);
/// Header "r,u0,...,ud", one point per row.
std::string cloud_to_csv(const PointCloud& cloud);

// Trees: {cloud_ref, parent: [...]} with -1 for the root.
std::string tree_to_json(const RadialTree& tree, const std::string& cloud_ref);
std::vector<NodeId> tree_parents_from_json(const std::string& text);
/// Header "child,parent,r_child,r_parent", one edge per row.
std::string tree_edges_csv(const RadialTree& tree);

/// Rows (r0, r_prime, crossing_id, cfd, mbd); crossing_id is the carrier edge's child.
std::string deviations_to_csv(const std::vector<DeviationRecord>& records);

// Half-space forests: {points: [{x: [...], y}], parent: [...]} with -1 for frontier points.
std::string forest_to_json(const HalfForest& forest);

/// Flat object with the keys of ExperimentConfig; unknown keys and wrong
/// types raise ConfigError. Missing keys keep their defaults.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

std::string report_to_json(const StatReport& report);
/// One row per cell: coordinates, mean, se, extras.
std::string report_to_csv(const StatReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hyperrst
