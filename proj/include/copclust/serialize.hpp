#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "copclust/clustering.hpp"
#include "copclust/ksample_test.hpp"
#include "copclust/simharness.hpp"
#include "copclust/tuning.hpp"

namespace copclust {

nlohmann::json to_json(const PenaltyConfig& cfg);
nlohmann::json to_json(const ClusterSet& cs);
ClusterSet cluster_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PairTestResult& r, const std::vector<std::string>& labels);
nlohmann::json to_json(const TuningReport& r);
nlohmann::json to_json(const DesignResult& r);
nlohmann::json to_json(const CopulaSpec& s);
CopulaSpec copula_spec_from_json(const nlohmann::json& j, int dim);
DesignSpec design_spec_from_json(const nlohmann::json& j);

/// "label,A,B\nA,100,40\nB,40,100\n".
std::string association_csv(const std::vector<std::string>& labels, const Matrix& m);

/// Graphviz rendering of a two-level dendrogram; nodes in tree order.
std::string dendrogram_dot(const DendrogramNode& root);

/// Writes text to path; throws InputError naming the path when it cannot.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace copclust
