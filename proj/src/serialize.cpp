#include "copclust/serialize.hpp"

#include <fstream>
#include <sstream>

#include "copclust/error.hpp"
#include "copclust/io.hpp"

namespace copclust {

using nlohmann::json;

namespace {

std::string_view to_string(Calibration c) {
  return c == Calibration::plugin ? "plugin" : "permutation";
}
std::string_view to_string(SelectionBound b) {
  return b == SelectionBound::degree ? "degree" : "coefficient_count";
}
std::string_view to_string(VarianceMethod v) {
  return v == VarianceMethod::rank_corrected ? "rank_corrected" : "plugin_products";
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const PenaltyConfig& cfg) {
  return {{"alpha_factor", cfg.alpha_factor},
          {"d_max", cfg.d_max},
          {"level", cfg.level},
          {"bound", to_string(cfg.bound)},
          {"variance", to_string(cfg.variance)},
          {"calibration", to_string(cfg.calibration)},
          {"permutation_B", cfg.permutation_B},
          {"seed", cfg.seed}};
}

json to_json(const ClusterSet& cs) {
  json log = json::array();
  for (const auto& e : cs.merge_log) {
    log.push_back({{"step", e.step},
                   {"action", to_string(e.action)},
                   {"subject", e.subject},
                   {"statistic", e.statistic},
                   {"p_value", e.p_value}});
  }
  return {{"labels", cs.labels}, {"clusters", cs.clusters}, {"merge_log", log},
          {"level", cs.level}};
}

ClusterSet cluster_set_from_json(const json& j) {
  ClusterSet cs;
  cs.labels = field<std::vector<std::string>>(j, "labels");
  cs.clusters = field<std::vector<std::vector<std::string>>>(j, "clusters");
  cs.level = field<double>(j, "level");
  for (const auto& e : field<json>(j, "merge_log")) {
    MergeEntry m;
    m.step = field<std::size_t>(e, "step");
    m.action = parse_merge_action(field<std::string>(e, "action"));
    m.subject = field<std::vector<std::string>>(e, "subject");
    m.statistic = field<double>(e, "statistic");
    m.p_value = field<double>(e, "p_value");
    cs.merge_log.push_back(std::move(m));
  }
  return cs;
}

json to_json(const PairTestResult& r, const std::vector<std::string>& labels) {
  json j{{"pair", {labels.at(r.pair.first), labels.at(r.pair.second)}},
         {"n_eff", r.n_eff},
         {"D", r.D_selected},
         {"selected_index", r.selected_index.str()},
         {"sigma2", r.sigma2_hat},
         {"statistic", r.statistic},
         {"p_value", r.p_value},
         {"reject", r.reject},
         {"V", r.V_at_k},
         {"standardized", r.standardized}};
  return j;
}

json to_json(const TuningReport& r) {
  return {{"alpha_hat", r.alpha_hat}, {"converged", r.converged}, {"k_prime", r.k_prime},
          {"n_reps", r.n_reps},       {"part_size", r.part_size}, {"grid", r.grid}};
}

json to_json(const DesignResult& r) {
  json partitions = json::object();
  for (const auto& [key, count] : r.partition_histogram) partitions[key] = count;
  json counts = json::object();
  for (const auto& [c, count] : r.cluster_count_histogram) counts[std::to_string(c)] = count;
  return {{"design", r.name},
          {"replicates", r.replicates},
          {"labels", r.labels},
          {"association", matrix_json(r.association)},
          {"partitions", partitions},
          {"cluster_counts", counts},
          {"seconds", r.seconds}};
}

json to_json(const CopulaSpec& s) {
  json j{{"family", to_string(s.family)}, {"tau", s.tau}, {"dim", s.dim}};
  if (s.family == Family::student) j["student_df"] = s.student_df;
  return j;
}

CopulaSpec copula_spec_from_json(const json& j, int dim) {
  CopulaSpec s;
  s.family = parse_family(field<std::string>(j, "family"));
  s.tau = j.contains("tau") ? field<double>(j, "tau")
                            : (s.family == Family::comonotone ? 1.0 : 0.0);
  s.dim = j.contains("dim") ? field<int>(j, "dim") : dim;
  if (j.contains("student_df")) s.student_df = field<double>(j, "student_df");
  s.validate();
  return s;
}

DesignSpec design_spec_from_json(const json& j) {
  DesignSpec d;
  d.name = j.contains("name") ? field<std::string>(j, "name") : "custom";
  d.n = field<std::size_t>(j, "n");
  d.p = field<int>(j, "p");
  if (j.contains("replicates")) d.replicates = field<std::size_t>(j, "replicates");
  if (j.contains("level")) d.level = field<double>(j, "level");
  if (j.contains("seed")) d.seed = field<std::uint64_t>(j, "seed");
  for (const auto& pj : field<json>(j, "populations")) d.populations.push_back(copula_spec_from_json(pj, d.p));
  d.validate();
  return d;
}

std::string association_csv(const std::vector<std::string>& labels, const Matrix& m) {
  std::ostringstream out;
  out << "label";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < labels.size(); ++j) out << ',' << format_double(m(i, j));
    out << '\n';
  }
  return out.str();
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string dendrogram_dot(const DendrogramNode& root) {
  std::ostringstream out;
  out << "digraph dendrogram {\n";
  out << "  " << quoted(root.name) << ";\n";
  for (const auto& c : root.children) {
    out << "  " << quoted(c.name) << " [shape=box];\n";
    for (const auto& leaf : c.children) out << "  " << quoted(leaf.name) << " [shape=ellipse];\n";
  }
  for (const auto& c : root.children) {
    out << "  " << quoted(root.name) << " -> " << quoted(c.name) << ";\n";
    for (const auto& leaf : c.children) {
      out << "  " << quoted(c.name) << " -> " << quoted(leaf.name) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace copclust
