#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "copclust/dataset.hpp"
#include "copclust/ksample_test.hpp"

namespace copclust {

enum class InputFormat { long_csv, wide_dir };
enum class Transform { none, log_return };

/// Options shared by the CLI subcommands.
struct RunConfig {
  double level = 0.05;
  std::optional<double> alpha_factor = 1.0;  // nullopt: calibrate ("auto")
  int d_max = 3;
  Calibration calibration = Calibration::plugin;
  int permutation_B = 500;
  std::uint64_t seed = 0;
  Pairing pairing = Pairing::independent;
  Transform transform = Transform::none;

  void validate() const;
  /// Penalty settings; alpha_factor falls back to 1 when unset.
  PenaltyConfig penalty() const;
};

/// long_csv: header `population,obs_id,var_1,...,var_p`.
/// wide_dir: one CSV per population (label = file stem, sorted by name), header
/// `obs_id,<p value columns>`.
/// Populations keep order of first appearance; rows are ordered by obs_id
/// (numerically when every id is an integer). In paired mode every population
/// must carry the same obs_id set.
Dataset ingest(const std::filesystem::path& path, InputFormat format,
               Pairing pairing = Pairing::independent);
Dataset read_long_csv(std::istream& in, const std::string& source, Pairing pairing);

void write_long_csv(std::ostream& out, const Dataset& dataset);

/// r_t = ln(p_{t+1} / p_t).
std::vector<double> log_returns(std::span<const double> prices);
/// Column-wise log returns of every population (drops the first row).
Dataset apply_log_returns(const Dataset& dataset);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace copclust
