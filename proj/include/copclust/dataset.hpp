#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copclust/matrix.hpp"

namespace copclust {

enum class Pairing { independent, paired };

struct Population {
  std::string label;
  Matrix data;                             // n x p
  std::vector<std::string> obs_ids;        // empty or size n
  std::optional<std::string> paired_group; // same group => row-aligned individuals

  std::size_t size() const { return data.rows(); }
  std::size_t dim() const { return data.cols(); }
};

struct Dataset {
  std::vector<Population> populations;

  std::size_t size() const { return populations.size(); }
  std::size_t dim() const { return populations.empty() ? 0 : populations.front().dim(); }
  std::vector<std::string> labels() const;
  /// Index of a label; throws InputError when absent.
  std::size_t index_of(const std::string& label) const;
  /// Pairing used when comparing populations a and b.
  Pairing pairing(std::size_t a, std::size_t b) const;
  /// Checks shared dimension, n >= 2, equal sizes inside paired groups.
  void validate() const;
};

}  // namespace copclust
