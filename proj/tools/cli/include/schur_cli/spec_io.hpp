#pragma once

// Metric spec documents:
//   {"n": 5, "L": 3.14, "samples": [...]}
//   {"family": "neck", "n": 5, "eps": 0.05, "r1": 1.0, "r2": 2.0}
//   {"n": 5, "family": {"family": "conformal_zonal", "k": 8, "t": 0.001}}
// each with an optional "nodes" grid size.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schur/metric_families.hpp"

namespace schur::cli {

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct MetricInput {
  FamilySpec family;
  std::optional<std::size_t> nodes;
};

/// Throws SpecError listing every problem found.
MetricInput parse_metric_spec(std::string_view text);
MetricInput load_metric_spec(const std::filesystem::path& path);

/// Power of two in [2^6, 2^16].
bool valid_node_count(std::size_t nodes) noexcept;

}  // namespace schur::cli
