#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schur::cli {

enum class Command { audit, identities, sweep_harmonic, sweep_neck, variation };
enum class Format { json, csv };

/// A candidate constant: a number, p/q, "sharp" (n^2/(n-2)^2) or "sharp-x".
struct ConstantSpec {
  bool relative_to_sharp = false;
  double value = 0.0;  // absolute value, or offset added to the sharp constant

  double resolve(int n) const;
  std::string label() const;
};

struct RunConfig {
  Command command = Command::audit;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  Format format = Format::json;
  std::optional<std::size_t> nodes;  // --nodes
  std::vector<int> dims;
  std::optional<std::pair<int, int>> k_range;
  std::vector<double> eps;
  std::vector<ConstantSpec> constants;
  std::vector<double> ts;
  double fd_step = 1e-3;
  double tolerance = 1e-6;  // identities
  int jobs = 1;
};

/// Raised for bad flags or environment; the message is shown to the user.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_k_range(const std::string& text);
std::vector<double> parse_number_list(const std::string& text, const char* what);
std::vector<int> parse_int_list(const std::string& text, const char* what);
ConstantSpec parse_constant(const std::string& text);

/// Grid size from --nodes, then the spec's "nodes", then SCHUR_GAP_NODES, then 4096.
std::size_t resolve_nodes(const RunConfig& config, std::optional<std::size_t> from_spec);

/// Exit codes: 0 success, 1 input or usage error, 2 a check failed
/// (theorem violated under its hypothesis, identity over tolerance, or FD mismatch).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; never throws.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace schur::cli
