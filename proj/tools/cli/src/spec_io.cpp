#include "schur_cli/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace schur::cli {

namespace {

using nlohmann::json;

std::string join_lines(const std::vector<std::string>& issues) {
  std::string out;
  for (const auto& s : issues) {
    if (!out.empty()) out += '\n';
    out += s;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  std::optional<int> integer(const json& obj, const char* key, bool required) {
    seen_.insert(key);
    if (!obj.contains(key)) {
      if (required) issues_.push_back(std::string("missing field \"") + key + "\"");
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      issues_.push_back(std::string("field \"") + key + "\" must be an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  std::optional<double> number(const json& obj, const char* key, bool required) {
    seen_.insert(key);
    if (!obj.contains(key)) {
      if (required) issues_.push_back(std::string("missing field \"") + key + "\"");
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      issues_.push_back(std::string("field \"") + key + "\" must be a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::string> text(const json& obj, const char* key) {
    seen_.insert(key);
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_string()) {
      issues_.push_back(std::string("field \"") + key + "\" must be a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const json& obj, const char* key) {
    seen_.insert(key);
    if (!obj.contains(key)) {
      issues_.push_back(std::string("missing field \"") + key + "\"");
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_array()) {
      issues_.push_back(std::string("field \"") + key + "\" must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        issues_.push_back(std::string("\"") + key + "\"[" + std::to_string(i) + "] is not a finite number");
        return std::nullopt;
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void mark(const char* key) { seen_.insert(key); }

  void reject_unknown(const json& obj, const char* where) {
    for (const auto& [k, v] : obj.items()) {
      if (!seen_.count(k)) issues_.push_back(std::string("unknown field \"") + k + "\" in " + where);
    }
  }

 private:
  std::vector<std::string>& issues_;
  std::set<std::string> seen_;
};

std::optional<FamilySpec> family_from(const json& obj, std::optional<int> outer_n,
                                      std::vector<std::string>& issues, const char* where) {
  Reader r(issues);
  const auto name = r.text(obj, "family");
  r.mark("nodes");
  if (!name) {
    issues.push_back(std::string("missing string field \"family\" in ") + where);
    return std::nullopt;
  }
  auto n = r.integer(obj, "n", !outer_n);
  if (!n) n = outer_n;
  if (n && outer_n && *n != *outer_n) issues.push_back("inner and outer \"n\" disagree");
  if (n && *n < 3) issues.push_back("\"n\" must be >= 3");

  std::optional<FamilySpec> out;
  if (*name == "round") {
    RoundSpec s;
    s.radius = r.number(obj, "radius", false).value_or(1.0);
    if (!(s.radius > 0.0)) issues.push_back("\"radius\" must be positive");
    if (n) s.n = *n;
    out = s;
  } else if (*name == "conformal_zonal") {
    ConformalSpec s;
    const auto k = r.integer(obj, "k", true);
    const auto t = r.number(obj, "t", true);
    if (k && *k < 1) issues.push_back("\"k\" must be >= 1");
    if (n) s.n = *n;
    if (k) s.k = *k;
    if (t) s.t = *t;
    out = s;
  } else if (*name == "neck") {
    NeckSpec s;
    if (n) s.n = *n;
    s.eps = r.number(obj, "eps", true).value_or(s.eps);
    s.r1 = r.number(obj, "r1", false).value_or(s.r1);
    s.r2 = r.number(obj, "r2", false).value_or(s.r2);
    s.blend_width = r.number(obj, "blend_width", false).value_or(0.0);
    if (const auto blend = r.text(obj, "blend")) {
      if (*blend == "smooth") {
        s.blend = BlendKind::smooth;
      } else if (*blend == "quintic") {
        s.blend = BlendKind::quintic;
      } else {
        issues.push_back("\"blend\" must be \"smooth\" or \"quintic\"");
      }
    }
    out = s;
  } else if (*name == "samples") {
    SamplesSpec s;
    if (n) s.n = *n;
    const auto L = r.number(obj, "L", true);
    auto phi = obj.contains("phi") ? r.numbers(obj, "phi") : r.numbers(obj, "samples");
    r.mark("phi");
    r.mark("samples");
    if (L) s.length = *L;
    if (phi) s.phi = std::move(*phi);
    out = s;
  } else {
    issues.push_back("unknown family \"" + *name + "\" (round, conformal_zonal, neck, samples)");
    return std::nullopt;
  }
  r.reject_unknown(obj, where);
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

SpecError::SpecError(std::vector<std::string> issues)
    : std::runtime_error(join_lines(issues)), issues_(std::move(issues)) {}

bool valid_node_count(std::size_t nodes) noexcept {
  return nodes >= 64 && nodes <= 65536 && (nodes & (nodes - 1)) == 0;
}

MetricInput parse_metric_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecError({"line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON: " + e.what()});
  }
  if (!doc.is_object()) throw SpecError({"top level must be a JSON object"});

  std::vector<std::string> issues;
  MetricInput input;
  if (doc.contains("nodes")) {
    const auto& v = doc.at("nodes");
    if (!v.is_number_integer() || v.get<long long>() <= 0 ||
        !valid_node_count(static_cast<std::size_t>(v.get<long long>()))) {
      issues.push_back("\"nodes\" must be a power of two between 64 and 65536");
    } else {
      input.nodes = static_cast<std::size_t>(v.get<long long>());
    }
  }

  std::optional<FamilySpec> family;
  if (doc.contains("family") && doc.at("family").is_object()) {
    Reader outer(issues);
    const auto n = outer.integer(doc, "n", true);
    outer.mark("family");
    outer.mark("nodes");
    outer.reject_unknown(doc, "the top-level object");
    if (n) family = family_from(doc.at("family"), n, issues, "\"family\"");
  } else if (doc.contains("family")) {
    family = family_from(doc, std::nullopt, issues, "the top-level object");
  } else if (doc.contains("samples")) {
    json copy = doc;
    copy["family"] = "samples";
    family = family_from(copy, std::nullopt, issues, "the top-level object");
  } else {
    issues.push_back("expected a \"family\" field or an \"n\", \"L\", \"samples\" profile");
  }

  if (family) {
    if (const auto* s = std::get_if<SamplesSpec>(&*family); s && input.nodes && !s->phi.empty() &&
                                                           s->phi.size() != *input.nodes + 1) {
      issues.push_back("\"nodes\" = " + std::to_string(*input.nodes) + " but " +
                       std::to_string(s->phi.size()) + " samples were given (expected nodes + 1)");
    }
  }
  if (!issues.empty()) throw SpecError(std::move(issues));
  input.family = std::move(*family);
  return input;
}

MetricInput load_metric_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError({"cannot read spec file " + path.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_metric_spec(ss.str());
}

}  // namespace schur::cli
