#include "beamtrain/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "beamtrain/random.hpp"

namespace beamtrain {

namespace {

using Json = nlohmann::json;

constexpr std::uint64_t kPhiStream = 0x70686921;  // "phi!"

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const Json& doc) : doc_(doc) {}

  std::vector<std::string>& violations() { return violations_; }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  void fail(const std::string& path, const std::string& message) {
    violations_.push_back(path + ": " + message);
  }

  std::optional<std::uint64_t> unsigned_at(const Json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      fail(path, "must be non-negative");
      return std::nullopt;
    }
    fail(path, "expected a non-negative integer, got " + std::string(v.type_name()));
    return std::nullopt;
  }

  std::optional<double> number_at(const Json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number, got " + std::string(v.type_name()));
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  const Json* array_at(const std::string& key) {
    const Json* v = find(key);
    if (v == nullptr) return nullptr;
    if (!v->is_array()) {
      fail(key, "expected a list, got " + std::string(v->type_name()));
      return nullptr;
    }
    if (v->empty()) {
      fail(key, "list must not be empty");
      return nullptr;
    }
    return v;
  }

  void report_unknown_keys() {
    for (const auto& [key, value] : doc_.items())
      if (!seen_.contains(key)) fail(key, "unknown key");
  }

 private:
  const Json& doc_;
  std::set<std::string> seen_;
  std::vector<std::string> violations_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration: " + join(violations)),
      violations_(std::move(violations)) {}

double ExperimentConfig::resolved_phi() const {
  if (phi) return *phi;
  RandomStream rng(derive_seed(phi_seed.value_or(master_seed), kPhiStream));
  return rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
}

ExperimentConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("document: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"document: expected a key-value object"});

  ExperimentConfig cfg;
  Reader r(doc);

  if (const Json* v = r.find("l_beams")) {
    if (auto n = r.unsigned_at(*v, "l_beams")) {
      if (*n < 2)
        r.fail("l_beams", "must be at least 2");
      else
        cfg.l_beams = static_cast<std::size_t>(*n);
    }
  }

  if (const Json* v = r.find("phi")) {
    if (v->is_string()) {
      if (v->get<std::string>() == "random")
        cfg.phi.reset();
      else
        r.fail("phi", "expected a number or \"random\"");
    } else if (auto d = r.number_at(*v, "phi")) {
      if (std::abs(*d) > std::numbers::pi / 2)
        r.fail("phi", "must lie in [-pi/2, pi/2]");
      else
        cfg.phi = *d;
    }
  }

  if (const Json* v = r.find("phi_seed")) {
    if (auto n = r.unsigned_at(*v, "phi_seed")) cfg.phi_seed = *n;
  }

  if (const Json* v = r.find("alpha")) {
    if (v->is_array()) {
      if (v->size() != 2) {
        r.fail("alpha", "complex value must be [re, im]");
      } else {
        const auto re = r.number_at((*v)[0], "alpha[0]");
        const auto im = r.number_at((*v)[1], "alpha[1]");
        if (re && im) cfg.alpha = {*re, *im};
      }
    } else if (auto d = r.number_at(*v, "alpha")) {
      cfg.alpha = {*d, 0.0};
    }
  }

  if (const Json* v = r.array_at("snr_db")) {
    std::vector<double> values;
    for (std::size_t i = 0; i < v->size(); ++i)
      if (auto d = r.number_at((*v)[i], "snr_db[" + std::to_string(i) + "]")) values.push_back(*d);
    if (values.size() == v->size()) cfg.snr_db = std::move(values);
  }

  if (const Json* v = r.array_at("budget")) {
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < v->size(); ++i)
      if (auto n = r.unsigned_at((*v)[i], "budget[" + std::to_string(i) + "]")) values.push_back(*n);
    if (values.size() == v->size()) cfg.budget = std::move(values);
  }

  if (const Json* v = r.array_at("algorithms")) {
    std::vector<Algorithm> values;
    std::vector<std::string> unknown;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const Json& item = (*v)[i];
      const std::string path = "algorithms[" + std::to_string(i) + "]";
      if (!item.is_string()) {
        r.fail(path, "expected a string, got " + std::string(item.type_name()));
        continue;
      }
      const auto name = item.get<std::string>();
      if (const auto a = parse_algorithm(name))
        values.push_back(*a);
      else
        unknown.push_back(name);
    }
    for (const auto& name : unknown)
      r.fail("algorithms", "unsupported algorithm '" + name + "' (expected exhaustive or adaptive)");
    if (values.empty() && unknown.size() == v->size())
      r.fail("algorithms", "no supported algorithm selected");
    if (!values.empty()) cfg.algorithms = std::move(values);
  }

  if (const Json* v = r.find("trials")) {
    if (auto n = r.unsigned_at(*v, "trials")) {
      if (*n == 0)
        r.fail("trials", "must be at least 1");
      else
        cfg.trials = *n;
    }
  } else {
    r.fail("trials", "required key is missing");
  }

  if (const Json* v = r.find("master_seed")) {
    if (auto n = r.unsigned_at(*v, "master_seed")) cfg.master_seed = *n;
  } else {
    r.fail("master_seed", "required key is missing");
  }

  if (const Json* v = r.find("output_path")) {
    if (v->is_string() && !v->get<std::string>().empty())
      cfg.output_path = v->get<std::string>();
    else
      r.fail("output_path", "expected a non-empty string");
  }

  if (const Json* v = r.find("workers")) {
    if (auto n = r.unsigned_at(*v, "workers")) cfg.workers = static_cast<std::size_t>(*n);
  }

  for (std::size_t i = 0; i < cfg.budget.size(); ++i)
    if (cfg.budget[i] < cfg.l_beams)
      r.fail("budget[" + std::to_string(i) + "]",
             "must be at least l_beams (" + std::to_string(cfg.l_beams) + ")");

  r.report_unknown_keys();
  if (!r.violations().empty()) throw ConfigError(std::move(r.violations()));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open configuration file"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace beamtrain
