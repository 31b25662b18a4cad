#include "twrn/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "twrn/errors.hpp"

namespace twrn {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid config: field '") + field + "' " + what);
}

}  // namespace

void NetworkConfig::validate() const {
  require(std::isfinite(p1) && p1 > 0, "p1", "must be > 0");
  require(std::isfinite(p2) && p2 > 0, "p2", "must be > 0");
  require(std::isfinite(pr) && pr > 0, "pr", "must be > 0");
  require(std::isfinite(noise_power) && noise_power > 0, "noise_power", "must be > 0");
  require(std::isfinite(k) && k > 0 && k < 1, "k", "must lie in the open interval (0,1)");
  require(std::isfinite(alpha) && alpha >= 0, "alpha", "must be >= 0");
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0, "bandwidth_hz", "must be > 0");
  require(codeword_bits >= 1, "codeword_bits", "must be >= 1");
}

DerivedParams derive_params(const NetworkConfig& cfg) {
  cfg.validate();
  DerivedParams d;
  d.sigma1_sq = std::pow(cfg.k, -cfg.alpha);
  d.sigma2_sq = std::pow(1.0 - cfg.k, -cfg.alpha);
  d.beta = std::sqrt(cfg.pr / (cfg.p1 * d.sigma1_sq + cfg.p2 * d.sigma2_sq + cfg.noise_power));
  d.snr1 = cfg.p1 / cfg.noise_power;
  d.snr2 = cfg.p2 / cfg.noise_power;
  d.snr_r = cfg.pr / cfg.noise_power;
  return d;
}

NetworkConfig default_config(double snr_db) {
  NetworkConfig cfg;
  cfg.noise_power = 1e-10;
  cfg.k = 0.5;
  cfg.alpha = 3.12;
  cfg.bandwidth_hz = 1e6;
  cfg.codeword_bits = 1000;
  cfg.seed = 42;
  return with_snr_db(cfg, snr_db);
}

NetworkConfig with_snr_db(const NetworkConfig& cfg, double snr_db) {
  NetworkConfig out = cfg;
  const double p = std::pow(10.0, snr_db / 10.0) * cfg.noise_power;
  out.p1 = out.p2 = out.pr = p;
  return out;
}

namespace {

NetworkConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("invalid config: document must be a JSON object");

  static const char* kKeys[] = {"p1", "p2", "pr", "noise_power", "k", "alpha",
                                "bandwidth_hz", "codeword_bits", "seed"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : kKeys) known = known || item.key() == key;
    if (!known) throw ConfigError("invalid config: unknown key '" + item.key() + "'");
  }

  NetworkConfig cfg;
  auto number = [&](const char* key) -> double {
    if (!j.contains(key))
      throw ConfigError(std::string("invalid config: missing key '") + key + "'");
    if (!j.at(key).is_number())
      throw ConfigError(std::string("invalid config: field '") + key + "' must be a number");
    return j.at(key).get<double>();
  };
  auto unsigned_int = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key))
      throw ConfigError(std::string("invalid config: missing key '") + key + "'");
    if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
      throw ConfigError(std::string("invalid config: field '") + key +
                        "' must be a non-negative integer");
    const auto v = j.at(key).get<std::int64_t>();
    if (v < 0)
      throw ConfigError(std::string("invalid config: field '") + key +
                        "' must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
  };

  cfg.p1 = number("p1");
  cfg.p2 = number("p2");
  cfg.pr = number("pr");
  cfg.noise_power = number("noise_power");
  cfg.k = number("k");
  cfg.alpha = number("alpha");
  cfg.bandwidth_hz = number("bandwidth_hz");
  cfg.codeword_bits = unsigned_int("codeword_bits");
  cfg.seed = unsigned_int("seed");
  cfg.validate();
  return cfg;
}

}  // namespace

NetworkConfig load_config_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return config_from_json(j);
}

NetworkConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("invalid config: cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config_json(buf.str());
}

std::string config_to_json(const NetworkConfig& cfg) {
  nlohmann::json j;
  j["p1"] = cfg.p1;
  j["p2"] = cfg.p2;
  j["pr"] = cfg.pr;
  j["noise_power"] = cfg.noise_power;
  j["k"] = cfg.k;
  j["alpha"] = cfg.alpha;
  j["bandwidth_hz"] = cfg.bandwidth_hz;
  j["codeword_bits"] = cfg.codeword_bits;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

}  // namespace twrn
