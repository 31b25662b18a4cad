#pragma once

#include <cstdint>
#include <string>

namespace twrn {

/// All physical parameters of the two-way relay network.
///
/// The T1-T2 channel variance is normalized to 1, so the per-link mean power
/// gains are pure functions of the relay position k and the path-loss
/// exponent alpha.
struct NetworkConfig {
  double p1 = 0;             ///< transmit power of T1, watts
  double p2 = 0;             ///< transmit power of T2, watts
  double pr = 0;             ///< transmit power of the relay, watts
  double noise_power = 0;    ///< receiver noise power sigma_n^2, watts
  double k = 0.5;            ///< normalized relay position in (0,1)
  double alpha = 0;          ///< path-loss exponent, >= 0
  double bandwidth_hz = 0;   ///< channel bandwidth B, hertz
  std::uint64_t codeword_bits = 0;  ///< codeword length L, bits
  std::uint64_t seed = 0;           ///< master RNG seed

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Quantities derived from a NetworkConfig.
struct DerivedParams {
  double sigma1_sq = 0;  ///< mean power gain of the T1-relay link, k^(-alpha)
  double sigma2_sq = 0;  ///< mean power gain of the T2-relay link, (1-k)^(-alpha)
  double beta = 0;       ///< AF amplification factor
  double snr1 = 0;       ///< P1 / sigma_n^2
  double snr2 = 0;       ///< P2 / sigma_n^2
  double snr_r = 0;      ///< Pr / sigma_n^2
};

/// Validates cfg and computes the derived quantities. Pure.
DerivedParams derive_params(const NetworkConfig& cfg);

/// Reference configuration: mid-point relay (k = 0.5), alpha = 3.12,
/// noise 1e-10 W, B = 1 MHz, L = 1000 bits, seed 42, with all three transmit
/// powers set from the given SNR as P = 10^(snr_db/10) * noise_power.
NetworkConfig default_config(double snr_db);

/// Copy of cfg with p1 = p2 = pr = 10^(snr_db/10) * noise_power.
NetworkConfig with_snr_db(const NetworkConfig& cfg, double snr_db);

/// Strict JSON ingestion: exactly the NetworkConfig field names in
/// snake_case; unknown or missing keys are rejected with a ConfigError that
/// names the key. The parsed config is validated before being returned.
NetworkConfig load_config_json(const std::string& json_text);
NetworkConfig load_config_file(const std::string& path);

/// Serializes cfg with the same field names load_config_json accepts.
std::string config_to_json(const NetworkConfig& cfg);

}  // namespace twrn
