// Copyright 2026 The bpp Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bpp {

/// Real-valued constants a profile is built from. Integer thresholds are
/// derived by make_params(); the xi constants only document where the
/// sampling thresholds come from and feed validation reports.
struct ProfileConstants {
  std::string name;
  double drift_c = 1.0;      // free constant of the counter-drift bound
  double c_sigma1 = 12.0;
  double c_sigma2 = 96.0;
  double c_psi = 768.0;
  double c_pl = 10.0;        // phases_limit = ceil(c_pl * ln n)
  double c_f = 256.0;        // tolerated faults: f <= n / c_f
  double bias_c = 1.0;       // Z0 threshold and biased-coin constant
  std::uint32_t gamma = 1;   // cancellation phases per ACPD cycle
  std::uint32_t min_phase_length = 0;
  double xi = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
};

/// Every tunable of a run, fully resolved for one population size.
struct ProtocolParams {
  std::uint32_t n = 0;
  double drift_c = 0.0;
  double zeta = 0.0;                 // sqrt(12 drift_c) ln^2 n
  std::uint32_t phase_length = 0;    // D, a positive multiple of 3
  std::uint32_t gamma = 1;
  std::uint32_t psi = 0;
  std::uint32_t sigma1 = 0;
  std::uint32_t sigma2 = 0;
  std::uint32_t phases_limit = 0;
  double c_f = 0.0;
  double bias_c = 1.0;
  std::uint32_t z0_probe_length = 0; // ceil(ln^3 n)
  std::uint32_t z0_threshold = 0;    // ceil(bias_c ln n)
  std::uint32_t coin_rounds = 0;     // L of the biased coin
  std::string profile_name;
  ProfileConstants constants;

  std::uint32_t subphase_length() const noexcept { return phase_length / 3; }

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Names of the shipped profiles: "theory-acpd", "theory-scfd", "desk".
std::vector<std::string> profile_names();

/// Throws ConfigError for an unknown name.
ProfileConstants profile_constants(std::string_view name);

/// Resolves a profile for population size n (n >= 2).
ProtocolParams make_params(const ProfileConstants& constants, std::uint32_t n);
ProtocolParams make_params(std::string_view profile, std::uint32_t n);

/// Number of fair-coin rounds L = ceil(log2(sqrt((1/c)^2 n ln n))), clamped at 0.
std::uint32_t coin_rounds_for(std::uint32_t n, double bias_c);

}  // namespace bpp
