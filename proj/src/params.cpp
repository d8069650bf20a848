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

#include "bpp/params.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "bpp/value.hpp"

namespace bpp {

namespace {

std::uint32_t ceil_u32(double x) { return static_cast<std::uint32_t>(std::ceil(x - 1e-9)); }

std::uint32_t round_up_to_3(std::uint32_t x) { return (x + 2) / 3 * 3; }

ProfileConstants theory_acpd() {
  ProfileConstants c;
  c.name = "theory-acpd";
  c.xi = 32;
  c.xi1 = 256;
  c.xi2 = 4;
  c.c_f = 256;
  c.c_sigma1 = 12;
  c.c_sigma2 = 8 * c.c_sigma1;
  c.c_psi = 64 * c.c_sigma1;
  c.gamma = static_cast<std::uint32_t>(c.xi1 * c.xi2);
  // Enough cycles for the tally gap to grow from 1 to n.
  c.c_pl = (c.gamma + 2) / std::log(7.0 / 6.0);
  // Drift window of phases_limit phases at D = 6 zeta.
  c.drift_c = 108.0 * c.c_pl * c.c_pl;
  return c;
}

ProfileConstants theory_scfd() {
  ProfileConstants c;
  c.name = "theory-scfd";
  c.xi = 64;
  c.xi1 = 512;
  c.xi2 = 8;
  c.c_f = 512;
  c.c_sigma1 = 12;
  c.c_sigma2 = 8 * c.c_sigma1;
  c.c_psi = 128 * c.c_sigma1;
  c.gamma = 1;
  c.c_pl = 3.0 / std::log(1.5);
  c.drift_c = 108.0 * c.c_pl * c.c_pl;
  return c;
}

ProfileConstants desk() {
  ProfileConstants c;
  c.name = "desk";
  c.gamma = 3;
  c.c_sigma1 = 0.1;
  c.c_sigma2 = 0.85;
  c.c_psi = 1.0;
  c.c_pl = 10;
  c.drift_c = 1.0 / 7.0;  // zeta = 1.31 ln^2 n
  c.min_phase_length = 24;
  c.c_f = 64;
  c.bias_c = 21;
  return c;
}

}  // namespace

void ProtocolParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid parameters: " + what); };
  if (n < 2) fail(fmt::format("n = {} (need n >= 2)", n));
  if (phase_length == 0 || phase_length % 3 != 0)
    fail(fmt::format("D = {} is not a positive multiple of 3", phase_length));
  if (!(sigma1 < sigma2)) fail(fmt::format("sigma1 = {} must be below sigma2 = {}", sigma1, sigma2));
  if (sigma2 > psi) fail(fmt::format("sigma2 = {} exceeds psi = {}", sigma2, psi));
  if (psi > phase_length / 3)
    fail(fmt::format("psi = {} does not fit in a subphase of {} ticks", psi, phase_length / 3));
  if (gamma < 1) fail("gamma must be at least 1");
  if (phases_limit < gamma + 2)
    fail(fmt::format("phases_limit = {} is below gamma + 2 = {}", phases_limit, gamma + 2));
  if (phases_limit > 65000) fail(fmt::format("phases_limit = {} is too large", phases_limit));
  if (!(bias_c > 0)) fail("bias_c must be positive");
  if (!(c_f > 0)) fail("c_f must be positive");
}

std::vector<std::string> profile_names() { return {"theory-acpd", "theory-scfd", "desk"}; }

ProfileConstants profile_constants(std::string_view name) {
  if (name == "theory-acpd") return theory_acpd();
  if (name == "theory-scfd") return theory_scfd();
  if (name == "desk") return desk();
  throw ConfigError(fmt::format("unknown profile '{}'", name));
}

std::uint32_t coin_rounds_for(std::uint32_t n, double bias_c) {
  if (n < 2 || !(bias_c > 0)) throw ConfigError("coin rounds need n >= 2 and bias_c > 0");
  const double ln = std::log(static_cast<double>(n));
  const double l = std::log2(std::sqrt(static_cast<double>(n) * ln / (bias_c * bias_c)));
  return l <= 0 ? 0 : ceil_u32(l);
}

ProtocolParams make_params(const ProfileConstants& c, std::uint32_t n) {
  if (n < 2) throw ConfigError(fmt::format("population size {} is below 2", n));
  const double ln = std::log(static_cast<double>(n));
  ProtocolParams p;
  p.n = n;
  p.drift_c = c.drift_c;
  p.zeta = std::sqrt(12.0 * c.drift_c) * ln * ln;
  p.gamma = c.gamma;
  p.psi = std::max<std::uint32_t>(1, ceil_u32(c.c_psi * ln));
  p.sigma1 = ceil_u32(c.c_sigma1 * ln);
  p.sigma2 = ceil_u32(c.c_sigma2 * ln);
  // tiny n: keep sigma1 < sigma2 <= psi
  p.sigma2 = std::max(p.sigma2, p.sigma1 + 1);
  p.psi = std::max(p.psi, p.sigma2);
  const std::uint32_t from_zeta = 6 * ceil_u32(p.zeta);
  p.phase_length = round_up_to_3(std::max({from_zeta, c.min_phase_length, 3 * p.psi}));
  p.phases_limit = std::max(ceil_u32(c.c_pl * ln), c.gamma + 2);
  p.c_f = c.c_f;
  p.bias_c = c.bias_c;
  p.z0_probe_length = std::max<std::uint32_t>(1, ceil_u32(ln * ln * ln));
  p.z0_threshold = ceil_u32(c.bias_c * ln);
  p.coin_rounds = coin_rounds_for(n, c.bias_c);
  p.profile_name = c.name;
  p.constants = c;
  p.validate();
  return p;
}

ProtocolParams make_params(std::string_view profile, std::uint32_t n) {
  return make_params(profile_constants(profile), n);
}

}  // namespace bpp
