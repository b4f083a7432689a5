// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavenep/types.hpp"

namespace wavenep {

/// Axis-aligned rectangle [x0,x1] x [z0,z1] with constant wavenumber kappa.
struct Region {
  double x0, x1, z0, z1;
  double kappa;
};

/// Piecewise-constant wavenumber geometry of a z-periodic waveguide strip.
/// kappa = kappa_minus for x < x_minus and kappa_plus for x > x_plus; the
/// interior [x_minus, x_plus] x [0,1) is tiled by the regions. The z-period is
/// fixed to 1.
struct WaveguideGeometry {
  double omega{0.0};  // temporal frequency, stored for provenance
  double kappa_minus{0.0};
  double kappa_plus{0.0};
  double x_minus{0.0};
  double x_plus{0.0};
  std::vector<Region> regions;

  void validate() const {
    if (!(kappa_minus > 0.0) || !(kappa_plus > 0.0))
      throw std::invalid_argument("WaveguideGeometry: exterior wavenumbers must be positive");
    if (!(x_minus < x_plus))
      throw std::invalid_argument("WaveguideGeometry: x_minus must be less than x_plus");
    if (regions.empty())
      throw std::invalid_argument("WaveguideGeometry: interior region list is empty");
    double area = 0.0;
    for (const Region& r : regions) {
      if (!(r.kappa > 0.0))
        throw std::invalid_argument("WaveguideGeometry: region kappa must be positive");
      if (!(r.x0 < r.x1) || !(r.z0 < r.z1))
        throw std::invalid_argument("WaveguideGeometry: degenerate region");
      if (r.x0 < x_minus - 1e-12 || r.x1 > x_plus + 1e-12 || r.z0 < -1e-12 || r.z1 > 1.0 + 1e-12)
        throw std::invalid_argument("WaveguideGeometry: region outside the strip");
      area += (r.x1 - r.x0) * (r.z1 - r.z0);
    }
    const double strip = (x_plus - x_minus) * 1.0;
    if (std::abs(area - strip) > 1e-10 * strip)
      throw std::invalid_argument("WaveguideGeometry: regions do not tile the interior strip");
  }
};

/// Single-tooth grating: substrate (kappa K1) below x=0, a film of thickness
/// 2/pi (kappa K2), a tooth layer of thickness 0.4 where the tooth (kappa K2)
/// covers half the period and the rest is background (kappa K3), and
/// background K3 above. See README for the known interface-quadrature
/// sensitivity of reference-value comparisons on this preset.
inline WaveguideGeometry benchmark_geometry() {
  const double k1 = std::sqrt(2.3) * pi;
  const double k2 = std::sqrt(3.0) * pi;
  const double k3 = pi;
  WaveguideGeometry g;
  g.omega = pi;
  g.kappa_minus = k1;
  g.kappa_plus = k3;
  g.x_minus = 0.0;
  g.x_plus = 2.0 / pi + 0.4;
  const double film = 2.0 / pi;
  g.regions = {
      {0.0, film, 0.0, 1.0, k2},         // film layer
      {film, g.x_plus, 0.0, 0.5, k2},    // tooth
      {film, g.x_plus, 0.5, 1.0, k3},    // groove
  };
  g.validate();
  return g;
}

/// Multi-material variant with three interior wavenumbers; the layout is an
/// illustrative stepped structure (the published figure for this example is
/// not machine-readable).
inline WaveguideGeometry complex_geometry() {
  const double k1 = std::sqrt(2.3) * pi;
  const double k2 = 2.0 * std::sqrt(3.0) * pi;
  const double k3 = 4.0 * std::sqrt(3.0) * pi;
  const double k4 = pi;
  WaveguideGeometry g;
  g.omega = pi;
  g.kappa_minus = k1;
  g.kappa_plus = k4;
  g.x_minus = 0.0;
  g.x_plus = 2.0;
  g.regions = {
      {0.0, 0.5, 0.0, 1.0, k2},
      {0.5, 1.0, 0.0, 0.5, k3},
      {0.5, 1.0, 0.5, 1.0, k2},
      {1.0, 1.5, 0.25, 0.75, k3},
      {1.0, 1.5, 0.0, 0.25, k4},
      {1.0, 1.5, 0.75, 1.0, k4},
      {1.5, 2.0, 0.0, 1.0, k4},
  };
  g.validate();
  return g;
}

inline WaveguideGeometry geometry_from_json(const nlohmann::json& j) {
  WaveguideGeometry g;
  g.omega = j.value("omega", 0.0);
  g.kappa_minus = j.at("kappa_minus").get<double>();
  g.kappa_plus = j.at("kappa_plus").get<double>();
  g.x_minus = j.at("x_minus").get<double>();
  g.x_plus = j.at("x_plus").get<double>();
  for (const auto& r : j.at("regions"))
    g.regions.push_back({r.at("x0").get<double>(), r.at("x1").get<double>(),
                         r.at("z0").get<double>(), r.at("z1").get<double>(),
                         r.at("kappa").get<double>()});
  g.validate();
  return g;
}

inline nlohmann::json geometry_to_json(const WaveguideGeometry& g) {
  nlohmann::json j;
  j["omega"] = g.omega;
  j["kappa_minus"] = g.kappa_minus;
  j["kappa_plus"] = g.kappa_plus;
  j["x_minus"] = g.x_minus;
  j["x_plus"] = g.x_plus;
  j["regions"] = nlohmann::json::array();
  for (const Region& r : g.regions)
    j["regions"].push_back(
        {{"x0", r.x0}, {"x1", r.x1}, {"z0", r.z0}, {"z1", r.z1}, {"kappa", r.kappa}});
  return j;
}

inline WaveguideGeometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_geometry: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return geometry_from_json(j);
}

inline void save_geometry(const WaveguideGeometry& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_geometry: cannot open " + path);
  out << geometry_to_json(g).dump(2) << '\n';
}

}  // namespace wavenep
