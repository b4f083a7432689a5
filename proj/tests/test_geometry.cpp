#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include <wavenep/geometry.hpp>
#include <wavenep/grid.hpp>

using namespace wavenep;

TEST_CASE("presets validate and carry the expected materials", "[geometry]") {
  const WaveguideGeometry b = benchmark_geometry();
  CHECK(b.kappa_minus == std::sqrt(2.3) * pi);
  CHECK(b.kappa_plus == pi);
  CHECK(b.x_plus == Catch::Approx(2.0 / pi + 0.4));
  CHECK(b.regions.size() == 3);

  const WaveguideGeometry c = complex_geometry();
  CHECK(c.regions.size() == 7);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("JSON serialization round-trips a geometry", "[geometry]") {
  const WaveguideGeometry g = benchmark_geometry();
  const nlohmann::json j = geometry_to_json(g);
  const WaveguideGeometry back = geometry_from_json(j);
  CHECK(back.kappa_minus == g.kappa_minus);
  CHECK(back.kappa_plus == g.kappa_plus);
  CHECK(back.x_minus == g.x_minus);
  CHECK(back.x_plus == g.x_plus);
  REQUIRE(back.regions.size() == g.regions.size());
  for (std::size_t i = 0; i < g.regions.size(); ++i) {
    CHECK(back.regions[i].x0 == g.regions[i].x0);
    CHECK(back.regions[i].x1 == g.regions[i].x1);
    CHECK(back.regions[i].z0 == g.regions[i].z0);
    CHECK(back.regions[i].z1 == g.regions[i].z1);
    CHECK(back.regions[i].kappa == g.regions[i].kappa);
  }

  SECTION("file round-trip") {
    const std::string path = "geometry_roundtrip_test.json";
    save_geometry(g, path);
    const WaveguideGeometry loaded = load_geometry(path);
    CHECK(loaded.regions.size() == g.regions.size());
    CHECK(loaded.x_plus == g.x_plus);
    std::remove(path.c_str());
  }

  SECTION("missing fields are an error") {
    nlohmann::json broken = j;
    broken.erase("regions");
    CHECK_THROWS(geometry_from_json(broken));
  }
}

TEST_CASE("validation rejects malformed geometries", "[geometry]") {
  WaveguideGeometry g = benchmark_geometry();

  SECTION("nonpositive exterior wavenumber") {
    g.kappa_minus = 0.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SECTION("inverted strip") {
    g.x_plus = g.x_minus - 1.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SECTION("empty region list") {
    g.regions.clear();
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SECTION("region outside the strip") {
    g.regions.push_back({g.x_plus, g.x_plus + 1.0, 0.0, 1.0, 1.0});
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SECTION("regions that do not tile") {
    g.regions.pop_back();
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
}

TEST_CASE("grid indexing covers all dofs exactly once", "[geometry]") {
  const WaveguideGeometry g = benchmark_geometry();
  const DiscretizationGrid grid(g, 5, 7);
  CHECK(grid.h_x == Catch::Approx((g.x_plus - g.x_minus) / 6.0));
  CHECK(grid.h_z == Catch::Approx(1.0 / 7.0));
  CHECK(grid.p == 3);
  CHECK(grid.total_size() == 5 * 7 + 2 * 7);

  std::vector<int> seen(static_cast<std::size_t>(grid.total_size()), 0);
  for (Eigen::Index i = 1; i <= grid.n_x; ++i)
    for (Eigen::Index j = 1; j <= grid.n_z; ++j)
      ++seen[static_cast<std::size_t>(grid.interior_index(i, j))];
  for (Eigen::Index j = 1; j <= grid.n_z; ++j) {
    ++seen[static_cast<std::size_t>(grid.boundary_minus_index(j))];
    ++seen[static_cast<std::size_t>(grid.boundary_plus_index(j))];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

  CHECK(grid.x_node(0) == g.x_minus);
  CHECK(grid.x_node(grid.n_x + 1) == Catch::Approx(g.x_plus));
  CHECK(grid.z_node(grid.n_z) == Catch::Approx(1.0));
}
