#include <doctest.h>

#include "crn/errors.hpp"
#include "crn/serialize.hpp"
#include "support/fixtures.hpp"

using namespace crn;

TEST_SUITE("serialize") {
  TEST_CASE("network round trip") {
    const NetworkInstance net = generate_snapshot(default_config(ScenarioKind::kFourCellA), 3);
    const Json doc = network_to_json(net);
    const NetworkInstance back = network_from_json(Json::parse(doc.dump()));
    CHECK(back.gains() == net.gains());
    CHECK(back.target_sinr() == net.target_sinr());
    CHECK(back.serving() == net.serving());
    CHECK(back.noise() == net.noise());
  }

  TEST_CASE("targets in dB") {
    Json doc = testing::load_fixture("t2.json").at("network");
    doc.erase("target_sinr");
    doc["target_sinr_db"] = {-3.0, 0.0};
    const NetworkInstance net = network_from_json(doc);
    CHECK(net.target_sinr()[0] == doctest::Approx(std::pow(10.0, -0.3)));
    CHECK(net.target_sinr()[1] == doctest::Approx(1.0));
  }

  TEST_CASE("malformed network documents") {
    Json doc = testing::load_fixture("t2.json").at("network");
    doc["noise"] = {0.1};
    CHECK_THROWS_AS(network_from_json(doc), ConfigError);
    doc = testing::load_fixture("t2.json").at("network");
    doc.erase("gain");
    CHECK_THROWS_AS(network_from_json(doc), ConfigError);
    doc = testing::load_fixture("t2.json").at("network");
    doc["serving"] = {0, 3};
    CHECK_THROWS_AS(network_from_json(doc), ConfigError);
  }

  TEST_CASE("region document for the fixture") {
    const NetworkInstance net = testing::t2_network();
    const FcirPolyhedron f = build_fcir(net);
    const FtirBox box = build_ftir(net, net.target_sinr());
    const Json doc = fcir_to_json(f, &box, 5);
    CHECK(doc.at("dim") == 2);
    CHECK(doc.at("a")[0][0].get<double>() == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(doc.at("c")[1].get<double>() == doctest::Approx(2.8).epsilon(1e-12));
    CHECK(doc.at("axis_intercepts")[0].get<double>() == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(doc.at("titl")[0].get<double>() == doctest::Approx(1.9).epsilon(1e-12));
    const auto& verts = doc.at("vertices");
    REQUIRE(verts.size() == 4);
    bool corner = false;
    for (const auto& v : verts)
      corner |= std::abs(v[0].get<double>() - 1.4) < 1e-12 && std::abs(v[1].get<double>() - 1.4) < 1e-12;
    CHECK(corner);
    const auto& boundary = doc.at("boundary");
    REQUIRE(boundary.size() == 2);
    for (const auto& line : boundary) {
      const int m = line.at("row");
      CHECK(line.at("points").size() == 5);
      for (const auto& pt : line.at("points")) {
        const double lhs = f.a(m, 0) * pt[0].get<double>() + f.a(m, 1) * pt[1].get<double>();
        CHECK(lhs == doctest::Approx(f.c[m]).epsilon(1e-12));
      }
    }
    const FcirPolyhedron back = fcir_from_json(doc);
    CHECK(back.a == f.a);
    CHECK(back.c == f.c);
  }

  TEST_CASE("inactive rows serialise as null") {
    FcirPolyhedron f;
    f.a = Matrix::Identity(2, 2);
    f.c = Vector(2);
    f.c << 1.0, std::numeric_limits<double>::infinity();
    f.phi_max = f.c;
    f.noise = Vector::Constant(2, 0.1);
    const Json doc = fcir_to_json(f);
    CHECK(doc.at("c")[1].is_null());
    CHECK_FALSE(fcir_from_json(doc).row_active(1));
  }

  TEST_CASE("scenario documents") {
    const Json doc = Json::parse(R"({"kind": "ad-hoc", "num_pu": 4, "num_su": 6, "seed": 77,
                                     "target_sinr_db": [-10], "alphas": [0.5, 2]})");
    const ScenarioConfig cfg = scenario_from_json(doc);
    CHECK(cfg.kind == ScenarioKind::kAdHoc);
    CHECK(cfg.num_pu == 4);
    CHECK(cfg.seed == 77);
    CHECK(cfg.su_target_db == std::vector<double>{-10.0});
    CHECK(cfg.alphas == std::vector<double>{0.5, 2.0});
    CHECK(cfg.link_max_distance == 250.0);
    const ScenarioConfig back = scenario_from_json(scenario_to_json(cfg));
    CHECK(scenario_to_json(back) == scenario_to_json(cfg));

    CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"kind": "four-cell-a", "nmu_su": 3})")), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"num_su": "many"})")), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"bs_separation": 5000})")), ConfigError);
  }

  TEST_CASE("patching") {
    ScenarioConfig cfg = default_config(ScenarioKind::kFourCellB);
    apply_scenario_patch(cfg, Json::parse(R"({"num_su": 7, "assignment": "nearest"})"));
    CHECK(cfg.num_su == 7);
    CHECK(cfg.nearest_assignment);
    CHECK(cfg.kind == ScenarioKind::kFourCellB);
    CHECK(cfg.pu_target_db == std::vector<double>{-12.0, -16.0});
  }
}
