#include <doctest.h>

#include <string>

#include "sdfsim/scenario_parser.hpp"
#include "test_helpers.hpp"

using namespace sdfsim;

TEST_CASE("parser reads every section of the canonical text") {
    Scenario s = parse_scenario(test::canonical_scenario_text());
    CHECK(s.emitter.position_world.x == doctest::Approx(100.0));
    CHECK(s.emitter.carrier_frequency_f0 == doctest::Approx(300e6));
    CHECK(!s.channel.noise_enabled());
    CHECK(s.sample_rate == doctest::Approx(200.0));
    CHECK(s.uavs.size() == 1);
    CHECK(s.uavs[0].trajectory.size() == 1);
    CHECK(s.uavs[0].trajectory[0].speed_v == doctest::Approx(10.0));
    REQUIRE(s.timeline.find(1) != nullptr);
    CHECK(s.timeline.find(1)->size() == 1);
    CHECK((*s.timeline.find(1))[0].condition == Condition::Los);
}

TEST_CASE("unparsed channel keys keep their defaults") {
    Scenario s = parse_scenario(test::canonical_scenario_text());
    CHECK(s.channel.path_loss_exponent == doctest::Approx(2.0));
    CHECK(s.channel.nlos_scatterer_count == 32);
    CHECK(s.channel.olos_excess_loss_db == doctest::Approx(10.0));
}

TEST_CASE("unknown key is rejected with its line number") {
    std::string text = "[emitter]\nposition_m = 0, 0, 0\nbogus_key = 1\n";
    try {
        parse_scenario(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }
}

TEST_CASE("malformed vector and number values are diagnosed") {
    CHECK_THROWS_AS(parse_scenario("[emitter]\nposition_m = 1, 2\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[sim]\nsample_rate_hz = fast\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[nope]\nx = 1\n"), ParseError);
}

TEST_CASE("timeline entries parse times and conditions") {
    std::string text = test::canonical_scenario_text();
    auto pos = text.find("uav1 = 0 LOS");
    text.replace(pos, 12, "uav1 = 0 NLOS, 7 OLOS, 12 LOS");
    Scenario s = parse_scenario(text);
    const auto* ivs = s.timeline.find(1);
    REQUIRE(ivs != nullptr);
    REQUIRE(ivs->size() == 3);
    CHECK((*ivs)[1].start_time == doctest::Approx(7.0));
    CHECK((*ivs)[1].condition == Condition::Olos);
    CHECK((*ivs)[2].condition == Condition::Los);
}

TEST_CASE("timeline rejects unknown condition labels") {
    std::string text = test::canonical_scenario_text();
    auto pos = text.find("uav1 = 0 LOS");
    text.replace(pos, 12, "uav1 = 0 FOG");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
}

TEST_CASE("headings are normalized on parse") {
    std::string text = test::canonical_scenario_text();
    auto pos = text.find("heading = 1, 0, 0");
    text.replace(pos, 17, "heading = 3, 4, 0");
    Scenario s = parse_scenario(text);
    const Vec3& h = s.uavs[0].trajectory[0].heading_unit;
    CHECK(h.x == doctest::Approx(0.6));
    CHECK(h.y == doctest::Approx(0.8));
    CHECK(h.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("'-inf' is accepted only where a number is expected") {
    Scenario s = parse_scenario(test::canonical_scenario_text());
    CHECK(std::isinf(s.channel.noise_floor_dbm));
    CHECK(s.channel.noise_floor_dbm < 0);
}

TEST_CASE("multiple diagnostics are reported together") {
    std::string text = "[emitter]\nbad1 = 1\nbad2 = 2\n";
    try {
        parse_scenario(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad1") != std::string::npos);
        CHECK(msg.find("bad2") != std::string::npos);
    }
}

TEST_CASE("shipped scenario file parses and validates") {
    Scenario s = parse_scenario_file(SDFSIM_SCENARIO_PATH);
    CHECK(s.validation_errors().empty());
    CHECK(s.uavs.size() == 5);
    CHECK(s.seed == 20180522);
}
