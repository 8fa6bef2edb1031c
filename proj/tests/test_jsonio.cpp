#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "listrec/jsonio.hpp"
#include "listrec/recovery.hpp"

using namespace listrec;

TEST_CASE("shape and rational round trips") {
    const Shape shape{3, 2, 13};
    CHECK(shape_from_json(shape_to_json(shape)) == shape);

    CHECK(rational_from_json(rational_to_json(ratio(3, 4))) == ratio(3, 4));
    CHECK(rational_from_json(rational_to_json(ratio(-1, 7))) == ratio(-1, 7));
    CHECK(rational_to_json(ratio(1, 2)).get<std::string>() == "1/2");
    CHECK(rational_from_json(Json("5")) == Rational(5));
}

TEST_CASE("code serialization carries and cross-checks derived fields") {
    const FrsCode code(13, 3, 2, 2);
    Json j = code_to_json(code);
    CHECK(j["gamma"] == 2);
    const FrsCode back = code_from_json(j);
    CHECK(back.q() == 13);
    CHECK(back.alphas() == code.alphas());

    j["gamma"] = 7;  // inconsistent hint
    CHECK_THROWS_AS(code_from_json(j), std::invalid_argument);
}

TEST_CASE("codeword nesting matches the shape") {
    const FrsCode code(13, 3, 2, 2);
    const Vec w = code.encode({0, 1});
    const Json j = codeword_to_json(code.shape(), w);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0] == Json::array({1, 2}));
    CHECK(codeword_from_json(code.shape(), j) == w);

    Json bad = j;
    bad[0][0] = 13;  // out of range
    CHECK_THROWS_AS(codeword_from_json(code.shape(), bad), std::invalid_argument);
    Json short_row = j;
    short_row[0] = Json::array({1});
    CHECK_THROWS_AS(codeword_from_json(code.shape(), short_row), std::invalid_argument);
}

TEST_CASE("subspace and affine space round trips are canonical") {
    const Shape shape{3, 2, 7};
    const Subspace h = Subspace::span(shape, {{2, 0, 0, 0, 4, 6}, {0, 1, 0, 0, 5, 4}});
    CHECK(subspace_from_json(subspace_to_json(h)) == h);

    const AffineSpace a(Vec{1, 1, 1, 1, 1, 1}, h);
    CHECK(affine_from_json(affine_to_json(a)) == a);
}

TEST_CASE("traces use one-based coordinates on the wire") {
    PruneTrace trace;
    trace.pinned = {0, 2};
    trace.dims = {1, 0};
    const Json j = trace_to_json(trace);
    CHECK(j["pinned"] == Json::array({1, 3}));
    const PruneTrace back = trace_from_json(j);
    CHECK(back.pinned == trace.pinned);
    CHECK(back.dims == trace.dims);
    CHECK(back.failed == false);

    Json bad = j;
    bad["pinned"][0] = 0;  // zero is not a valid one-based index
    CHECK_THROWS_AS(trace_from_json(bad), std::invalid_argument);
}

TEST_CASE("sum-set and instance round trips") {
    const Shape shape{2, 1, 3};
    SumSet p;
    p.shape = shape;
    p.u = 1;
    p.v = 2;
    p.summands = {{{1, 1}, {2, 2}}};
    const SumSet back = sumset_from_json(sumset_to_json(p));
    CHECK(back == p);

    const ListRecoveryInstance inst(shape, {{{1}, {2}}, {{0}}}, 2, ratio(1, 2));
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
}

TEST_CASE("recovery report is byte deterministic") {
    const FrsCode code(13, 3, 2, 2);
    Rng g1 = Rng::stream(55, 1);
    Rng g2 = Rng::stream(55, 1);
    const PlantedInstance p1 = make_planted_instance(code, 1, 2, ratio(1, 3), g1);
    const PlantedInstance p2 = make_planted_instance(code, 1, 2, ratio(1, 3), g2);
    RecoveryConfig cfg;
    cfg.r = 2;
    cfg.eta = ratio(1, 4);
    cfg.eta_prime = ratio(1, 8);
    cfg.t = 12;
    cfg.seed = 99;
    const RecoveryOutput o1 = recover(code, p1.instance, cfg);
    const RecoveryOutput o2 = recover(code, p2.instance, cfg);
    const Json r1 = recovery_report(code, p1.instance, o1, p1.planted, true);
    const Json r2 = recovery_report(code, p2.instance, o2, p2.planted, true);
    CHECK(r1.dump(2) == r2.dump(2));
    CHECK(r1.contains("runs"));
    CHECK(r1.contains("bounds"));
}

TEST_CASE("file writes go through a temporary and read back identically") {
    const auto path = std::filesystem::temp_directory_path() /
                      ("listrec-jsonio-" +
                       std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()) +
                       ".json");
    const Json j = {{"a", 1}, {"b", "2/3"}};
    write_json_file(path, j);
    CHECK(read_json_file(path) == j);
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);

    CHECK_THROWS(read_json_file(path));  // gone now
}
