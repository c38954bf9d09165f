#include <catch_amalgamated.hpp>

#include <random>

#include "annsketch/io.hpp"

using namespace annsketch;
using Catch::Matchers::WithinAbs;

TEST_CASE("instance JSON round trip", "[io][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Code code = generate_code(1 + seed % 8, 10 + seed, 2, seed, 500);
        const auto inst = build_instance(code, BitVector::from_integer(seed * 37 % (1U << code.n), code.n));
        const auto text = io::to_json(inst).dump();
        const auto back = io::instance_from_json(io::json::parse(text));
        CHECK(back.x == inst.x);
        CHECK(back.dataset == inst.dataset);
        CHECK(back.queries == inst.queries);
        CHECK(back.c_max == inst.c_max);
        CHECK(io::to_json(back).dump() == text);
    }
}

TEST_CASE("instance JSON rejects inconsistent files", "[io]") {
    const Code code = generate_code(3, 12, 3, 1, 200);
    auto j = io::to_json(build_instance(code, BitVector::from_string("011")));
    auto bad = j;
    bad["min_distance"] = code.min_distance + 1;
    CHECK_THROWS_AS(io::instance_from_json(bad), Error);
    bad = j;
    bad["x"] = "111";
    CHECK_THROWS_AS(io::instance_from_json(bad), Error);
    bad = j;
    bad.erase("codewords");
    CHECK_THROWS_AS(io::instance_from_json(bad), Error);
}

TEST_CASE("dataset JSON", "[io]") {
    const Dataset data({BitVector::from_string("0101"), BitVector::from_string("1110")});
    const auto j = io::to_json(data);
    CHECK(j.dump() == R"({"dim":4,"points":["0101","1110"]})");
    CHECK(io::dataset_from_json(j) == data);
    CHECK_THROWS_AS(io::dataset_from_json(io::json::parse(R"({"dim":3,"points":["0101"]})")), Error);
}

TEST_CASE("state JSON round trip", "[io]") {
    const auto rho = QuantumState::bloch(0.3, -0.4, 0.5);
    const auto j = io::to_json(rho);
    CHECK(j["qubits"] == 1);
    const auto back = io::state_from_json(j);
    CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
    auto bad = j;
    bad["re"][0][0] = 2.0;
    CHECK_THROWS_AS(io::state_from_json(bad), Error);
}

TEST_CASE("report JSON shapes", "[io]") {
    const auto eval = io::to_json(evaluate_qrac(qrac_2to1()));
    CHECK(eval["table"].size() == 8);
    CHECK(eval["table"][0].contains("x"));
    const auto cert = io::to_json(certify_nayak(qrac_3to1()));
    CHECK(cert["satisfied"] == true);
    const auto hybrid = io::to_csv(bbbv_hybrid(4, 1));
    CHECK(hybrid.rfind("s,D_s\n", 0) == 0);
    CHECK(hybrid.find("average,") != std::string::npos);
}
