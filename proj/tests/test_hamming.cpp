#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "annsketch/hamming.hpp"
#include "annsketch/hard_instance.hpp"
#include "test_helpers.hpp"

using namespace annsketch;
using annsketch::test::naive_distance;
using annsketch::test::random_bits;

namespace {
BitVector bv(const char* s) { return BitVector::from_string(s); }
Dataset ds(std::initializer_list<const char*> pts) {
    std::vector<BitVector> v;
    for (const char* p : pts) v.push_back(bv(p));
    return Dataset(std::move(v));
}
} // namespace

TEST_CASE("BitVector text form", "[hamming]") {
    const auto v = bv("0110100");
    CHECK(v.dim() == 7);
    CHECK(v.to_string() == "0110100");
    CHECK_FALSE(v[0]);
    CHECK(v[1]);
    CHECK_FALSE(v.last());
    CHECK(v.appended(true).to_string() == "01101001");
    CHECK(v.complemented().to_string() == "1001011");
    CHECK_THROWS_AS(bv("01x"), Error);
    CHECK_THROWS_AS(v.get(7), Error);

    // Packing across word boundaries keeps the tail clean.
    std::mt19937_64 gen(7);
    const auto s = random_bits(gen, 130);
    const auto w = BitVector::from_string(s);
    CHECK(w.to_string() == s);
    CHECK(w.complemented().complemented() == w);
    CHECK(w.complemented().popcount() == 130 - w.popcount());
}

TEST_CASE("hamming_distance examples", "[hamming]") {
    CHECK(hamming_distance(bv("0000"), bv("0000")) == 0);
    CHECK(hamming_distance(bv("0101"), bv("0110")) == 2);
    CHECK_THROWS_MATCHES(hamming_distance(bv("01"), bv("011")), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.kind() == ErrorKind::DimensionMismatch;
                         }));

    // Lifted codewords with different label bits are one further apart.
    const auto ci = bv("1100110011");
    const auto cj = bv("1010101010");
    CHECK(hamming_distance(ci.appended(false), cj.appended(true)) == hamming_distance(ci, cj) + 1);
}

TEST_CASE("hamming_distance matches the unpacked reference and metric axioms", "[hamming][property]") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = 1 + gen() % 200;
        const auto sa = random_bits(gen, dim);
        const auto sb = random_bits(gen, dim);
        const auto sc = random_bits(gen, dim);
        const auto a = BitVector::from_string(sa);
        const auto b = BitVector::from_string(sb);
        const auto c = BitVector::from_string(sc);
        REQUIRE(hamming_distance(a, b) == naive_distance(sa, sb));
        CHECK(hamming_distance(a, b) == hamming_distance(b, a));
        CHECK((hamming_distance(a, b) == 0) == (a == b));
        CHECK(hamming_distance(a, a) == 0);
        CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }
}

TEST_CASE("nearest_neighbor_bruteforce", "[hamming]") {
    CHECK(nearest_neighbor_bruteforce(ds({"000", "111"}), bv("001")) == Neighbor{1, 1});
    CHECK(nearest_neighbor_bruteforce(ds({"111", "011", "010"}), bv("010")) == Neighbor{3, 0});
    // Ties go to the smallest index.
    CHECK(nearest_neighbor_bruteforce(ds({"110", "011", "101"}), bv("111")) == Neighbor{1, 1});
    CHECK_THROWS_AS(nearest_neighbor_bruteforce(ds({"00"}), bv("000")), Error);

    // On a hard instance with x_i = 1 the neighbor of q_i is v_i at distance 1.
    const Code code = generate_code(6, 16, 4, 3, 200);
    const auto inst = build_instance(code, bv("010011"));
    for (std::size_t i = 1; i <= 6; ++i) {
        const auto nn = nearest_neighbor_bruteforce(inst.dataset, inst.queries[i - 1]);
        CHECK(nn.index == i);
        CHECK(nn.distance == (inst.x[i - 1] ? 1U : 0U));
    }
}

TEST_CASE("is_valid_cann_answer", "[hamming]") {
    const auto P = ds({"0000", "0001", "1111"});
    CHECK(is_valid_cann_answer(P, bv("0000"), 1, ApproxFactor::integer(1)));
    CHECK(is_valid_cann_answer(P, bv("0000"), 1, ApproxFactor::integer(5)));
    // dist(q,P) = 0 forces distance 0 whatever c is.
    CHECK_FALSE(is_valid_cann_answer(P, bv("0000"), 2, ApproxFactor::integer(100)));
    // dist(q,P) = 1 and candidate at distance c + 1.
    const auto Q = ds({"00001", "00111", "01111"});
    CHECK(is_valid_cann_answer(Q, bv("00000"), 2, ApproxFactor::integer(3)));
    CHECK_FALSE(is_valid_cann_answer(Q, bv("00000"), 3, ApproxFactor::integer(3)));
    CHECK_FALSE(is_valid_cann_answer(Q, bv("00000"), 2, ApproxFactor::integer(2)));

    CHECK_THROWS_AS(is_valid_cann_answer(P, bv("0000"), 4, ApproxFactor::integer(1)), Error);
    CHECK_THROWS_AS(is_valid_cann_answer(P, bv("0000"), 0, ApproxFactor::integer(1)), Error);
}

TEST_CASE("ApproxFactor comparisons", "[hamming]") {
    CHECK_THROWS_AS(ApproxFactor::real(0.99), Error);
    CHECK_THROWS_AS(ApproxFactor::rational(1, 2), Error);
    CHECK_THROWS_AS(ApproxFactor::parse("abc"), Error);
    const auto three_halves = ApproxFactor::parse("3/2");
    CHECK(three_halves.is_exact());
    CHECK(three_halves.admits(3, 2));
    CHECK_FALSE(three_halves.admits(4, 2));
    CHECK(ApproxFactor::parse("1.5").to_string() == "3/2");
    CHECK(ApproxFactor::parse("2").to_string() == "2");
    // 1.1 is not representable; the exact factor still admits 11 <= 1.1 * 10.
    CHECK(ApproxFactor::parse("1.1").admits(11, 10));
    CHECK(ApproxFactor::real(2.0).admits(4, 2));
    CHECK_FALSE(ApproxFactor::real(2.0).admits(5, 2));
    CHECK(ApproxFactor::integer(3).at_most(3));
    CHECK_FALSE(ApproxFactor::parse("7/2").at_most(3));
}

TEST_CASE("enumerate_valid_answers", "[hamming]") {
    CHECK(enumerate_valid_answers(ds({"000", "111"}), bv("000"), ApproxFactor::integer(1)) ==
          std::vector<std::size_t>{1});
    CHECK(enumerate_valid_answers(ds({"000", "001"}), bv("000"), ApproxFactor::integer(1)) ==
          std::vector<std::size_t>{1});
    CHECK(enumerate_valid_answers(ds({"001", "011", "111"}), bv("000"), ApproxFactor::integer(2)) ==
          std::vector<std::size_t>{1, 2});
}

TEST_CASE("valid answer sets: contain the nearest, agree with the predicate, grow with c", "[hamming][property]") {
    std::mt19937_64 gen(99);
    const std::vector<ApproxFactor> factors = {ApproxFactor::integer(1), ApproxFactor::parse("3/2"),
                                               ApproxFactor::integer(2), ApproxFactor::real(2.75),
                                               ApproxFactor::integer(4)};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 1 + gen() % 24;
        const std::size_t n = 1 + gen() % 12;
        std::vector<BitVector> pts;
        for (std::size_t k = 0; k < n; ++k) pts.push_back(BitVector::from_string(random_bits(gen, dim)));
        const Dataset P(pts);
        const auto q = BitVector::from_string(random_bits(gen, dim));
        const auto nn = nearest_neighbor_bruteforce(P, q);
        std::vector<std::size_t> previous;
        for (const auto& c : factors) {
            const auto valid = enumerate_valid_answers(P, q, c);
            REQUIRE_FALSE(valid.empty());
            CHECK(std::find(valid.begin(), valid.end(), nn.index) != valid.end());
            for (std::size_t idx = 1; idx <= n; ++idx) {
                const bool listed = std::find(valid.begin(), valid.end(), idx) != valid.end();
                CHECK(listed == is_valid_cann_answer(P, q, idx, c));
            }
            CHECK(std::includes(valid.begin(), valid.end(), previous.begin(), previous.end()));
            previous = valid;
        }
    }
}
