#include <catch_amalgamated.hpp>

#include <cmath>

#include "annsketch/hard_instance.hpp"
#include "test_helpers.hpp"

using namespace annsketch;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an annsketch::Error");
    return ErrorKind::ParseError;
}

/// Reference minimum distance straight from the text form.
std::size_t reference_min_distance(const Code& code) {
    std::size_t best = code.code_length + 1;
    for (std::size_t a = 0; a < code.n; ++a) {
        for (std::size_t b = a + 1; b < code.n; ++b) {
            best = std::min(best, annsketch::test::naive_distance(code.codewords[a].to_string(),
                                                                   code.codewords[b].to_string()));
        }
    }
    return best;
}
} // namespace

TEST_CASE("generate_code parameter errors", "[hard_instance]") {
    CHECK(kind_of([] { (void)generate_code(2, 1, 2, 0, 10); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { (void)generate_code(0, 8, 2, 0, 10); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { (void)generate_code(4, 8, 2, 0, 0); }) == ErrorKind::InvalidParams);
    // Four words of length 2 can never be pairwise at distance 2.
    try {
        (void)generate_code(4, 2, 2, 5, 50);
        FAIL("expected Infeasible");
    } catch (const InfeasibleError& e) {
        CHECK(e.kind() == ErrorKind::Infeasible);
        CHECK(e.best_min_distance <= 1);
    }
}

TEST_CASE("generate_code certifies the distance it reports", "[hard_instance][property]") {
    const Code code = generate_code(4, 16, 4, 1, 100);
    CHECK(code.n == 4);
    CHECK(code.code_length == 16);
    CHECK(code.min_distance >= 4);
    CHECK(code.min_distance == reference_min_distance(code));

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Code c = generate_code(2 + seed % 9, 12 + seed % 20, 3, seed, 500);
        REQUIRE(c.min_distance == reference_min_distance(c));
        CHECK(c.min_distance >= 3);
        CHECK(c.attempts >= 1);
    }
}

TEST_CASE("generate_code is deterministic in the seed", "[hard_instance]") {
    const Code a = generate_code(5, 40, 10, 77, 50);
    const Code b = generate_code(5, 40, 10, 77, 50);
    const Code c = generate_code(5, 40, 10, 78, 50);
    CHECK(a.codewords == b.codewords);
    CHECK(a.attempts == b.attempts);
    CHECK(a.codewords != c.codewords);
}

TEST_CASE("generate_code at Lemma-scale parameters succeeds on the first draw", "[hard_instance]") {
    // n = 4, length 128, distance 32: per-draw failure below n^2/2 e^{-128/16} ≈ 2.7e-3.
    int first_draw = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Code c = generate_code(4, 128, 32, seed, 10);
        CHECK(c.min_distance == reference_min_distance(c));
        first_draw += c.attempts == 1;
    }
    CHECK(first_draw == 100);
}

TEST_CASE("single codeword has a vacuous minimum distance", "[hard_instance]") {
    const Code c = generate_code(1, 8, 8, 3, 1);
    CHECK(c.min_distance == 9);
    const auto inst = build_instance(c, BitVector::from_string("1"));
    CHECK(inst.c_max == 8);
    const auto rep = verify_forcing(inst, ApproxFactor::integer(3));
    CHECK(rep.ok());
    CHECK(rep.checked == 1);
}

TEST_CASE("build_instance lifts codewords by the selector", "[hard_instance]") {
    const Code code = generate_code(5, 16, 4, 11, 200);
    const auto zero = build_instance(code, BitVector(5));
    for (const auto& p : zero.dataset.points()) CHECK_FALSE(p.last());

    const auto x = BitVector::from_string("10110");
    const auto inst = build_instance(code, x);
    CHECK(inst.dim() == 17);
    CHECK(inst.c_max == static_cast<std::int64_t>(code.min_distance) - 1);
    for (std::size_t i = 1; i <= 5; ++i) {
        const auto& p = inst.dataset.at(i);
        CHECK(p == (x[i - 1] ? lifted_one(code, i) : lifted_zero(code, i)));
        CHECK(p.to_string() == code.at(i).to_string() + (x[i - 1] ? "1" : "0"));
        CHECK(inst.queries[i - 1] == lifted_zero(code, i));
    }
    CHECK(inst.queries == zero.queries);
    CHECK(kind_of([&] { (void)build_instance(code, BitVector(4)); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("forced answers and the lifted geometry", "[hard_instance]") {
    const Code code = generate_code(7, 16, 4, 21, 500);
    for (std::uint64_t xv = 0; xv < (1U << 7); ++xv) {
        const auto inst = build_instance(code, BitVector::from_integer(xv, 7));
        for (std::size_t i = 1; i <= 7; ++i) {
            CHECK(forced_answer(inst, i) == i);
            const auto& q = inst.queries[i - 1];
            const bool xi = inst.x[i - 1];
            CHECK(forced_point(inst, i) == (xi ? lifted_one(code, i) : lifted_zero(code, i)));
            CHECK(nearest_neighbor_bruteforce(inst.dataset, q).distance == (xi ? 1U : 0U));
            for (std::size_t j = 1; j <= 7; ++j) {
                if (j == i) continue;
                const auto d = hamming_distance(q, inst.dataset.at(j));
                CHECK(d >= code.min_distance + (inst.x[j - 1] ? 1 : 0));
            }
        }
    }
    const Code weak = make_code({BitVector::from_string("0000"), BitVector::from_string("0001")});
    const auto inst = build_instance(weak, BitVector(2));
    CHECK(kind_of([&] { (void)forced_answer(inst, 1); }) == ErrorKind::ApproxOutOfRange);
}

TEST_CASE("verify_forcing over every selector", "[hard_instance]") {
    const Code code = generate_code(8, 16, 4, 5, 500);
    for (int c = 1; c <= 3; ++c) {
        const auto rep = verify_forcing_all(code, ApproxFactor::integer(c));
        CHECK(rep.ok());
        CHECK(rep.guaranteed);
        CHECK(rep.checked == 8 * 256);
    }
    CHECK(verify_forcing_all(code, ApproxFactor::integer(2), false, 3).checked == 8 * 256);
    CHECK(kind_of([&] { (void)verify_forcing_all(code, ApproxFactor::integer(code.min_distance)); }) ==
          ErrorKind::ApproxOutOfRange);
}

TEST_CASE("verify_forcing out of range exhibits a non-unique answer", "[hard_instance]") {
    // Codewords at distance 1: c_max = 0, and with x = (1,0) the query q_1
    // sees v_1 at distance 1 and u_2 at distance 1.
    const Code weak = make_code({BitVector::from_string("0000"), BitVector::from_string("0001")});
    const auto inst = build_instance(weak, BitVector::from_string("10"));
    CHECK(kind_of([&] { (void)verify_forcing(inst, ApproxFactor::integer(1)); }) == ErrorKind::ApproxOutOfRange);
    const auto rep = verify_forcing(inst, ApproxFactor::integer(1), true);
    CHECK_FALSE(rep.guaranteed);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations.front().i == 1);
    CHECK(rep.violations.front().valid_set == std::vector<std::size_t>{1, 2});

    const auto all = verify_forcing_all(weak, ApproxFactor::integer(2), true);
    CHECK_FALSE(all.ok());
    for (std::size_t k = 1; k < all.violations.size(); ++k) {
        const auto& a = all.violations[k - 1];
        const auto& b = all.violations[k];
        CHECK((a.x.to_integer() < b.x.to_integer() || (a.x == b.x && a.i < b.i)));
    }
    CHECK(kind_of([&] { (void)verify_forcing(inst, ApproxFactor::real(0.5)); }) == ErrorKind::InvalidApproximation);
}

TEST_CASE("decode_bit reads the label coordinate", "[hard_instance]") {
    const Code code = generate_code(6, 16, 4, 8, 500);
    CHECK_FALSE(decode_bit(code, 2, lifted_zero(code, 2)));
    CHECK(decode_bit(code, 2, lifted_one(code, 2)));
    CHECK(kind_of([&] { (void)decode_bit(code, 2, code.at(2)); }) == ErrorKind::DimensionMismatch);

    // Blind decoding of the forced answers recovers every selector.
    for (std::uint64_t xv = 0; xv < 64; ++xv) {
        const auto x = BitVector::from_integer(xv, 6);
        const auto inst = build_instance(code, x);
        BitVector recovered(6);
        for (std::size_t i = 1; i <= 6; ++i) {
            const auto valid = enumerate_valid_answers(inst.dataset, inst.queries[i - 1], ApproxFactor::integer(3));
            REQUIRE(valid.size() == 1);
            recovered.set(i - 1, decode_bit(code, i, inst.dataset.at(valid.front())));
        }
        CHECK(recovered == x);
    }
}
