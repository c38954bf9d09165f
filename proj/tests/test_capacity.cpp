#include <catch_amalgamated.hpp>

#include "annsketch/capacity.hpp"
#include "annsketch/qrac.hpp"

using namespace annsketch;
using Catch::Matchers::WithinAbs;

namespace {
BitVector bv(const char* s) { return BitVector::from_string(s); }
} // namespace

TEST_CASE("near_predicate", "[capacity]") {
    const Dataset P({bv("0011"), bv("1100")});
    CHECK(near_predicate(P, bv("0011"), 0));
    CHECK_FALSE(near_predicate(P, bv("0110"), 1));
    CHECK(near_predicate(P, bv("0110"), 2));
    CHECK(near_predicate(P, bv("0101"), 4));
    CHECK_THROWS_AS(near_predicate(P, bv("01"), 1), Error);
}

TEST_CASE("hard family at r = 0 labels queries by the complement of x", "[capacity]") {
    const Code code = generate_code(6, 16, 4, 9, 500);
    const auto fam = hard_decision_family(code, 0);
    REQUIRE(fam.datasets.size() == 64);
    for (std::uint64_t xv = 0; xv < 64; ++xv) {
        const auto x = BitVector::from_integer(xv, 6);
        CHECK(realized_labeling(fam.datasets[xv], fam.queries, 0) == x.complemented());
        for (std::size_t i = 1; i <= 6; ++i) {
            CHECK(near_predicate(fam.datasets[xv], fam.queries[i - 1], 0) == !x[i - 1]);
        }
    }
    const auto res = shattering_check(fam);
    CHECK(res.shattered);
    CHECK(res.distinct_labelings == 64);
    CHECK(res.t == 6);
}

TEST_CASE("shattering_check on degenerate families", "[capacity]") {
    const Dataset P({bv("000"), bv("011")});
    DecisionFamily single{{P}, 0, {bv("000"), bv("111")}};
    auto res = shattering_check(single);
    CHECK(res.distinct_labelings == 1);
    CHECK_FALSE(res.shattered);

    DecisionFamily twins{{P, P}, 1, {bv("000"), bv("111")}};
    res = shattering_check(twins);
    CHECK(res.distinct_labelings == 1);
    CHECK(res.num_datasets == 2);

    DecisionFamily empty_queries{{P}, 0, {}};
    res = shattering_check(empty_queries);
    CHECK(res.shattered);
    CHECK(res.distinct_labelings == 1);

    DecisionFamily big{{P}, 0, std::vector<BitVector>(21, bv("000"))};
    CHECK_THROWS_AS(shattering_check(big), Error);
}

TEST_CASE("shattered implies 2^t labelings", "[capacity][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Code code = generate_code(1 + seed % 7, 12, 2, seed, 500);
        for (std::size_t r : {0U, 1U, 3U}) {
            const auto res = shattering_check(hard_decision_family(code, r));
            if (res.shattered) CHECK(res.distinct_labelings == (std::size_t{1} << res.t));
            CHECK(res.distinct_labelings <= (std::size_t{1} << res.t));
        }
    }
}

TEST_CASE("capacity_bound", "[capacity]") {
    CHECK(capacity_bound(9, 1.0) == 9.0);
    CHECK(capacity_bound(9, 0.5) == 0.0);
    CHECK_THAT(capacity_bound(12, 0.85), WithinAbs(4.6819, 1e-3));
    CHECK_THAT(capacity_bound(12, 0.85), WithinAbs(4.681916343403194, 1e-12));
    for (std::size_t t = 0; t <= 20; ++t) {
        for (double p : {0.5, 0.6, 0.75, 0.85, 0.99, 1.0}) CHECK(capacity_bound(t, p) == nayak_bound(t, p));
    }
    CHECK_THROWS_AS(capacity_bound(3, 0.2), Error);
}
