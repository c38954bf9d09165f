#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "annsketch/error.hpp"
#include "annsketch/hamming.hpp"
#include "annsketch/hard_instance.hpp"
#include "annsketch/quantum_state.hpp"

namespace annsketch {

/// 1 iff some point of the dataset lies within distance r of the query.
inline bool near_predicate(const Dataset& data, const BitVector& query, std::size_t radius) {
    if (query.dim() != data.dim()) fail(ErrorKind::DimensionMismatch, "query and dataset dims differ");
    for (const auto& p : data.points()) {
        if (hamming_distance(p, query) <= radius) return true;
    }
    return false;
}

/// A finite dataset family, a radius and the queries to shatter.
struct DecisionFamily {
    std::vector<Dataset> datasets;
    std::size_t radius = 0;
    std::vector<BitVector> queries;
};

/// {P_x : x ∈ {0,1}^n} with queries q_i, for the given radius.
inline DecisionFamily hard_decision_family(const Code& code, std::size_t radius = 0) {
    if (code.n > 20) fail(ErrorKind::TooLarge, "hard family enumeration limited to n <= 20");
    DecisionFamily fam;
    fam.radius = radius;
    const std::uint64_t total = std::uint64_t{1} << code.n;
    fam.datasets.reserve(total);
    for (std::uint64_t xv = 0; xv < total; ++xv) {
        HardInstance inst = build_instance(code, BitVector::from_integer(xv, code.n));
        if (xv == 0) fam.queries = inst.queries;
        fam.datasets.push_back(std::move(inst.dataset));
    }
    return fam;
}

/// The labeling of the queries realised by one dataset; bit k is Near_r(P, q_{k+1}).
inline BitVector realized_labeling(const Dataset& data, const std::vector<BitVector>& queries, std::size_t radius) {
    BitVector label(queries.size());
    for (std::size_t k = 0; k < queries.size(); ++k) label.set(k, near_predicate(data, queries[k], radius));
    return label;
}

struct ShatteringResult {
    std::size_t t = 0;
    std::size_t num_datasets = 0;
    std::size_t distinct_labelings = 0;
    bool shattered = false;
};

inline ShatteringResult shattering_check(const DecisionFamily& family) {
    const std::size_t t = family.queries.size();
    if (t > 20) fail(ErrorKind::TooLarge, "shattering enumeration limited to t <= 20");
    for (const auto& q : family.queries) {
        if (!family.queries.empty() && q.dim() != family.queries.front().dim()) {
            fail(ErrorKind::DimensionMismatch, "queries disagree on dim");
        }
    }
    std::vector<bool> seen(std::size_t{1} << t, false);
    ShatteringResult res;
    res.t = t;
    res.num_datasets = family.datasets.size();
    for (const auto& data : family.datasets) {
        const std::uint64_t key = realized_labeling(data, family.queries, family.radius).to_integer();
        if (!seen[key]) {
            seen[key] = true;
            ++res.distinct_labelings;
        }
    }
    res.shattered = res.distinct_labelings == seen.size();
    return res;
}

/// Qubits needed to answer Near_r on t shattered queries with success p.
inline double capacity_bound(std::size_t t, double p) { return memory_lower_bound(t, p); }

} // namespace annsketch
