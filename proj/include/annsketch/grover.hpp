#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "annsketch/error.hpp"
#include "annsketch/rng.hpp"

namespace annsketch {

inline constexpr std::size_t kMaxStatevector = std::size_t{1} << 20;
inline constexpr std::size_t kMaxHybrid = std::size_t{1} << 14;

/// A candidate set {0, ..., M-1} and the indices satisfying the predicate.
class CandidateInstance {
public:
    CandidateInstance(std::size_t size, std::vector<std::size_t> marked) : size_(size), marked_(std::move(marked)) {
        if (size_ < 1) fail(ErrorKind::InvalidParams, "candidate set must be non-empty");
        std::sort(marked_.begin(), marked_.end());
        marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
        if (!marked_.empty() && marked_.back() >= size_) {
            fail(ErrorKind::IndexOutOfRange, "marked index " + std::to_string(marked_.back()) + " >= M");
        }
    }

    /// t distinct marked indices drawn uniformly from the seed.
    static CandidateInstance random(std::size_t size, std::size_t t, std::uint64_t seed) {
        if (t > size) fail(ErrorKind::DomainError, "t exceeds M");
        // Partial Fisher-Yates over an index permutation.
        std::vector<std::size_t> perm(size);
        for (std::size_t k = 0; k < size; ++k) perm[k] = k;
        Rng rng(seed, stream::marked, 0);
        for (std::size_t k = 0; k < t; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(rng.below(size - k));
            std::swap(perm[k], perm[j]);
        }
        perm.resize(t);
        return CandidateInstance(size, std::move(perm));
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t marked_count() const noexcept { return marked_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& marked() const noexcept { return marked_; }
    [[nodiscard]] bool is_marked(std::size_t j) const {
        return std::binary_search(marked_.begin(), marked_.end(), j);
    }

private:
    std::size_t size_;
    std::vector<std::size_t> marked_;
};

namespace detail {
inline double rotation_angle(std::size_t size, std::size_t t) {
    if (t == 0 || t > size) fail(ErrorKind::DomainError, "need 1 <= t <= M");
    return std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(size)));
}
} // namespace detail

/// sin²((2k+1)θ) with sin²θ = t/M.
inline double rotation_success(std::size_t size, std::size_t t, std::size_t k) {
    const double theta = detail::rotation_angle(size, t);
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
    return s * s;
}

/// floor(π / (4θ)).
inline std::size_t optimal_iterations(std::size_t size, std::size_t t) {
    const double theta = detail::rotation_angle(size, t);
    return static_cast<std::size_t>(std::floor(std::numbers::pi / (4.0 * theta)));
}

/// Real amplitudes over the candidate register. Grover iterates only ever
/// apply sign flips and reflections, so amplitudes stay real.
class CandidateRegister {
public:
    explicit CandidateRegister(std::size_t size)
        : amps_(size, 1.0 / std::sqrt(static_cast<double>(size))) {}

    /// Phase oracle: one query.
    void apply_oracle(const std::vector<std::size_t>& marked) {
        for (std::size_t j : marked) amps_[j] = -amps_[j];
        ++queries_;
    }

    /// Reflection about the uniform start state: a ← 2·mean(a) − a.
    void apply_diffusion() {
        double sum = 0.0;
        for (double a : amps_) sum += a;
        const double twice_mean = 2.0 * sum / static_cast<double>(amps_.size());
        for (double& a : amps_) a = twice_mean - a;
    }

    [[nodiscard]] const std::vector<double>& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::size_t queries() const noexcept { return queries_; }

    [[nodiscard]] double norm_squared() const noexcept {
        double s = 0.0;
        for (double a : amps_) s += a * a;
        return s;
    }

    [[nodiscard]] double weight_on(const std::vector<std::size_t>& indices) const {
        double s = 0.0;
        for (std::size_t j : indices) s += amps_[j] * amps_[j];
        return s;
    }

    /// Samples a basis index from |a_j|².
    [[nodiscard]] std::size_t sample(Rng& rng) const {
        double u = rng.uniform01() * norm_squared();
        for (std::size_t j = 0; j < amps_.size(); ++j) {
            const double w = amps_[j] * amps_[j];
            if (u < w) return j;
            u -= w;
        }
        return amps_.size() - 1;
    }

private:
    std::vector<double> amps_;
    std::size_t queries_ = 0;
};

struct GroverRun {
    std::size_t size = 0;
    std::vector<std::size_t> marked;
    std::size_t iterations = 0;
    std::size_t queries_used = 0;
    double success_probability = 0.0;
    std::size_t sampled = 0;
    std::optional<std::size_t> found;  // sampled index when it is marked
    double max_norm_error = 0.0;       // max |‖a‖² − 1| over iterates
    std::uint64_t seed = 0;
};

/// k Grover iterates on the M-dimensional candidate register, then one
/// sample from the final distribution.
inline GroverRun grover_statevector(const CandidateInstance& inst, std::size_t k, std::uint64_t seed) {
    if (inst.marked_count() == 0) fail(ErrorKind::NoMarked, "no satisfying candidate");
    if (inst.size() > kMaxStatevector) fail(ErrorKind::TooLarge, "M above 2^20");
    CandidateRegister reg(inst.size());
    GroverRun run;
    run.max_norm_error = std::abs(reg.norm_squared() - 1.0);
    for (std::size_t step = 0; step < k; ++step) {
        reg.apply_oracle(inst.marked());
        reg.apply_diffusion();
        run.max_norm_error = std::max(run.max_norm_error, std::abs(reg.norm_squared() - 1.0));
    }
    run.size = inst.size();
    run.marked = inst.marked();
    run.iterations = k;
    run.queries_used = reg.queries();
    run.success_probability = std::clamp(reg.weight_on(inst.marked()), 0.0, 1.0);
    Rng rng(seed, stream::sampling, 0);
    run.sampled = reg.sample(rng);
    if (inst.is_marked(run.sampled)) run.found = run.sampled;
    run.seed = seed;
    return run;
}

struct UnknownCountSearch {
    std::optional<std::size_t> found;
    std::size_t queries_used = 0;  // oracle iterates plus one check per sample
    std::size_t rounds = 0;
};

/// Search without knowing t: rounds draw k uniformly from [0, ceil(λ)) with λ
/// growing by 6/5 per round up to √M, run k iterates, sample, and check the
/// sample with one more query. Stops on success or after `max_rounds`.
inline UnknownCountSearch grover_unknown_count(const CandidateInstance& inst, std::uint64_t seed,
                                               std::size_t max_rounds = 256) {
    if (inst.size() > kMaxStatevector) fail(ErrorKind::TooLarge, "M above 2^20");
    UnknownCountSearch out;
    Rng rng(seed, stream::sampling, 1);
    const double cap = std::sqrt(static_cast<double>(inst.size()));
    double lambda = 1.0;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        ++out.rounds;
        const auto span = static_cast<std::uint64_t>(std::ceil(lambda));
        const std::size_t k = static_cast<std::size_t>(rng.below(std::max<std::uint64_t>(span, 1)));
        CandidateRegister reg(inst.size());
        for (std::size_t step = 0; step < k; ++step) {
            reg.apply_oracle(inst.marked());
            reg.apply_diffusion();
        }
        const std::size_t j = reg.sample(rng);
        out.queries_used += reg.queries() + 1;
        if (inst.is_marked(j)) {
            out.found = j;
            return out;
        }
        lambda = std::min(lambda * 6.0 / 5.0, cap);
    }
    return out;
}

struct ScalingRow {
    std::size_t size = 0;
    std::size_t t = 0;
    std::size_t k_opt = 0;
    double ratio = 0.0;  // k_opt / √(M/t)
    double exact_success = 0.0;
    double empirical_success = 0.0;
    std::size_t trials = 0;
};

/// For each M: optimal iterations, the ratio k_opt / √(M/t), and the fraction
/// of trials that find a marked index. Each seed picks a random marked set
/// and the sample drawn from the final state.
inline std::vector<ScalingRow> scaling_experiment(const std::vector<std::size_t>& sizes, std::size_t t,
                                                  const std::vector<std::uint64_t>& seeds) {
    if (t < 1) fail(ErrorKind::DomainError, "t must be >= 1");
    std::vector<ScalingRow> rows;
    for (std::size_t size : sizes) {
        ScalingRow row;
        row.size = size;
        row.t = t;
        row.k_opt = optimal_iterations(size, t);
        row.ratio = static_cast<double>(row.k_opt) / std::sqrt(static_cast<double>(size) / static_cast<double>(t));
        row.exact_success = rotation_success(size, t, row.k_opt);
        std::size_t hits = 0;
        for (std::uint64_t s : seeds) {
            const auto inst = CandidateInstance::random(size, t, s);
            if (grover_statevector(inst, row.k_opt, s).found) ++hits;
        }
        row.trials = seeds.size();
        row.empirical_success = seeds.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(seeds.size());
        rows.push_back(row);
    }
    return rows;
}

struct HybridReport {
    std::size_t size = 0;
    std::size_t queries = 0;
    std::vector<double> displacement;   // D_s = ‖ψ_s − ψ_0‖²
    std::vector<double> query_weight;   // Σ_k |α_{s,k}|² of the unmarked run
    std::vector<double> per_index_bound;  // 4 (Σ_k |α_{s,k}|)²
    double average = 0.0;
    double bound = 0.0;  // 4 Q² / M
    bool holds = false;
    std::vector<double> final_unmarked;  // ψ_0
    std::vector<double> overlap;         // ⟨ψ_s|ψ_0⟩
    std::vector<double> self_weight;     // |⟨s|ψ_s⟩|²
};

/// Q Grover iterates run once with no marked candidate and once per s with
/// {s} marked. Records the unmarked run's amplitude on each s at every query
/// and the squared distance of each marked run's final state from the
/// unmarked one.
inline HybridReport bbbv_hybrid(std::size_t size, std::size_t queries) {
    if (size < 1) fail(ErrorKind::InvalidParams, "M must be >= 1");
    if (size > kMaxHybrid) fail(ErrorKind::TooLarge, "hybrid sweep limited to M <= 2^14");
    HybridReport rep;
    rep.size = size;
    rep.queries = queries;

    CandidateRegister base(size);
    std::vector<double> abs_sum(size, 0.0);
    rep.query_weight.assign(size, 0.0);
    for (std::size_t q = 0; q < queries; ++q) {
        for (std::size_t s = 0; s < size; ++s) {
            const double a = base.amplitudes()[s];
            abs_sum[s] += std::abs(a);
            rep.query_weight[s] += a * a;
        }
        base.apply_oracle({});
        base.apply_diffusion();
    }
    rep.final_unmarked = base.amplitudes();

    rep.displacement.resize(size);
    rep.per_index_bound.resize(size);
    rep.overlap.resize(size);
    rep.self_weight.resize(size);
    double total = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
        CandidateRegister reg(size);
        const std::vector<std::size_t> marked{s};
        for (std::size_t q = 0; q < queries; ++q) {
            reg.apply_oracle(marked);
            reg.apply_diffusion();
        }
        double dist = 0.0;
        double dot = 0.0;
        const auto& a = reg.amplitudes();
        for (std::size_t j = 0; j < size; ++j) {
            const double diff = a[j] - rep.final_unmarked[j];
            dist += diff * diff;
            dot += a[j] * rep.final_unmarked[j];
        }
        rep.displacement[s] = dist;
        rep.per_index_bound[s] = 4.0 * abs_sum[s] * abs_sum[s];
        rep.overlap[s] = dot;
        rep.self_weight[s] = a[s] * a[s];
        total += dist;
    }
    rep.average = total / static_cast<double>(size);
    rep.bound = 4.0 * static_cast<double>(queries) * static_cast<double>(queries) / static_cast<double>(size);
    rep.holds = rep.average <= rep.bound + 1e-12;
    return rep;
}

struct DistinguishabilityReport {
    std::size_t size = 0;
    std::size_t queries = 0;
    double average_displacement = 0.0;
    /// Average over s of |⟨s|ψ_s⟩|²: success of reading the register in the
    /// computational basis and guessing the outcome.
    double basis_guess_success = 0.0;
    /// 1/M + average trace distance between ψ_s and ψ_0; bounds the average
    /// success of any measurement that identifies s from the final state.
    double any_measurement_bound = 0.0;
    bool indistinguishable = false;  // any_measurement_bound <= 1/2
};

/// Identification of the marked index from Q-query final states, restricted
/// to Q <= optimal_iterations(M, 1) / 4 where the bound must stay below 1/2.
inline DistinguishabilityReport distinguishability_check(std::size_t size, std::size_t queries) {
    if (size < 2) fail(ErrorKind::RegimeViolation, "need M >= 2 for a non-trivial guess");
    if (4 * queries > optimal_iterations(size, 1)) {
        fail(ErrorKind::RegimeViolation, "Q must be at most optimal_iterations(M,1)/4");
    }
    const HybridReport hy = bbbv_hybrid(size, queries);
    DistinguishabilityReport rep;
    rep.size = size;
    rep.queries = queries;
    rep.average_displacement = hy.average;
    double guess = 0.0;
    double trace_dist = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
        guess += hy.self_weight[s];
        trace_dist += std::sqrt(std::max(0.0, 1.0 - hy.overlap[s] * hy.overlap[s]));
    }
    const double inv = 1.0 / static_cast<double>(size);
    rep.basis_guess_success = guess * inv;
    rep.any_measurement_bound = inv + trace_dist * inv;
    rep.indistinguishable = rep.any_measurement_bound <= 0.5;
    return rep;
}

} // namespace annsketch
