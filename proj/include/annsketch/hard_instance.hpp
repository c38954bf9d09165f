#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "annsketch/error.hpp"
#include "annsketch/hamming.hpp"
#include "annsketch/rng.hpp"

namespace annsketch {

/// n binary codewords of a common length with their verified minimum pairwise
/// distance. `code_length` is the codeword length, unrelated to any qubit count.
///
/// A single codeword has no pairs; its minimum distance is recorded as
/// code_length + 1, one more than any achievable distance.
struct Code {
    std::size_t n = 0;
    std::size_t code_length = 0;
    std::vector<BitVector> codewords;
    std::size_t min_distance = 0;
    std::uint64_t seed = 0;
    std::size_t attempts = 0;  // draws consumed by generate_code, 0 if built by hand

    [[nodiscard]] const BitVector& at(std::size_t i) const {
        if (i < 1 || i > n) fail(ErrorKind::IndexOutOfRange, "codeword index " + std::to_string(i));
        return codewords[i - 1];
    }
};

inline std::size_t pairwise_min_distance(const std::vector<BitVector>& words) {
    if (words.empty()) return 0;
    std::size_t best = words.front().dim() + 1;
    for (std::size_t a = 0; a < words.size(); ++a) {
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            best = std::min(best, hamming_distance(words[a], words[b]));
        }
    }
    return best;
}

/// Wraps explicit codewords, recomputing the minimum distance.
inline Code make_code(std::vector<BitVector> words) {
    if (words.empty()) fail(ErrorKind::InvalidParams, "code needs at least one codeword");
    Code code;
    code.n = words.size();
    code.code_length = words.front().dim();
    for (const auto& w : words) {
        if (w.dim() != code.code_length) fail(ErrorKind::DimensionMismatch, "codeword lengths differ");
    }
    code.min_distance = pairwise_min_distance(words);
    code.codewords = std::move(words);
    return code;
}

class InfeasibleError : public Error {
public:
    InfeasibleError(std::size_t best_seen, std::size_t attempts)
        : Error(ErrorKind::Infeasible, "no draw reached the requested distance in " +
                                           std::to_string(attempts) + " attempts; best min_distance " +
                                           std::to_string(best_seen)),
          best_min_distance(best_seen) {}
    std::size_t best_min_distance;
};

/// Draws all n codewords i.i.d. uniform, certifies the minimum distance by a
/// full pairwise check, and redraws the whole code on failure. Attempt k uses
/// the generator seeded by derive_seed(seed, stream::code, k).
inline Code generate_code(std::size_t n, std::size_t code_length, std::size_t min_dist,
                          std::uint64_t seed, std::size_t max_retries) {
    if (n < 1) fail(ErrorKind::InvalidParams, "n must be >= 1");
    if (code_length < 1) fail(ErrorKind::InvalidParams, "code_length must be >= 1");
    if (max_retries < 1) fail(ErrorKind::InvalidParams, "max_retries must be >= 1");
    if (min_dist > code_length) {
        fail(ErrorKind::InvalidParams, "min_dist " + std::to_string(min_dist) +
                                           " exceeds code_length " + std::to_string(code_length));
    }
    std::size_t best_seen = 0;
    for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(seed, stream::code, attempt);
        std::vector<BitVector> words;
        words.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            BitVector w(code_length);
            for (std::size_t base = 0; base < code_length; base += 64) {
                const std::uint64_t chunk = rng.next();
                for (std::size_t j = base; j < std::min(code_length, base + 64); ++j) {
                    w.set(j, (chunk >> (j - base)) & 1U);
                }
            }
            words.push_back(std::move(w));
        }
        const std::size_t dmin = pairwise_min_distance(words);
        best_seen = std::max(best_seen, dmin);
        if (dmin >= min_dist) {
            Code code = make_code(std::move(words));
            code.seed = seed;
            code.attempts = attempt + 1;
            return code;
        }
    }
    throw InfeasibleError(best_seen, max_retries);
}

/// The lifted dataset P_x for selector x, plus the x-independent queries.
struct HardInstance {
    Code code;
    BitVector x;
    Dataset dataset;
    std::vector<BitVector> queries;
    std::int64_t c_max = 0;  // min_distance - 1

    [[nodiscard]] std::size_t n() const noexcept { return code.n; }
    [[nodiscard]] std::size_t dim() const noexcept { return code.code_length + 1; }
};

/// u_i = C(i)∘0, the point selected by x_i = 0 and also query q_i.
inline BitVector lifted_zero(const Code& code, std::size_t i) { return code.at(i).appended(false); }
/// v_i = C(i)∘1.
inline BitVector lifted_one(const Code& code, std::size_t i) { return code.at(i).appended(true); }

inline HardInstance build_instance(const Code& code, const BitVector& x) {
    if (x.dim() != code.n) {
        fail(ErrorKind::LengthMismatch,
             "selector length " + std::to_string(x.dim()) + " vs n " + std::to_string(code.n));
    }
    HardInstance inst;
    inst.code = code;
    inst.x = x;
    std::vector<BitVector> points;
    points.reserve(code.n);
    inst.queries.reserve(code.n);
    for (std::size_t i = 1; i <= code.n; ++i) {
        points.push_back(code.at(i).appended(x.get(i - 1)));
        inst.queries.push_back(lifted_zero(code, i));
    }
    inst.dataset = Dataset(std::move(points));
    inst.c_max = static_cast<std::int64_t>(code.min_distance) - 1;
    return inst;
}

/// Index predicted by the forcing argument for query q_i: always i.
inline std::size_t forced_answer(const HardInstance& inst, std::size_t i) {
    if (inst.c_max < 1) fail(ErrorKind::ApproxOutOfRange, "forcing needs min_distance >= 2");
    if (i < 1 || i > inst.n()) fail(ErrorKind::IndexOutOfRange, "query index " + std::to_string(i));
    return i;
}

/// The point the forced answer must be: u_i when x_i = 0, v_i when x_i = 1.
inline const BitVector& forced_point(const HardInstance& inst, std::size_t i) {
    return inst.dataset.at(forced_answer(inst, i));
}

struct ForcingViolation {
    BitVector x;
    std::size_t i = 0;
    std::vector<std::size_t> valid_set;
};

struct ForcingReport {
    ApproxFactor c = ApproxFactor::integer(1);
    bool guaranteed = true;  // c <= c_max
    std::size_t checked = 0;
    std::vector<ForcingViolation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

inline void check_instance_forcing(const HardInstance& inst, const ApproxFactor& c, ForcingReport& report) {
    for (std::size_t i = 1; i <= inst.n(); ++i) {
        auto valid = enumerate_valid_answers(inst.dataset, inst.queries[i - 1], c);
        ++report.checked;
        if (valid.size() != 1 || valid.front() != i) {
            report.violations.push_back({inst.x, i, std::move(valid)});
        }
    }
}

inline void check_forcing_range(std::int64_t c_max, const ApproxFactor& c, bool allow_out_of_range,
                                ForcingReport& report) {
    report.c = c;
    report.guaranteed = c.at_most(c_max);
    if (!report.guaranteed && !allow_out_of_range) {
        fail(ErrorKind::ApproxOutOfRange,
             "c = " + c.to_string() + " exceeds c_max = " + std::to_string(c_max));
    }
}

} // namespace detail

/// Checks that every query of one instance has exactly one valid c-ANN answer
/// and that it is the forced index. With `allow_out_of_range` a c above c_max
/// produces an informational report instead of ApproxOutOfRange.
inline ForcingReport verify_forcing(const HardInstance& inst, const ApproxFactor& c,
                                    bool allow_out_of_range = false) {
    ForcingReport report;
    detail::check_forcing_range(inst.c_max, c, allow_out_of_range, report);
    detail::check_instance_forcing(inst, c, report);
    return report;
}

/// verify_forcing over all 2^n selectors of `code`, split across `workers`
/// threads. Violations are merged in ascending selector order (x read as an
/// integer with x_1 least significant), then by i.
inline ForcingReport verify_forcing_all(const Code& code, const ApproxFactor& c,
                                        bool allow_out_of_range = false, unsigned workers = 0) {
    if (code.n > 24) fail(ErrorKind::TooLarge, "exhaustive selector sweep limited to n <= 24");
    ForcingReport report;
    detail::check_forcing_range(static_cast<std::int64_t>(code.min_distance) - 1, c, allow_out_of_range,
                                report);
    const std::uint64_t total = std::uint64_t{1} << code.n;
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

    std::vector<ForcingReport> parts(workers);
    auto run = [&](unsigned w) {
        for (std::uint64_t xv = w; xv < total; xv += workers) {
            detail::check_instance_forcing(build_instance(code, BitVector::from_integer(xv, code.n)), c,
                                           parts[w]);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (auto& part : parts) {
        report.checked += part.checked;
        for (auto& v : part.violations) report.violations.push_back(std::move(v));
    }
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const ForcingViolation& a, const ForcingViolation& b) {
                         const auto xa = a.x.to_integer();
                         const auto xb = b.x.to_integer();
                         return xa != xb ? xa < xb : a.i < b.i;
                     });
    return report;
}

/// Blind decoder: recovers x_i from the point a sketch returned for q_i
/// without looking at x.
inline bool decode_bit(const Code& code, std::size_t i, const BitVector& answered_point) {
    if (i < 1 || i > code.n) fail(ErrorKind::IndexOutOfRange, "query index " + std::to_string(i));
    if (answered_point.dim() != code.code_length + 1) {
        fail(ErrorKind::DimensionMismatch, "answered point dim " + std::to_string(answered_point.dim()) +
                                               " vs " + std::to_string(code.code_length + 1));
    }
    return answered_point.last();
}

} // namespace annsketch
