#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annsketch/error.hpp"

namespace annsketch {

/// A point of {0,1}^d. Coordinates are packed 64 per word, coordinate 0 in the
/// least significant bit of word 0; bits past `dim` are always zero so that
/// word-level equality and popcount distances are exact.
class BitVector {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t dim) : dim_(dim), words_((dim + word_bits - 1) / word_bits, 0) {}

    /// Parses the textual form: '0'/'1' characters, coordinate 0 first.
    static BitVector from_string(std::string_view text) {
        BitVector v(text.size());
        for (std::size_t j = 0; j < text.size(); ++j) {
            if (text[j] == '1') {
                v.set(j, true);
            } else if (text[j] != '0') {
                fail(ErrorKind::ParseError, "bit string contains '" + std::string(1, text[j]) + "'");
            }
        }
        return v;
    }

    /// Low `dim` bits of `value`, bit j of the integer becoming coordinate j.
    static BitVector from_integer(std::uint64_t value, std::size_t dim) {
        if (dim > word_bits) fail(ErrorKind::InvalidParams, "from_integer supports dim <= 64");
        BitVector v(dim);
        if (dim > 0) v.words_[0] = dim == word_bits ? value : value & ((word_type{1} << dim) - 1);
        return v;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const word_type> words() const noexcept { return words_; }

    [[nodiscard]] bool get(std::size_t j) const {
        check_index(j);
        return (words_[j / word_bits] >> (j % word_bits)) & 1U;
    }

    void set(std::size_t j, bool bit) {
        check_index(j);
        const word_type mask = word_type{1} << (j % word_bits);
        if (bit) {
            words_[j / word_bits] |= mask;
        } else {
            words_[j / word_bits] &= ~mask;
        }
    }

    [[nodiscard]] bool operator[](std::size_t j) const { return get(j); }

    [[nodiscard]] bool last() const {
        if (dim_ == 0) fail(ErrorKind::DimensionMismatch, "empty vector has no last coordinate");
        return get(dim_ - 1);
    }

    /// Concatenation `*this ∘ bit`, one coordinate longer.
    [[nodiscard]] BitVector appended(bool bit) const {
        BitVector out(dim_ + 1);
        std::copy(words_.begin(), words_.end(), out.words_.begin());
        out.set(dim_, bit);
        return out;
    }

    [[nodiscard]] BitVector complemented() const {
        BitVector out(*this);
        for (auto& w : out.words_) w = ~w;
        out.clear_tail();
        return out;
    }

    [[nodiscard]] std::size_t popcount() const noexcept {
        std::size_t total = 0;
        for (word_type w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    /// Integer with bit j equal to coordinate j; dim must be <= 64.
    [[nodiscard]] std::uint64_t to_integer() const {
        if (dim_ > word_bits) fail(ErrorKind::InvalidParams, "to_integer supports dim <= 64");
        return words_.empty() ? 0 : words_[0];
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(dim_, '0');
        for (std::size_t j = 0; j < dim_; ++j) {
            if (get(j)) s[j] = '1';
        }
        return s;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    friend bool operator<(const BitVector& a, const BitVector& b) {
        return a.to_string() < b.to_string();
    }

private:
    void check_index(std::size_t j) const {
        if (j >= dim_) {
            fail(ErrorKind::IndexOutOfRange,
                 "coordinate " + std::to_string(j) + " outside dim " + std::to_string(dim_));
        }
    }

    void clear_tail() noexcept {
        const std::size_t rem = dim_ % word_bits;
        if (rem != 0 && !words_.empty()) words_.back() &= (word_type{1} << rem) - 1;
    }

    std::size_t dim_ = 0;
    std::vector<word_type> words_;
};

inline std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.dim() != b.dim()) {
        fail(ErrorKind::DimensionMismatch,
             "dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t total = 0;
    for (std::size_t k = 0; k < wa.size(); ++k) {
        total += static_cast<std::size_t>(std::popcount(wa[k] ^ wb[k]));
    }
    return total;
}

/// An ordered, non-empty list of points of a common dimension. Indices are
/// 1-based at the API boundary.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<BitVector> points) : points_(std::move(points)) {
        if (points_.empty()) fail(ErrorKind::InvalidParams, "dataset needs at least one point");
        for (const auto& p : points_) {
            if (p.dim() != points_.front().dim()) {
                fail(ErrorKind::DimensionMismatch, "dataset points disagree on dim");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept {
        return points_.empty() ? 0 : points_.front().dim();
    }
    [[nodiscard]] const std::vector<BitVector>& points() const noexcept { return points_; }

    /// 1-based access.
    [[nodiscard]] const BitVector& at(std::size_t index) const {
        if (index < 1 || index > points_.size()) {
            fail(ErrorKind::IndexOutOfRange,
                 "index " + std::to_string(index) + " outside 1.." + std::to_string(points_.size()));
        }
        return points_[index - 1];
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<BitVector> points_;
};

/// Approximation factor c >= 1. Rational factors compare exactly in integer
/// arithmetic; factors built from a double compare in floating point with no
/// tolerance.
class ApproxFactor {
public:
    static ApproxFactor rational(std::int64_t num, std::int64_t den) {
        if (den <= 0) fail(ErrorKind::InvalidApproximation, "denominator must be positive");
        const std::int64_t g = std::gcd(num, den);
        ApproxFactor c;
        c.num_ = num / g;
        c.den_ = den / g;
        c.exact_ = true;
        c.value_ = static_cast<double>(c.num_) / static_cast<double>(c.den_);
        c.check();
        return c;
    }

    static ApproxFactor integer(std::int64_t value) { return rational(value, 1); }

    static ApproxFactor real(double value) {
        ApproxFactor c;
        c.value_ = value;
        c.exact_ = false;
        c.check();
        return c;
    }

    /// Accepts "2", "3/2" and finite decimals such as "1.25"; all are exact.
    static ApproxFactor parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            return rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
        }
        const auto dot = text.find('.');
        if (dot == std::string_view::npos) return integer(parse_int(text));
        const auto frac = text.substr(dot + 1);
        if (frac.size() > 15) fail(ErrorKind::ParseError, "too many decimals in factor");
        std::int64_t den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        const std::int64_t whole = dot == 0 ? 0 : parse_int(text.substr(0, dot));
        const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
        return rational(whole * den + part, den);
    }

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] bool is_exact() const noexcept { return exact_; }

    /// Whether `candidate <= c * best` holds.
    [[nodiscard]] bool admits(std::size_t candidate, std::size_t best) const noexcept {
        if (exact_) {
            using wide = __int128;
            return static_cast<wide>(candidate) * den_ <= static_cast<wide>(num_) * static_cast<wide>(best);
        }
        return static_cast<double>(candidate) <= value_ * static_cast<double>(best);
    }

    /// Exact comparison against an integer bound, used for c <= c_max checks.
    [[nodiscard]] bool at_most(std::int64_t bound) const noexcept {
        if (exact_) return static_cast<__int128>(num_) <= static_cast<__int128>(bound) * den_;
        return value_ <= static_cast<double>(bound);
    }

    [[nodiscard]] std::string to_string() const {
        if (!exact_) {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, value_);
            return std::string(buf, res.ptr);
        }
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static std::int64_t parse_int(std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            fail(ErrorKind::ParseError, "bad approximation factor '" + std::string(s) + "'");
        }
        return v;
    }

    void check() const {
        if (!(value_ >= 1.0) || !std::isfinite(value_) || (exact_ && num_ < den_)) {
            fail(ErrorKind::InvalidApproximation, "c must be a finite real >= 1");
        }
    }

    std::int64_t num_ = 1;
    std::int64_t den_ = 1;
    bool exact_ = true;
    double value_ = 1.0;
};

struct Neighbor {
    std::size_t index;    // 1-based
    std::size_t distance;
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact nearest neighbor by linear scan; ties go to the smallest index.
inline Neighbor nearest_neighbor_bruteforce(const Dataset& data, const BitVector& query) {
    if (query.dim() != data.dim()) {
        fail(ErrorKind::DimensionMismatch,
             "query dim " + std::to_string(query.dim()) + " vs dataset dim " + std::to_string(data.dim()));
    }
    Neighbor best{0, std::numeric_limits<std::size_t>::max()};
    const auto& pts = data.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::size_t dist = hamming_distance(pts[k], query);
        if (dist < best.distance) best = {k + 1, dist};
    }
    return best;
}

inline bool is_valid_cann_answer(const Dataset& data, const BitVector& query, std::size_t index,
                                 const ApproxFactor& c) {
    const BitVector& answer = data.at(index);
    const Neighbor best = nearest_neighbor_bruteforce(data, query);
    return c.admits(hamming_distance(query, answer), best.distance);
}

/// Every index that is a correct c-ANN answer for `query`, ascending.
inline std::vector<std::size_t> enumerate_valid_answers(const Dataset& data, const BitVector& query,
                                                        const ApproxFactor& c) {
    const Neighbor best = nearest_neighbor_bruteforce(data, query);
    std::vector<std::size_t> out;
    const auto& pts = data.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (c.admits(hamming_distance(pts[k], query), best.distance)) out.push_back(k + 1);
    }
    return out;
}

} // namespace annsketch
