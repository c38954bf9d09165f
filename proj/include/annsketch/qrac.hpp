#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "annsketch/error.hpp"
#include "annsketch/hamming.hpp"
#include "annsketch/hard_instance.hpp"
#include "annsketch/quantum_state.hpp"
#include "annsketch/rng.hpp"

namespace annsketch {

/// Quantum random access code: x ∈ {0,1}^n ↦ ρ_x on `qubits` qubits, with one
/// two-outcome decoder per index whose outcome "b" is the guess x_i = b.
/// States are produced on demand so large schemes need not be materialised.
struct QracScheme {
    std::string name;
    std::size_t n = 0;
    std::size_t qubits = 0;
    std::function<QuantumState(const BitVector& x)> encoder;
    std::vector<Povm> decoders;  // decoders[i-1] decodes x_i
};

struct QracEntry {
    BitVector x;
    std::size_t i = 0;
    double p = 0.0;
};

struct QracEvaluation {
    std::size_t n = 0;
    std::size_t m = 0;
    double worst_p = 1.0;
    double best_p = 0.0;
    std::vector<QracEntry> table;  // ordered by x (as integer, x_1 least significant), then i
};

namespace detail {

inline std::size_t outcome_index(const Povm& povm, const std::string& label) {
    const auto& outs = povm.outcomes();
    for (std::size_t k = 0; k < outs.size(); ++k) {
        if (outs[k].label == label) return k;
    }
    fail(ErrorKind::InvalidScheme, "decoder has no outcome '" + label + "'");
}

inline void validate_scheme(const QracScheme& scheme) {
    if (scheme.n < 1 || scheme.n > 20) fail(ErrorKind::InvalidScheme, "n must be in 1..20");
    if (!scheme.encoder) fail(ErrorKind::InvalidScheme, "missing encoder");
    if (scheme.decoders.size() != scheme.n) fail(ErrorKind::InvalidScheme, "need one decoder per index");
    const Eigen::Index dim = Eigen::Index{1} << scheme.qubits;
    for (const auto& d : scheme.decoders) {
        if (d.outcomes().size() != 2 || d.dim() != dim) {
            fail(ErrorKind::InvalidScheme, "decoders must be binary POVMs on the code space");
        }
        outcome_index(d, "0");
        outcome_index(d, "1");
    }
}

} // namespace detail

/// Success probability of every (x, i) pair and the worst case over them.
inline QracEvaluation evaluate_qrac(const QracScheme& scheme) {
    detail::validate_scheme(scheme);
    QracEvaluation eval;
    eval.n = scheme.n;
    eval.m = scheme.qubits;
    const std::uint64_t total = std::uint64_t{1} << scheme.n;
    eval.table.reserve(total * scheme.n);
    for (std::uint64_t xv = 0; xv < total; ++xv) {
        const BitVector x = BitVector::from_integer(xv, scheme.n);
        const QuantumState rho = scheme.encoder(x);
        if (rho.qubits() != scheme.qubits) {
            fail(ErrorKind::InvalidScheme, "encoder produced " + std::to_string(rho.qubits()) + " qubits for x=" +
                                               x.to_string());
        }
        for (std::size_t i = 1; i <= scheme.n; ++i) {
            const Povm& dec = scheme.decoders[i - 1];
            const auto probs = measure(rho, dec);
            const double p = probs[detail::outcome_index(dec, x.get(i - 1) ? "1" : "0")];
            eval.worst_p = std::min(eval.worst_p, p);
            eval.best_p = std::max(eval.best_p, p);
            eval.table.push_back({x, i, p});
        }
    }
    return eval;
}

/// Two bits in one qubit: Bloch vector ((-1)^{x_2}, 0, (-1)^{x_1})/√2, read
/// out in the Z basis for x_1 and the X basis for x_2.
inline QracScheme qrac_2to1() {
    QracScheme s;
    s.name = "2to1";
    s.n = 2;
    s.qubits = 1;
    s.encoder = [](const BitVector& x) {
        const double r = 1.0 / std::sqrt(2.0);
        const double sz = x.get(0) ? -r : r;
        const double sx = x.get(1) ? -r : r;
        return QuantumState::bloch(sx, 0.0, sz);
    };
    s.decoders = {Povm::pauli(0, 0, 1), Povm::pauli(1, 0, 0)};
    return s;
}

/// Three bits in one qubit: Bloch vectors at the cube corners
/// ((-1)^{x_1}, (-1)^{x_2}, (-1)^{x_3})/√3, decoded by X, Y and Z.
inline QracScheme qrac_3to1() {
    QracScheme s;
    s.name = "3to1";
    s.n = 3;
    s.qubits = 1;
    s.encoder = [](const BitVector& x) {
        const double r = 1.0 / std::sqrt(3.0);
        return QuantumState::bloch(x.get(0) ? -r : r, x.get(1) ? -r : r, x.get(2) ? -r : r);
    };
    s.decoders = {Povm::pauli(1, 0, 0), Povm::pauli(0, 1, 0), Povm::pauli(0, 0, 1)};
    return s;
}

namespace detail {

/// Diagonal projector onto computational basis states whose bit `qubit` equals `value`.
inline Matrix qubit_projector(std::size_t qubits, std::size_t qubit, bool value) {
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    Matrix proj = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (((static_cast<std::uint64_t>(k) >> qubit) & 1U) == static_cast<std::uint64_t>(value)) proj(k, k) = 1.0;
    }
    return proj;
}

} // namespace detail

/// Classical baseline: ρ_x = |x><x| on n qubits, qubit i-1 holding x_i.
inline QracScheme basis_encoding_qrac(std::size_t n) {
    if (n < 1 || n > 10) fail(ErrorKind::TooLarge, "basis encoding supports 1 <= n <= 10");
    QracScheme s;
    s.name = "basis";
    s.n = n;
    s.qubits = n;
    s.encoder = [n](const BitVector& x) { return QuantumState::basis(n, x.to_integer()); };
    for (std::size_t i = 0; i < n; ++i) s.decoders.push_back(Povm::binary(detail::qubit_projector(n, i, false)));
    return s;
}

/// Minimum qubits for an (n, m, p) random access code: (1 - h(p)) n.
inline double nayak_bound(std::size_t n, double p) {
    if (!(p >= 0.5)) fail(ErrorKind::DomainError, "nayak_bound needs p >= 1/2");
    return memory_lower_bound(n, p);
}

struct NayakCertificate {
    std::size_t n = 0;
    std::size_t m = 0;
    double worst_case_p = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool satisfied = false;
};

inline NayakCertificate certify_nayak(std::size_t n, std::size_t m, double p) {
    if (p < 0.5) fail(ErrorKind::SubRandomDecoder, "worst-case success " + std::to_string(p) + " < 1/2");
    NayakCertificate cert;
    cert.n = n;
    cert.m = m;
    cert.worst_case_p = std::min(p, 1.0);
    cert.bound = nayak_bound(n, cert.worst_case_p);
    cert.slack = static_cast<double>(m) - cert.bound;
    cert.satisfied = cert.slack >= -1e-9;
    return cert;
}

inline NayakCertificate certify_nayak(const QracScheme& scheme) {
    const QracEvaluation eval = evaluate_qrac(scheme);
    return certify_nayak(scheme.n, scheme.qubits, eval.worst_p);
}

struct AuditReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double worst_p = 0.0;
    double mutual_information = 0.0;
    std::vector<double> chain_terms;
    double chain_sum = 0.0;
    double lower_bound = 0.0;  // n (1 - h(p))
    double upper_bound = 0.0;  // m
    double per_term_floor = 0.0;  // 1 - h(p)
    bool lower_ok = false;
    bool upper_ok = false;
    bool chain_ok = false;
    bool terms_ok = false;

    [[nodiscard]] bool holds() const noexcept { return lower_ok && upper_ok && chain_ok && terms_ok; }
};

inline CqEnsemble scheme_ensemble(const QracScheme& scheme) {
    detail::validate_scheme(scheme);
    std::vector<std::string> labels;
    std::vector<QuantumState> states;
    const std::uint64_t total = std::uint64_t{1} << scheme.n;
    for (std::uint64_t xv = 0; xv < total; ++xv) {
        const BitVector x = BitVector::from_integer(xv, scheme.n);
        labels.push_back(x.to_string());
        states.push_back(scheme.encoder(x));
    }
    return CqEnsemble::uniform(std::move(labels), std::move(states));
}

/// Evaluates both sides of n(1 - h(p)) <= I(X:B) <= m for the uniform
/// ensemble of the scheme, plus the chain-rule decomposition of I(X:B).
inline AuditReport information_audit(const QracScheme& scheme) {
    if (scheme.n > 3) fail(ErrorKind::TooLarge, "information audit supports n <= 3");
    const QracEvaluation eval = evaluate_qrac(scheme);
    if (eval.worst_p < 0.5) fail(ErrorKind::SubRandomDecoder, "worst-case success below 1/2");
    const CqEnsemble ens = scheme_ensemble(scheme);

    AuditReport r;
    r.n = scheme.n;
    r.m = scheme.qubits;
    r.worst_p = eval.worst_p;
    r.mutual_information = holevo_mutual_information(ens);
    r.chain_terms = conditional_information_chain(ens);
    for (double t : r.chain_terms) r.chain_sum += t;
    r.per_term_floor = 1.0 - binary_entropy(std::min(eval.worst_p, 1.0));
    r.lower_bound = nayak_bound(scheme.n, std::min(eval.worst_p, 1.0));
    r.upper_bound = static_cast<double>(scheme.qubits);
    r.lower_ok = r.lower_bound - 1e-6 <= r.mutual_information;
    r.upper_ok = r.mutual_information <= r.upper_bound + 1e-9;
    r.chain_ok = std::abs(r.chain_sum - r.mutual_information) <= 1e-9;
    r.terms_ok = true;
    for (double t : r.chain_terms) r.terms_ok = r.terms_ok && t >= r.per_term_floor - 1e-6;
    return r;
}

/// A dataset sketch in the fresh-copy model: a dataset is encoded into one
/// state and each query is answered by a query-dependent measurement whose
/// outcomes are labelled by the returned point's bit string.
class SketchSimulator {
public:
    virtual ~SketchSimulator() = default;

    [[nodiscard]] virtual std::size_t qubits() const = 0;
    /// Dimension of the points the sketch accepts.
    [[nodiscard]] virtual std::size_t dimension() const = 0;
    [[nodiscard]] virtual QuantumState encode(const Dataset& data) const = 0;
    [[nodiscard]] virtual Povm answer_measurement(const BitVector& query) const = 0;

    /// Measures a fresh copy of the sketch state and returns the answered point.
    [[nodiscard]] BitVector answer(const BitVector& query, QuantumState fresh_copy, Rng& rng) const {
        const Povm povm = answer_measurement(query);
        const auto probs = measure(fresh_copy, povm);
        double u = rng.uniform01();
        for (std::size_t k = 0; k < probs.size(); ++k) {
            if (u < probs[k] || k + 1 == probs.size()) return BitVector::from_string(povm.outcomes()[k].label);
            u -= probs[k];
        }
        return BitVector::from_string(povm.outcomes().back().label);
    }
};

/// Classical sketches over the hard family of a fixed code. The state is the
/// basis state |x> holding each point's appended label bit; answering a query
/// is exact nearest-neighbor search over the reconstructed dataset, returned
/// correctly with probability `p_correct` and otherwise with its last
/// coordinate toggled.
class LookupSketch : public SketchSimulator {
public:
    explicit LookupSketch(Code code, double p_correct = 1.0) : code_(std::move(code)), p_correct_(p_correct) {
        if (code_.n > 10) fail(ErrorKind::TooLarge, "lookup sketch stores one qubit per point; n <= 10");
        if (!(p_correct_ >= 0.0 && p_correct_ <= 1.0)) fail(ErrorKind::DomainError, "p_correct outside [0,1]");
    }

    [[nodiscard]] std::size_t qubits() const override { return code_.n; }
    [[nodiscard]] std::size_t dimension() const override { return code_.code_length + 1; }
    [[nodiscard]] double p_correct() const noexcept { return p_correct_; }

    [[nodiscard]] QuantumState encode(const Dataset& data) const override {
        if (data.size() != code_.n || data.dim() != dimension()) {
            fail(ErrorKind::IncompatibleSketch, "dataset shape does not match the sketch's code");
        }
        std::uint64_t x = 0;
        for (std::size_t j = 1; j <= code_.n; ++j) {
            if (data.at(j).last()) x |= std::uint64_t{1} << (j - 1);
        }
        return QuantumState::basis(code_.n, x);
    }

    [[nodiscard]] Povm answer_measurement(const BitVector& query) const override {
        const Eigen::Index dim = Eigen::Index{1} << code_.n;
        std::map<std::string, Matrix> effects;
        auto add = [&](const BitVector& point, Eigen::Index k, double w) {
            if (w == 0.0) return;
            auto [it, inserted] = effects.try_emplace(point.to_string(), Matrix());
            if (inserted) it->second = Matrix::Zero(dim, dim);
            it->second(k, k) += w;
        };
        for (Eigen::Index k = 0; k < dim; ++k) {
            const HardInstance inst =
                build_instance(code_, BitVector::from_integer(static_cast<std::uint64_t>(k), code_.n));
            const Neighbor nn = nearest_neighbor_bruteforce(inst.dataset, query);
            const BitVector& point = inst.dataset.at(nn.index);
            BitVector toggled = point;
            toggled.set(point.dim() - 1, !point.last());
            add(point, k, p_correct_);
            add(toggled, k, 1.0 - p_correct_);
        }
        std::vector<Povm::Outcome> outs;
        for (auto& [label, effect] : effects) outs.push_back({label, std::move(effect)});
        return Povm(std::move(outs));
    }

private:
    Code code_;
    double p_correct_;
};

/// Turns a sketch for the hard family of `code` into a random access code:
/// ρ_x is the sketch state of P_x, and x_i is decoded by asking query q_i and
/// reading the last coordinate of the answered point.
inline QracScheme sketch_to_qrac(std::shared_ptr<const SketchSimulator> sketch, const Code& code) {
    if (sketch->dimension() != code.code_length + 1) {
        fail(ErrorKind::IncompatibleSketch, "sketch dimension " + std::to_string(sketch->dimension()) +
                                                " vs lifted dimension " + std::to_string(code.code_length + 1));
    }
    if (code.min_distance < 2) fail(ErrorKind::InvalidParams, "reduction needs min_distance >= 2");
    QracScheme s;
    s.name = "sketch";
    s.n = code.n;
    s.qubits = sketch->qubits();
    s.encoder = [sketch, code](const BitVector& x) { return sketch->encode(build_instance(code, x).dataset); };
    for (std::size_t i = 1; i <= code.n; ++i) {
        const Povm answer = sketch->answer_measurement(lifted_zero(code, i));
        const Eigen::Index dim = answer.dim();
        Matrix zero = Matrix::Zero(dim, dim);
        for (const auto& o : answer.outcomes()) {
            if (!decode_bit(code, i, BitVector::from_string(o.label))) zero += o.effect;
        }
        s.decoders.push_back(Povm::binary(zero));
    }
    return s;
}

/// Worst case over (x, i) of the probability that the sketch's answer to q_i
/// on P_x is a correct c-ANN answer.
inline double sketch_ann_success(const SketchSimulator& sketch, const Code& code, const ApproxFactor& c) {
    double worst = 1.0;
    std::vector<Povm> answers;
    for (std::size_t i = 1; i <= code.n; ++i) answers.push_back(sketch.answer_measurement(lifted_zero(code, i)));
    const std::uint64_t total = std::uint64_t{1} << code.n;
    for (std::uint64_t xv = 0; xv < total; ++xv) {
        const HardInstance inst = build_instance(code, BitVector::from_integer(xv, code.n));
        const QuantumState rho = sketch.encode(inst.dataset);
        for (std::size_t i = 1; i <= code.n; ++i) {
            const auto valid = enumerate_valid_answers(inst.dataset, inst.queries[i - 1], c);
            const auto probs = measure(rho, answers[i - 1]);
            double p = 0.0;
            for (std::size_t k = 0; k < probs.size(); ++k) {
                const BitVector point = BitVector::from_string(answers[i - 1].outcomes()[k].label);
                for (std::size_t j : valid) {
                    if (inst.dataset.at(j) == point) {
                        p += probs[k];
                        break;
                    }
                }
            }
            worst = std::min(worst, p);
        }
    }
    return worst;
}

} // namespace annsketch
