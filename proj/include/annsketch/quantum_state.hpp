#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "annsketch/error.hpp"

namespace annsketch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kStateTolerance = 1e-10;

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::DomainError, "binary_entropy needs p in [0,1]");
    auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
    return term(p) + term(1.0 - p);
}

/// (1 - h(p)) * count: the qubit lower bound shared by the random access code
/// bound and the shattering capacity bound.
inline double memory_lower_bound(std::size_t count, double p) {
    if (!(p >= 0.5 && p <= 1.0)) fail(ErrorKind::DomainError, "bound needs p in [1/2, 1]");
    return (1.0 - binary_entropy(p)) * static_cast<double>(count);
}

namespace detail {

inline bool is_diagonal(const Matrix& a) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r != c && a(r, c) != Complex{}) return false;
        }
    }
    return true;
}

inline bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r <= c; ++r) {
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
        }
    }
    return true;
}

/// Ascending eigenvalues of a Hermitian matrix. Diagonal inputs skip the solver.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
    if (is_diagonal(a)) {
        Eigen::VectorXd ev = a.diagonal().real();
        std::sort(ev.data(), ev.data() + ev.size());
        return ev;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline std::size_t qubits_for_dim(Eigen::Index dim) {
    std::size_t m = 0;
    while ((Eigen::Index{1} << m) < dim) ++m;
    if ((Eigen::Index{1} << m) != dim) fail(ErrorKind::InvalidState, "dimension is not a power of two");
    return m;
}

} // namespace detail

/// Density matrix on `qubits` qubits, validated on construction.
class QuantumState {
public:
    explicit QuantumState(Matrix rho) : matrix_(std::move(rho)) {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
            fail(ErrorKind::InvalidState, "density matrix must be square and non-empty");
        }
        qubits_ = detail::qubits_for_dim(matrix_.rows());
        if (!detail::is_hermitian(matrix_, kStateTolerance)) fail(ErrorKind::InvalidState, "not Hermitian");
        if (std::abs(matrix_.trace() - Complex{1.0}) > kStateTolerance) {
            fail(ErrorKind::InvalidState, "trace differs from 1");
        }
        eigenvalues_ = detail::hermitian_eigenvalues(matrix_);
        if (eigenvalues_.minCoeff() < -kStateTolerance) {
            fail(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(eigenvalues_.minCoeff()));
        }
    }

    static QuantumState pure(const ComplexVector& psi) {
        const double norm = psi.norm();
        if (norm == 0.0) fail(ErrorKind::InvalidState, "zero state vector");
        const ComplexVector v = psi / norm;
        return QuantumState(v * v.adjoint());
    }

    static QuantumState basis(std::size_t qubits, std::size_t index) {
        const Eigen::Index dim = Eigen::Index{1} << qubits;
        if (static_cast<Eigen::Index>(index) >= dim) fail(ErrorKind::IndexOutOfRange, "basis index");
        Matrix rho = Matrix::Zero(dim, dim);
        rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
        return QuantumState(std::move(rho));
    }

    static QuantumState maximally_mixed(std::size_t qubits) {
        const Eigen::Index dim = Eigen::Index{1} << qubits;
        return QuantumState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    /// Single-qubit state (I + r·σ)/2 for a Bloch vector with |r| <= 1.
    static QuantumState bloch(double rx, double ry, double rz) {
        Matrix rho(2, 2);
        rho << Complex(1.0 + rz, 0.0), Complex(rx, -ry), Complex(rx, ry), Complex(1.0 - rz, 0.0);
        return QuantumState(rho / 2.0);
    }

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

private:
    Matrix matrix_;
    std::size_t qubits_ = 0;
    Eigen::VectorXd eigenvalues_;
};

/// -Σ λ log2 λ in bits. Eigenvalues in [-1e-10, 0] count as zero; the state
/// constructor already rejects anything more negative.
inline double von_neumann_entropy(const QuantumState& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

/// Positive operator-valued measure with labelled outcomes.
class Povm {
public:
    struct Outcome {
        std::string label;
        Matrix effect;
    };

    explicit Povm(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
        if (outcomes_.empty()) fail(ErrorKind::InvalidPovm, "POVM needs at least one outcome");
        const Eigen::Index dim = outcomes_.front().effect.rows();
        Matrix sum = Matrix::Zero(dim, dim);
        for (const auto& o : outcomes_) {
            if (o.effect.rows() != dim || o.effect.cols() != dim) {
                fail(ErrorKind::InvalidPovm, "effect dimensions differ");
            }
            if (!detail::is_hermitian(o.effect, kStateTolerance)) {
                fail(ErrorKind::InvalidPovm, "effect '" + o.label + "' is not Hermitian");
            }
            if (detail::hermitian_eigenvalues(o.effect).minCoeff() < -kStateTolerance) {
                fail(ErrorKind::InvalidPovm, "effect '" + o.label + "' is not positive semidefinite");
            }
            sum += o.effect;
        }
        const Matrix gap = sum - Matrix::Identity(dim, dim);
        if (gap.cwiseAbs().maxCoeff() > kStateTolerance) {
            fail(ErrorKind::InvalidPovm, "effects do not sum to the identity");
        }
    }

    /// Two-outcome measurement {E, I - E} labelled "0" and "1".
    static Povm binary(const Matrix& effect_for_zero) {
        const Eigen::Index dim = effect_for_zero.rows();
        return Povm({{"0", effect_for_zero}, {"1", Matrix::Identity(dim, dim) - effect_for_zero}});
    }

    /// Projective measurement of the Pauli observable n·σ on one qubit;
    /// outcome "0" is the +1 eigenspace.
    static Povm pauli(double nx, double ny, double nz) {
        Matrix plus(2, 2);
        plus << Complex(1.0 + nz, 0.0), Complex(nx, -ny), Complex(nx, ny), Complex(1.0 - nz, 0.0);
        return binary(plus / 2.0);
    }

    [[nodiscard]] const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return outcomes_.front().effect.rows(); }

private:
    std::vector<Outcome> outcomes_;
};

/// tr(E_k ρ) for every outcome k, in outcome order.
inline std::vector<double> measure(const QuantumState& rho, const Povm& povm) {
    if (povm.dim() != rho.dim()) {
        fail(ErrorKind::DimensionMismatch, "POVM acts on dim " + std::to_string(povm.dim()) +
                                               ", state has dim " + std::to_string(rho.dim()));
    }
    std::vector<double> probs;
    probs.reserve(povm.outcomes().size());
    for (const auto& o : povm.outcomes()) {
        // tr(E ρ) = Σ_{rc} E_{rc} ρ_{cr}
        const double p = o.effect.cwiseProduct(rho.matrix().transpose()).sum().real();
        probs.push_back(std::max(0.0, p));
    }
    return probs;
}

/// Classical-quantum ensemble Σ_x p_x |x><x| ⊗ ρ_x.
class CqEnsemble {
public:
    CqEnsemble(std::vector<std::string> labels, std::vector<double> probabilities,
               std::vector<QuantumState> states)
        : labels_(std::move(labels)), probabilities_(std::move(probabilities)), states_(std::move(states)) {
        if (labels_.empty()) fail(ErrorKind::InvalidEnsemble, "empty ensemble");
        if (labels_.size() != probabilities_.size() || labels_.size() != states_.size()) {
            fail(ErrorKind::InvalidEnsemble, "labels, probabilities and states differ in length");
        }
        double total = 0.0;
        for (double p : probabilities_) {
            if (!(p >= 0.0)) fail(ErrorKind::InvalidEnsemble, "negative probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::InvalidEnsemble, "probabilities do not sum to 1");
        for (const auto& s : states_) {
            if (s.qubits() != states_.front().qubits()) {
                fail(ErrorKind::InvalidEnsemble, "states disagree on qubit count");
            }
        }
    }

    static CqEnsemble uniform(std::vector<std::string> labels, std::vector<QuantumState> states) {
        const double p = labels.empty() ? 0.0 : 1.0 / static_cast<double>(labels.size());
        std::vector<double> probs(labels.size(), p);
        return CqEnsemble(std::move(labels), std::move(probs), std::move(states));
    }

    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    [[nodiscard]] const std::vector<QuantumState>& states() const noexcept { return states_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return states_.front().qubits(); }

    [[nodiscard]] QuantumState average_state() const {
        Matrix avg = Matrix::Zero(states_.front().dim(), states_.front().dim());
        for (std::size_t k = 0; k < states_.size(); ++k) avg += probabilities_[k] * states_[k].matrix();
        return QuantumState(std::move(avg));
    }

private:
    std::vector<std::string> labels_;
    std::vector<double> probabilities_;
    std::vector<QuantumState> states_;
};

/// I(X:B) = S(Σ p_x ρ_x) - Σ p_x S(ρ_x).
inline double holevo_mutual_information(const CqEnsemble& ens) {
    double conditional = 0.0;
    for (std::size_t k = 0; k < ens.states().size(); ++k) {
        conditional += ens.probabilities()[k] * von_neumann_entropy(ens.states()[k]);
    }
    return von_neumann_entropy(ens.average_state()) - conditional;
}

/// Chain-rule terms I(X_i : B | X_{<i}) for a uniform ensemble over all of
/// {0,1}^n. For each prefix a the term is the Holevo quantity of the two
/// states obtained by fixing X_{<i} = a, X_i = b and averaging the suffix,
/// then averaged over a. The terms telescope to holevo_mutual_information.
inline std::vector<double> conditional_information_chain(const CqEnsemble& ens) {
    const auto& labels = ens.labels();
    const std::size_t n = labels.front().size();
    if (n > 20 || labels.size() != (std::size_t{1} << n)) {
        fail(ErrorKind::UnsupportedPrior, "labels must be the full cube {0,1}^n");
    }
    std::map<std::string, std::size_t> index_of;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto& l = labels[k];
        if (l.size() != n || l.find_first_not_of("01") != std::string::npos) {
            fail(ErrorKind::UnsupportedPrior, "label '" + l + "' is not a length-" + std::to_string(n) + " bit string");
        }
        if (!index_of.emplace(l, k).second) fail(ErrorKind::UnsupportedPrior, "duplicate label '" + l + "'");
        if (std::abs(ens.probabilities()[k] - 1.0 / static_cast<double>(labels.size())) > 1e-12) {
            fail(ErrorKind::UnsupportedPrior, "prior is not uniform");
        }
    }

    const Eigen::Index dim = ens.states().front().dim();
    // Average of ρ_x over all x starting with `prefix`.
    auto block_average = [&](const std::string& prefix) {
        const std::size_t free_bits = n - prefix.size();
        const std::size_t count = std::size_t{1} << free_bits;
        Matrix avg = Matrix::Zero(dim, dim);
        for (std::size_t s = 0; s < count; ++s) {
            std::string label = prefix;
            for (std::size_t b = 0; b < free_bits; ++b) label.push_back(((s >> b) & 1U) ? '1' : '0');
            avg += ens.states()[index_of.at(label)].matrix();
        }
        return QuantumState(avg / static_cast<double>(count));
    };

    std::vector<double> terms;
    terms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prefixes = std::size_t{1} << i;
        double term = 0.0;
        for (std::size_t a = 0; a < prefixes; ++a) {
            std::string prefix;
            for (std::size_t b = 0; b < i; ++b) prefix.push_back(((a >> b) & 1U) ? '1' : '0');
            const double joint = von_neumann_entropy(block_average(prefix));
            const double given0 = von_neumann_entropy(block_average(prefix + "0"));
            const double given1 = von_neumann_entropy(block_average(prefix + "1"));
            term += joint - 0.5 * (given0 + given1);
        }
        terms.push_back(term / static_cast<double>(prefixes));
    }
    return terms;
}

} // namespace annsketch
