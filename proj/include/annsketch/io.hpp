#pragma once

// JSON forms of the library's objects. Kept out of the algorithm headers so
// they compile without the JSON dependency.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "annsketch/capacity.hpp"
#include "annsketch/error.hpp"
#include "annsketch/grover.hpp"
#include "annsketch/hamming.hpp"
#include "annsketch/hard_instance.hpp"
#include "annsketch/qrac.hpp"
#include "annsketch/quantum_state.hpp"

namespace annsketch::io {

using json = nlohmann::ordered_json;

namespace detail {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

inline const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::vector<BitVector> bit_vectors(const json& arr) {
    if (!arr.is_array()) fail(ErrorKind::ParseError, "expected an array of bit strings");
    std::vector<BitVector> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_string()) fail(ErrorKind::ParseError, "expected a bit string");
        out.push_back(BitVector::from_string(e.get<std::string>()));
    }
    return out;
}

inline json strings(const std::vector<BitVector>& vs) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(v.to_string());
    return arr;
}

} // namespace detail

inline json to_json(const Dataset& data) {
    return json{{"dim", data.dim()}, {"points", detail::strings(data.points())}};
}

inline Dataset dataset_from_json(const json& j) {
    const auto dim = detail::field<std::size_t>(j, "dim");
    auto points = detail::bit_vectors(detail::member(j, "points"));
    for (const auto& p : points) {
        if (p.dim() != dim) fail(ErrorKind::DimensionMismatch, "point length differs from declared dim");
    }
    return Dataset(std::move(points));
}

inline json to_json(const Code& code) {
    return json{{"n", code.n},
                {"code_length", code.code_length},
                {"min_distance", code.min_distance},
                {"codewords", detail::strings(code.codewords)},
                {"seed", code.seed},
                {"attempts", code.attempts}};
}

/// Rebuilds a code and checks that the stored min_distance matches a fresh
/// pairwise computation.
inline Code code_from_json(const json& j) {
    Code code = make_code(detail::bit_vectors(detail::member(j, "codewords")));
    if (code.n != detail::field<std::size_t>(j, "n") ||
        code.code_length != detail::field<std::size_t>(j, "code_length")) {
        fail(ErrorKind::ParseError, "n or code_length disagrees with the codewords");
    }
    if (code.min_distance != detail::field<std::size_t>(j, "min_distance")) {
        fail(ErrorKind::ParseError, "stored min_distance does not match the codewords");
    }
    if (j.contains("seed")) code.seed = detail::field<std::uint64_t>(j, "seed");
    if (j.contains("attempts")) code.attempts = detail::field<std::size_t>(j, "attempts");
    return code;
}

inline json to_json(const HardInstance& inst) {
    return json{{"n", inst.code.n},
                {"code_length", inst.code.code_length},
                {"min_distance", inst.code.min_distance},
                {"codewords", detail::strings(inst.code.codewords)},
                {"x", inst.x.to_string()},
                {"dataset", detail::strings(inst.dataset.points())},
                {"queries", detail::strings(inst.queries)},
                {"seed", inst.code.seed}};
}

inline HardInstance instance_from_json(const json& j) {
    const Code code = code_from_json(j);
    HardInstance inst = build_instance(code, BitVector::from_string(detail::field<std::string>(j, "x")));
    if (detail::bit_vectors(detail::member(j, "dataset")) != inst.dataset.points()) {
        fail(ErrorKind::ParseError, "dataset is not the lift of the codewords by x");
    }
    if (detail::bit_vectors(detail::member(j, "queries")) != inst.queries) {
        fail(ErrorKind::ParseError, "queries are not C(i)∘0");
    }
    return inst;
}

inline json to_json(const ForcingReport& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations) {
        violations.push_back(json{{"x", v.x.to_string()}, {"i", v.i}, {"valid_set", v.valid_set}});
    }
    return json{{"c", rep.c.value()}, {"checked", rep.checked}, {"violations", violations}};
}

inline json to_json(const QuantumState& rho) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < rho.dim(); ++r) {
        json rr = json::array();
        json ir = json::array();
        for (Eigen::Index c = 0; c < rho.dim(); ++c) {
            rr.push_back(rho.matrix()(r, c).real());
            ir.push_back(rho.matrix()(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    return json{{"qubits", rho.qubits()}, {"re", re}, {"im", im}};
}

inline QuantumState state_from_json(const json& j) {
    const auto qubits = detail::field<std::size_t>(j, "qubits");
    const auto re = detail::field<std::vector<std::vector<double>>>(j, "re");
    const auto im = detail::field<std::vector<std::vector<double>>>(j, "im");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
    if (static_cast<Eigen::Index>(re.size()) != dim || static_cast<Eigen::Index>(im.size()) != dim) {
        fail(ErrorKind::ParseError, "matrix rows do not match 2^qubits");
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        if (static_cast<Eigen::Index>(re[r].size()) != dim || static_cast<Eigen::Index>(im[r].size()) != dim) {
            fail(ErrorKind::ParseError, "matrix columns do not match 2^qubits");
        }
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
    }
    return QuantumState(std::move(m));
}

inline json to_json(const QracEvaluation& eval) {
    json table = json::array();
    for (const auto& e : eval.table) table.push_back(json{{"x", e.x.to_string()}, {"i", e.i}, {"p", e.p}});
    return json{{"n", eval.n}, {"m", eval.m}, {"worst_p", eval.worst_p}, {"table", table}};
}

inline json to_json(const NayakCertificate& cert) {
    return json{{"n", cert.n},           {"m", cert.m},         {"worst_case_p", cert.worst_case_p},
                {"bound", cert.bound},   {"satisfied", cert.satisfied}, {"slack", cert.slack}};
}

inline json to_json(const AuditReport& r) {
    return json{{"n", r.n},
                {"m", r.m},
                {"worst_p", r.worst_p},
                {"mutual_information", r.mutual_information},
                {"chain_terms", r.chain_terms},
                {"chain_sum", r.chain_sum},
                {"per_term_floor", r.per_term_floor},
                {"lower_bound", r.lower_bound},
                {"upper_bound", r.upper_bound},
                {"lower_ok", r.lower_ok},
                {"upper_ok", r.upper_ok},
                {"chain_ok", r.chain_ok},
                {"terms_ok", r.terms_ok},
                {"holds", r.holds()}};
}

inline json to_json(const GroverRun& run) {
    return json{{"M", run.size},
                {"t", run.marked.size()},
                {"marked", run.marked},
                {"k", run.iterations},
                {"queries_used", run.queries_used},
                {"success_probability", run.success_probability},
                {"sampled", run.sampled},
                {"found", run.found ? json(*run.found) : json(nullptr)},
                {"seed", run.seed}};
}

inline json to_json(const std::vector<ScalingRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back(json{{"M", r.size},
                           {"t", r.t},
                           {"k_opt", r.k_opt},
                           {"ratio", r.ratio},
                           {"exact_success", r.exact_success},
                           {"empirical_success", r.empirical_success},
                           {"trials", r.trials}});
    }
    return json{{"rows", arr}};
}

inline std::string to_csv(const std::vector<ScalingRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "M,t,k_opt,ratio,empirical_success\n";
    for (const auto& r : rows) {
        out << r.size << ',' << r.t << ',' << r.k_opt << ',' << r.ratio << ',' << r.empirical_success << '\n';
    }
    return out.str();
}

inline json to_json(const HybridReport& rep) {
    json rows = json::array();
    for (std::size_t s = 0; s < rep.size; ++s) rows.push_back(json{{"s", s}, {"D_s", rep.displacement[s]}});
    return json{{"M", rep.size},     {"Q", rep.queries}, {"rows", rows},
                {"average", rep.average}, {"bound", rep.bound}, {"holds", rep.holds}};
}

/// (s, D_s) rows followed by a summary row "average,<avg>,bound,<4Q²/M>".
inline std::string to_csv(const HybridReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "s,D_s\n";
    for (std::size_t s = 0; s < rep.size; ++s) out << s << ',' << rep.displacement[s] << '\n';
    out << "average," << rep.average << ",bound," << rep.bound << '\n';
    return out.str();
}

inline json to_json(const DistinguishabilityReport& r) {
    return json{{"M", r.size},
                {"Q", r.queries},
                {"average_displacement", r.average_displacement},
                {"basis_guess_success", r.basis_guess_success},
                {"any_measurement_bound", r.any_measurement_bound},
                {"indistinguishable", r.indistinguishable}};
}

inline json to_json(const ShatteringResult& res, double p) {
    return json{{"t", res.t},
                {"num_datasets", res.num_datasets},
                {"distinct_labelings", res.distinct_labelings},
                {"shattered", res.shattered},
                {"bound_at_p", json{{"p", p}, {"qubits", capacity_bound(res.t, p)}}}};
}

} // namespace annsketch::io
