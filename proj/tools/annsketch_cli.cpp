// annsketch: command-line driver for the hard-instance, random access code,
// Grover and shattering experiments. Exit codes: 0 success, 1 a checked
// mathematical property failed (diagnostic report still written), 2 usage or
// parameter error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annsketch/annsketch.hpp"
#include "annsketch/io.hpp"

namespace {

using annsketch::io::json;
namespace as = annsketch;

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::string format = "json";
};

struct CodeSource {
    std::string code_file;
    std::string instance_file;
    std::optional<std::size_t> n;
    std::optional<std::size_t> code_length;
    std::optional<std::size_t> min_dist;
    std::optional<std::uint64_t> seed;
    std::size_t max_retries = 1000;
};

void add_common(CLI::App* sub, Common& common, bool csv) {
    sub->add_option("--out", common.out, "Report path (stdout when omitted)");
    auto* fmt = sub->add_option("--format", common.format, "Output format")->capture_default_str();
    fmt->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
}

void add_code_source(CLI::App* sub, CodeSource& src, bool allow_instance) {
    sub->add_option("--code", src.code_file, "Code JSON produced by gen-code");
    if (allow_instance) sub->add_option("--instance", src.instance_file, "Instance JSON produced by build-instance");
    sub->add_option("--n", src.n, "Number of codewords");
    sub->add_option("--code-length", src.code_length, "Codeword length");
    sub->add_option("--min-dist", src.min_dist, "Required minimum pairwise distance");
    sub->add_option("--seed", src.seed, "Seed for the code generator");
    sub->add_option("--max-retries", src.max_retries, "Full redraws before giving up")->capture_default_str();
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const Common& common, const std::string& text) {
    if (common.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(common.out, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + common.out + "'");
    out << text;
}

void write_json(const Common& common, const json& j) { write_text(common, j.dump(2) + "\n"); }

as::Code generate_from(const CodeSource& src) {
    if (!src.n || !src.code_length || !src.min_dist || !src.seed) {
        throw UsageError("provide --code/--instance or all of --n --code-length --min-dist --seed");
    }
    return as::generate_code(*src.n, *src.code_length, *src.min_dist, *src.seed, src.max_retries);
}

as::Code resolve_code(const CodeSource& src) {
    if (!src.instance_file.empty()) return as::io::instance_from_json(read_json(src.instance_file)).code;
    if (!src.code_file.empty()) return as::io::code_from_json(read_json(src.code_file));
    return generate_from(src);
}

as::QracScheme resolve_scheme(const std::string& name, std::size_t n) {
    if (name == "2to1") return as::qrac_2to1();
    if (name == "3to1") return as::qrac_3to1();
    if (name == "basis") return as::basis_encoding_qrac(n);
    throw UsageError("unknown scheme '" + name + "'");
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            const auto v = std::stoull(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("bad list element '" + item + "'");
        }
    }
    return out;
}

std::string eval_csv(const as::QracEvaluation& eval) {
    std::ostringstream out;
    out.precision(17);
    out << "x,i,p\n";
    for (const auto& e : eval.table) out << e.x.to_string() << ',' << e.i << ',' << e.p << '\n';
    return out.str();
}

int report_error(const std::string& kind, const std::string& message) {
    json diag{{"error", kind}, {"message", message}};
    std::cerr << diag.dump() << "\n";
    return kUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hard instances for ANN sketches, random access code audits and Grover experiments"};
    app.require_subcommand(1);

    Common common;
    CodeSource src;
    std::string x_text;
    std::string c_text = "1";
    bool single = false;
    bool allow_out_of_range = false;
    std::string scheme_name;
    std::size_t scheme_n = 3;
    std::string sketch_kind = "exhaustive";
    double p_correct = 0.9;
    std::size_t size = 0;
    std::size_t t = 1;
    std::string marked_text;
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> seed;
    std::string sizes_text;
    std::size_t log2_min = 4;
    std::size_t log2_max = 12;
    std::size_t trials = 32;
    std::size_t queries = 0;
    std::size_t radius = 0;
    double p = 0.85;

    auto* gen = app.add_subcommand("gen-code", "Draw a random code and certify its minimum distance");
    add_common(gen, common, false);
    add_code_source(gen, src, false);

    auto* build = app.add_subcommand("build-instance", "Lift a code into the dataset P_x and queries q_i");
    add_common(build, common, false);
    add_code_source(build, src, false);
    build->add_option("--x", x_text, "Selector bit string (drawn from --seed when omitted)");

    auto* forcing = app.add_subcommand("verify-forcing", "Check that every query has a unique valid c-ANN answer");
    add_common(forcing, common, false);
    add_code_source(forcing, src, true);
    forcing->add_option("--c", c_text, "Approximation factor: integer, decimal or p/q")->capture_default_str();
    forcing->add_flag("--single", single, "Check only the selector stored in --instance");
    forcing->add_flag("--allow-out-of-range", allow_out_of_range, "Report informationally when c > c_max");

    auto* qeval = app.add_subcommand("qrac-eval", "Success probability table of a random access code");
    add_common(qeval, common, true);
    auto* nayak = app.add_subcommand("nayak-check", "Certificate for m >= (1 - h(p)) n");
    add_common(nayak, common, false);
    auto* audit = app.add_subcommand("info-audit", "Mutual information sandwich and chain rule");
    add_common(audit, common, false);
    for (auto* sub : {qeval, nayak, audit}) {
        sub->add_option("--scheme", scheme_name, "2to1, 3to1 or basis")
            ->required()
            ->check(CLI::IsMember({"2to1", "3to1", "basis"}));
        sub->add_option("--n", scheme_n, "Bits for the basis scheme")->capture_default_str();
    }

    auto* reduce = app.add_subcommand("sketch-reduce", "Turn a reference sketch into a random access code");
    add_common(reduce, common, false);
    add_code_source(reduce, src, false);
    reduce->add_option("--sketch", sketch_kind, "exhaustive or noisy")
        ->capture_default_str()
        ->check(CLI::IsMember({"exhaustive", "noisy"}));
    reduce->add_option("--p-correct", p_correct, "Per-query correctness of the noisy sketch")->capture_default_str();
    reduce->add_option("--c", c_text, "Approximation factor for the ANN success check")->capture_default_str();

    auto* gsim = app.add_subcommand("grover-sim", "Statevector Grover run on a candidate set");
    add_common(gsim, common, false);
    gsim->add_option("--M", size, "Candidate-set size")->required();
    gsim->add_option("--t", t, "Number of marked candidates (drawn from --seed)")->capture_default_str();
    gsim->add_option("--marked", marked_text, "Explicit comma-separated marked indices");
    gsim->add_option("--k", k, "Iterations (optimal when omitted)");
    gsim->add_option("--seed", seed, "Seed for the marked set and the final sample")->required();

    auto* gscale = app.add_subcommand("grover-scaling", "Optimal iterations against sqrt(M/t)");
    add_common(gscale, common, true);
    gscale->add_option("--M-list", sizes_text, "Comma-separated candidate-set sizes");
    gscale->add_option("--log2-min", log2_min, "Smallest log2 M when --M-list is omitted")->capture_default_str();
    gscale->add_option("--log2-max", log2_max, "Largest log2 M when --M-list is omitted")->capture_default_str();
    gscale->add_option("--t", t, "Number of marked candidates")->capture_default_str();
    gscale->add_option("--trials", trials, "Seeded trials per size")->capture_default_str();
    gscale->add_option("--seed", seed, "Seed from which trial seeds are split")->required();

    auto* hybrid = app.add_subcommand("bbbv-hybrid", "Squared displacement of marked runs from the unmarked run");
    add_common(hybrid, common, true);
    hybrid->add_option("--M", size, "Candidate-set size")->required();
    hybrid->add_option("--Q", queries, "Oracle queries")->required();
    hybrid->add_option("--seed", seed, "Accepted for uniformity; the experiment is deterministic");

    auto* shatter = app.add_subcommand("vc-shatter", "Shattering of the queries by the hard family");
    add_common(shatter, common, false);
    add_code_source(shatter, src, false);
    shatter->add_option("--r", radius, "Near-neighbor radius")->capture_default_str();
    shatter->add_option("--p", p, "Success probability for the capacity bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (gen->parsed()) {
            write_json(common, as::io::to_json(generate_from(src)));
            return kOk;
        }

        if (build->parsed()) {
            const as::Code code = resolve_code(src);
            as::BitVector x(code.n);
            if (!x_text.empty()) {
                x = as::BitVector::from_string(x_text);
            } else {
                if (!src.seed) throw UsageError("--x or --seed required");
                as::Rng rng(*src.seed, as::stream::selector, 0);
                for (std::size_t i = 0; i < code.n; ++i) x.set(i, rng.next() & 1U);
            }
            write_json(common, as::io::to_json(as::build_instance(code, x)));
            return kOk;
        }

        if (forcing->parsed()) {
            const auto c = as::ApproxFactor::parse(c_text);
            as::ForcingReport rep;
            if (single) {
                if (src.instance_file.empty()) throw UsageError("--single needs --instance");
                rep = as::verify_forcing(as::io::instance_from_json(read_json(src.instance_file)), c,
                                         allow_out_of_range);
            } else {
                rep = as::verify_forcing_all(resolve_code(src), c, allow_out_of_range);
            }
            write_json(common, as::io::to_json(rep));
            if (rep.guaranteed && !rep.ok()) {
                std::cerr << "forcing violated at " << rep.violations.size() << " (x, i) pairs\n";
                return kAssertionFailed;
            }
            return kOk;
        }

        if (qeval->parsed()) {
            const auto eval = as::evaluate_qrac(resolve_scheme(scheme_name, scheme_n));
            if (common.format == "csv") {
                write_text(common, eval_csv(eval));
            } else {
                write_json(common, as::io::to_json(eval));
            }
            return kOk;
        }

        if (nayak->parsed()) {
            const auto cert = as::certify_nayak(resolve_scheme(scheme_name, scheme_n));
            write_json(common, as::io::to_json(cert));
            return cert.satisfied ? kOk : kAssertionFailed;
        }

        if (audit->parsed()) {
            const auto rep = as::information_audit(resolve_scheme(scheme_name, scheme_n));
            write_json(common, as::io::to_json(rep));
            return rep.holds() ? kOk : kAssertionFailed;
        }

        if (reduce->parsed()) {
            const as::Code code = resolve_code(src);
            const double pc = sketch_kind == "noisy" ? p_correct : 1.0;
            auto sketch = std::make_shared<as::LookupSketch>(code, pc);
            const auto scheme = as::sketch_to_qrac(sketch, code);
            const auto eval = as::evaluate_qrac(scheme);
            const double ann = as::sketch_ann_success(*sketch, code, as::ApproxFactor::parse(c_text));
            bool ok = std::abs(ann - eval.worst_p) <= 1e-9;
            json out{{"sketch", sketch_kind}, {"p_correct", pc}, {"ann_success", ann},
                     {"evaluation", as::io::to_json(eval)}};
            if (eval.worst_p >= 0.5) {
                const auto cert = as::certify_nayak(scheme.n, scheme.qubits, eval.worst_p);
                ok = ok && cert.satisfied;
                out["certificate"] = as::io::to_json(cert);
            } else {
                out["certificate"] = nullptr;
            }
            write_json(common, out);
            return ok ? kOk : kAssertionFailed;
        }

        if (gsim->parsed()) {
            const auto inst = marked_text.empty() ? as::CandidateInstance::random(size, t, *seed)
                                                  : as::CandidateInstance(size, parse_list(marked_text));
            const std::size_t iters = k ? *k : as::optimal_iterations(size, inst.marked_count());
            const auto run = as::grover_statevector(inst, iters, *seed);
            write_json(common, as::io::to_json(run));
            const double model = as::rotation_success(size, inst.marked_count(), iters);
            return std::abs(model - run.success_probability) <= 1e-9 ? kOk : kAssertionFailed;
        }

        if (gscale->parsed()) {
            std::vector<std::size_t> sizes;
            if (!sizes_text.empty()) {
                sizes = parse_list(sizes_text);
            } else {
                if (log2_min > log2_max || log2_max > 20) throw UsageError("need log2-min <= log2-max <= 20");
                for (std::size_t e = log2_min; e <= log2_max; ++e) sizes.push_back(std::size_t{1} << e);
            }
            std::vector<std::uint64_t> seeds(trials);
            for (std::size_t s = 0; s < trials; ++s) seeds[s] = as::derive_seed(*seed, as::stream::marked, s);
            const auto rows = as::scaling_experiment(sizes, t, seeds);
            if (common.format == "csv") {
                write_text(common, as::io::to_csv(rows));
            } else {
                write_json(common, as::io::to_json(rows));
            }
            return kOk;
        }

        if (hybrid->parsed()) {
            const auto rep = as::bbbv_hybrid(size, queries);
            if (common.format == "csv") {
                write_text(common, as::io::to_csv(rep));
            } else {
                json out = as::io::to_json(rep);
                if (size >= 2 && 4 * queries <= as::optimal_iterations(size, 1)) {
                    out["distinguishability"] = as::io::to_json(as::distinguishability_check(size, queries));
                } else {
                    out["distinguishability"] = nullptr;
                }
                write_json(common, out);
            }
            return rep.holds ? kOk : kAssertionFailed;
        }

        if (shatter->parsed()) {
            const as::Code code = resolve_code(src);
            const auto res = as::shattering_check(as::hard_decision_family(code, radius));
            write_json(common, as::io::to_json(res, p));
            // At r = 0 distinct codewords make the family shatter the queries.
            const bool expected = radius == 0 && code.min_distance >= 1;
            return expected && !res.shattered ? kAssertionFailed : kOk;
        }
    } catch (const UsageError& e) {
        return report_error("UsageError", e.what());
    } catch (const as::Error& e) {
        return report_error(std::string(as::to_string(e.kind())), e.what());
    }
    return kUsage;
}
