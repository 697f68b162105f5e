// contextuality: analyze, sweep, verify and derive from the command line.
//
// Exit codes: analyze returns 0 for a non-contextual system, 1 for a
// contextual one; verify returns 0 iff no mismatch was found. Any input or
// flag error returns 2.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "contextuality/contextuality.hpp"
#include "contextuality/harness.hpp"
#include "contextuality/io.hpp"
#include "contextuality/sweep.hpp"

namespace ctx = contextuality;
using ctx::io::json;

namespace {

constexpr int kNoncontextual = 0;
constexpr int kContextual = 1;
constexpr int kInputError = 2;

struct InputError {
    std::vector<std::string> descriptors;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{{"cannot read " + path}};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ctx::io::AnySystem load(const std::string& path) {
    ctx::io::AnySystem sys;
    try {
        sys = ctx::io::parse_system(read_file(path));
    } catch (const ctx::ParseError& e) {
        throw InputError{{e.what()}};
    }
    const auto violations = std::visit([](const auto& s) { return ctx::validate(s); }, sys);
    if (!violations.empty()) {
        InputError err;
        for (const auto& v : violations) err.descriptors.push_back("pair " + v.pair + ": " + v.bound + ": " + v.detail);
        throw err;
    }
    return sys;
}

void print_text(const json& doc, int indent = 0) {
    for (const auto& [key, value] : doc.items()) {
        std::cout << std::string(static_cast<std::size_t>(indent), ' ') << key << ":";
        if (value.is_object()) {
            std::cout << "\n";
            print_text(value, indent + 2);
        } else if (value.is_string()) {
            std::cout << " " << value.get<std::string>() << "\n";
        } else {
            std::cout << " " << value.dump() << "\n";
        }
    }
}

struct AnalyzeFlags {
    std::string path;
    bool oracle = false;
    bool causal = true;
    std::string format = "json";
    std::optional<int> decimals;
};

int cmd_analyze(const AnalyzeFlags& f) {
    const auto sys = load(f.path);
    const ctx::io::NumberFormat fmt{f.decimals};
    json doc;
    bool noncontextual = false;
    try {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                ctx::Interval closed;
                ctx::Scalar degree;
                if constexpr (std::is_same_v<S, ctx::BellSystem>) {
                    const auto r = ctx::bell::analyze(s);
                    doc = ctx::io::to_json(r, fmt);
                    closed = {r.delta_min, r.delta_max};
                    degree = r.degree;
                    noncontextual = r.noncontextual;
                } else {
                    const auto r = ctx::lg::analyze(s, f.causal);
                    doc = ctx::io::to_json(r, f.causal, fmt);
                    closed = {r.delta_min, r.delta_max};
                    degree = r.degree;
                    noncontextual = r.noncontextual;
                }
                if (!f.oracle) return;
                const auto extrema = ctx::oracle::oracle_delta_extrema(s);
                const ctx::Scalar oracle_degree = ctx::max_of(
                    ctx::Scalar(0), ctx::Scalar(extrema.lower - ctx::oracle::minimal_mismatch(s)));
                const bool compatible = ctx::oracle::oracle_compatible(s, ctx::oracle::minimal_connection_vector(s));
                doc["oracle"] = {{"delta_min", fmt(extrema.lower)},
                                 {"delta_max", fmt(extrema.upper)},
                                 {"degree", fmt(oracle_degree)},
                                 {"compatible", compatible},
                                 {"agrees", extrema == closed && oracle_degree == degree && compatible == noncontextual}};
            },
            sys);
    } catch (const ctx::CausalityViolation& e) {
        throw InputError{{e.what(), "rerun with --no-causal to use the generalized mismatch"}};
    }
    if (f.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        print_text(doc);
    return noncontextual ? kNoncontextual : kContextual;
}

struct SweepFlags {
    std::string family = "pr-signaling";
    std::string delta, epsilon, out;
    bool oracle = false;
    std::optional<int> decimals;
};

int cmd_sweep(const SweepFlags& f) {
    std::vector<ctx::Scalar> deltas, epsilons;
    try {
        deltas = ctx::sweep::parse_range(f.delta);
        epsilons = ctx::sweep::parse_range(f.epsilon);
    } catch (const ctx::ParseError& e) {
        throw InputError{{e.what()}};
    }
    const auto rows = ctx::sweep::pr_signaling(deltas, epsilons, f.oracle);
    const std::string csv = ctx::sweep::to_csv(rows, ctx::io::NumberFormat{f.decimals});
    if (f.out.empty() || f.out == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(f.out, std::ios::binary);
        if (!out) throw InputError{{"cannot write " + f.out}};
        out << csv;
    }
    return 0;
}

int cmd_verify(const ctx::harness::Options& opt) {
    const auto summary = ctx::harness::run(opt);
    std::cout << ctx::harness::render(summary, opt);
    return summary.mismatches() == 0 ? 0 : 1;
}

int cmd_derive(const std::string& path, const std::optional<int>& decimals) {
    const auto sys = load(path);
    const ctx::io::NumberFormat fmt{decimals};
    std::visit(
        [&](const auto& s) {
            const auto d = ctx::fme::derive(s);
            std::cout << "instantiated system (" << d.instantiated.rows.size() << " rows):\n"
                      << ctx::fme::render(d.instantiated) << "\nprojected system (" << d.projected.rows.size()
                      << " rows):\n"
                      << ctx::fme::render(d.projected) << "\ninterval: (" << fmt(d.interval.lower) << ", "
                      << fmt(d.interval.upper) << ")\n";
        },
        sys);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contextuality of Bell and Leggett-Garg systems with signaling"};
    app.require_subcommand(1);

    AnalyzeFlags analyze;
    auto* a = app.add_subcommand("analyze", "Report statistics, mismatch range and degree for one system");
    a->add_option("path", analyze.path, "System document (JSON)")->required();
    a->add_flag("--oracle", analyze.oracle, "Append LP-oracle values and an agreement flag");
    a->add_flag("--causal,!--no-causal", analyze.causal, "LG: assume <Q12> = <Q13> (default on)");
    a->add_option("--format", analyze.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    a->add_option("--decimals", analyze.decimals, "Round numbers to k decimals instead of p/q")
        ->check(CLI::Range(0, 60));

    SweepFlags sweep;
    auto* s = app.add_subcommand("sweep", "Tabulate a parametric family as CSV");
    s->add_option("--family", sweep.family, "Family")->check(CLI::IsMember({"pr-signaling"}));
    s->add_option("--delta", sweep.delta, "Range a:b:step or a single value")->required();
    s->add_option("--epsilon", sweep.epsilon, "Range a:b:step or a single value")->required();
    s->add_option("--out", sweep.out, "Output CSV path (stdout when omitted)");
    s->add_flag("--oracle", sweep.oracle, "Fill the degree_oracle column");
    s->add_option("--decimals", sweep.decimals, "Round numbers to k decimals")->check(CLI::Range(0, 60));

    ctx::harness::Options verify;
    std::string kind = "both";
    std::uint64_t seed = 1;
    auto* v = app.add_subcommand("verify", "Check closed forms against the LP oracle on random systems");
    v->add_option("--samples", verify.samples, "Samples per kind (>= 1)")
        ->check(CLI::Validator(
            [](const std::string& text) {
                return text.find_first_not_of("0123456789") == std::string::npos && text.find_first_not_of('0') != std::string::npos
                           ? std::string()
                           : "must be a positive integer, got " + text;
            },
            "N >= 1"));
    v->add_option("--seed", seed, "Base seed");
    v->add_option("--kind", kind, "Systems to sample")->check(CLI::IsMember({"bell", "lg", "both"}));
    v->add_flag("--inject-fault", verify.inject_fault, "Perturb the closed-form degree (harness self-test)");
    v->add_option("--workers", verify.workers, "Worker threads (0 = hardware concurrency)");

    std::string derive_path;
    std::optional<int> derive_decimals;
    auto* d = app.add_subcommand("derive", "Project the compatibility inequalities onto the total mismatch");
    d->add_option("path", derive_path, "System document (JSON)")->required();
    d->add_option("--decimals", derive_decimals, "Round numbers to k decimals")->check(CLI::Range(0, 60));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*a) return cmd_analyze(analyze);
        if (*s) return cmd_sweep(sweep);
        if (*v) {
            verify.seed = {seed};
            verify.bell = kind != "lg";
            verify.lg = kind != "bell";
            return cmd_verify(verify);
        }
        return cmd_derive(derive_path, derive_decimals);
    } catch (const InputError& e) {
        std::cerr << "input error:\n";
        for (const auto& line : e.descriptors) std::cerr << "  " << line << "\n";
        return kInputError;
    } catch (const ctx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
