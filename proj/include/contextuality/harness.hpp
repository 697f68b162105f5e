#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contextuality/bell.hpp"
#include "contextuality/fme.hpp"
#include "contextuality/generators.hpp"
#include "contextuality/lg.hpp"
#include "contextuality/oracle.hpp"
#include "contextuality/parallel.hpp"

// Closed forms against the LP oracle and the elimination route on seeded
// random systems.

namespace contextuality::harness {

struct Options {
    std::size_t samples = 100;
    gen::Seed seed{1};
    bool bell = true;
    bool lg = true;
    /// Perturbs the closed-form degree so the harness must report mismatches.
    bool inject_fault = false;
    unsigned workers = 0;
};

enum Check : std::size_t { kDegree, kInterval, kCriterion, kElimination, kCompatibility, kCheckCount };

inline constexpr std::array<const char*, kCheckCount> kCheckNames{"degree", "delta-interval", "criterion",
                                                                  "elimination", "compatibility"};

struct Tally {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::optional<std::size_t> first_failure;
};

struct KindSummary {
    std::string kind;
    std::array<Tally, kCheckCount> tallies;

    std::size_t mismatches() const {
        std::size_t n = 0;
        for (const auto& t : tallies) n += t.mismatches;
        return n;
    }
};

struct Summary {
    std::vector<KindSummary> kinds;

    std::size_t mismatches() const {
        std::size_t n = 0;
        for (const auto& k : kinds) n += k.mismatches();
        return n;
    }
};

/// Sample i cycles through unconstrained, no-signaling and signaling-only draws.
inline gen::SamplingMode mode_for(std::size_t i) {
    switch (i % 3) {
        case 0:
            return gen::SamplingMode::Unconstrained;
        case 1:
            return gen::SamplingMode::NoSignaling;
        default:
            return gen::SamplingMode::SignalingOnly;
    }
}

namespace detail {

using Outcomes = std::array<bool, kCheckCount>;

inline Outcomes check_bell(const BellSystem& s, gen::Seed seed, bool fault) {
    Outcomes ok{};
    const Scalar closed_degree = bell::degree(s) + (fault ? Scalar(1, 1000) : Scalar(0));
    const auto closed = bell::delta_interval(s);
    const auto lp_range = oracle::oracle_delta_extrema(s);
    const Scalar lp_degree = max_of(Scalar(0), Scalar(lp_range.lower - oracle::minimal_mismatch(s)));
    ok[kDegree] = closed_degree == lp_degree;
    ok[kInterval] = closed == lp_range;
    ok[kCriterion] = bell::is_noncontextual(s) == oracle::oracle_compatible(s, bell::minimal_connections(s));
    const auto derived = fme::derive_delta_bounds(s);
    ok[kElimination] = derived == closed && derived == lp_range;
    const auto conn = gen::random_connection_expectations(s, gen::split(seed, 1));
    const auto compat = oracle::check_bell_compatibility(s, conn);
    ok[kCompatibility] = compat.inequalities == compat.lp_feasible;
    return ok;
}

inline Outcomes check_lg(const LGSystem& s, gen::Seed seed, bool fault) {
    Outcomes ok{};
    const Scalar closed_degree = lg::degree(s, false) + (fault ? Scalar(1, 1000) : Scalar(0));
    const auto closed = lg::delta_prime_interval(s);
    const auto lp_range = oracle::oracle_delta_extrema(s);
    const Scalar lp_degree = max_of(Scalar(0), Scalar(lp_range.lower - oracle::minimal_mismatch(s)));
    ok[kDegree] = closed_degree == lp_degree;
    ok[kInterval] = closed == lp_range;
    ok[kCriterion] = lg::is_noncontextual(s, false) == oracle::oracle_compatible(s, lg::minimal_connections(s, false));
    const auto derived = fme::derive_delta_bounds(s);
    ok[kElimination] = derived == closed && derived == lp_range;
    const auto conn = gen::random_connection_expectations(s, gen::split(seed, 1));
    const auto compat = oracle::check_lg_compatibility(s, conn);
    ok[kCompatibility] = compat.inequalities == compat.lp_feasible;
    return ok;
}

template <class System, class CheckFn>
KindSummary run_kind(const Options& opt, std::string kind, std::uint64_t stream, CheckFn check) {
    std::vector<Outcomes> results(opt.samples);
    parallel_for(
        opt.samples,
        [&](std::size_t i) {
            const gen::Seed seed = gen::split(gen::split(opt.seed, stream), i);
            const auto s = gen::random_system<System>(seed, mode_for(i));
            results[i] = check(s, seed, opt.inject_fault);
        },
        opt.workers);
    KindSummary summary{std::move(kind), {}};
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t c = 0; c < kCheckCount; ++c) {
            auto& t = summary.tallies[c];
            ++t.checked;
            if (!results[i][c]) {
                ++t.mismatches;
                if (!t.first_failure) t.first_failure = i;
            }
        }
    }
    return summary;
}

}  // namespace detail

/// Sample i of kind k uses seed split(split(seed, k), i), k = 0 for Bell and 1
/// for LG. LG closed forms run in the generalized (non-causal) mode.
inline Summary run(const Options& opt) {
    Summary s;
    if (opt.bell) s.kinds.push_back(detail::run_kind<BellSystem>(opt, "bell", 0, detail::check_bell));
    if (opt.lg) s.kinds.push_back(detail::run_kind<LGSystem>(opt, "lg", 1, detail::check_lg));
    return s;
}

inline std::string render(const Summary& s, const Options& opt) {
    std::ostringstream os;
    os << "verify: samples=" << opt.samples << " seed=" << opt.seed.value << (opt.inject_fault ? " (fault injected)" : "")
       << "\n";
    for (const auto& k : s.kinds) {
        os << "[" << k.kind << "]\n";
        for (std::size_t c = 0; c < kCheckCount; ++c) {
            const auto& t = k.tallies[c];
            os << "  " << kCheckNames[c] << ": " << t.checked << " checked, " << t.mismatches << " mismatches";
            if (t.first_failure) os << " (first failing sample offset " << *t.first_failure << ")";
            os << "\n";
        }
    }
    os << "result: " << (s.mismatches() == 0 ? "PASS" : "FAIL") << " (" << s.mismatches() << " mismatches)\n";
    return os.str();
}

}  // namespace contextuality::harness
