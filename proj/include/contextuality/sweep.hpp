#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "contextuality/bell.hpp"
#include "contextuality/generators.hpp"
#include "contextuality/io.hpp"
#include "contextuality/oracle.hpp"
#include "contextuality/parallel.hpp"

namespace contextuality::sweep {

/// "a:b:step" (inclusive, step > 0) or a single value "a". Empty when a > b.
inline std::vector<Scalar> parse_range(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) return {parse_scalar(parts[0])};
    if (parts.size() != 3) throw ParseError("range \"" + std::string(text) + "\" must be a:b:step or a single value");
    const Scalar lo = parse_scalar(parts[0]), hi = parse_scalar(parts[1]), step = parse_scalar(parts[2]);
    if (step <= 0) throw ParseError("range \"" + std::string(text) + "\": step must be positive");
    std::vector<Scalar> out;
    for (Scalar v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

struct Row {
    Scalar delta, epsilon;
    bool skipped = false;
    Scalar delta0, chsh_stat, degree_closed;
    std::optional<Scalar> degree_oracle;
    bool classic_chsh = false;
    bool no_signaling = false;
};

inline constexpr std::string_view kHeader =
    "delta,epsilon,delta0,chsh_stat,degree_closed,degree_oracle,classic_chsh,no_signaling,status";

/// One row per (delta, epsilon), delta-major. Grid points where the family is
/// not a valid system are kept and marked skipped.
inline std::vector<Row> pr_signaling(const std::vector<Scalar>& deltas, const std::vector<Scalar>& epsilons,
                                     bool with_oracle, unsigned workers = 0) {
    std::vector<Row> rows(deltas.size() * epsilons.size());
    parallel_for(
        rows.size(),
        [&](std::size_t i) {
            Row& r = rows[i];
            r.delta = deltas[i / epsilons.size()];
            r.epsilon = epsilons[i % epsilons.size()];
            BellSystem s;
            try {
                s = gen::pr_signaling_family(r.delta, r.epsilon);
            } catch (const InvalidParameter&) {
                r.skipped = true;
                return;
            }
            r.delta0 = bell::delta0(s);
            r.chsh_stat = bell::chsh_statistic(s);
            r.degree_closed = bell::degree(s);
            const auto classic = bell::classic_checks(s);
            r.classic_chsh = classic.inequality_holds;
            r.no_signaling = classic.no_signaling;
            if (with_oracle) r.degree_oracle = oracle::oracle_degree(s);
        },
        workers);
    return rows;
}

inline std::string to_csv(const std::vector<Row>& rows, const io::NumberFormat& fmt = {}) {
    std::ostringstream os;
    os << kHeader << "\n";
    for (const auto& r : rows) {
        os << fmt(r.delta) << "," << fmt(r.epsilon) << ",";
        if (r.skipped) {
            os << ",,,,,,skipped\n";
            continue;
        }
        os << fmt(r.delta0) << "," << fmt(r.chsh_stat) << "," << fmt(r.degree_closed) << ","
           << (r.degree_oracle ? fmt(*r.degree_oracle) : "") << "," << (r.classic_chsh ? "true" : "false") << ","
           << (r.no_signaling ? "true" : "false") << ",ok\n";
    }
    return os.str();
}

}  // namespace contextuality::sweep
