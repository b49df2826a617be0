// Runs every suite once with the default configuration and prints one
// PASS/FAIL line per acceptance criterion, then the full-run time.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "effect_order/verify.hpp"

using namespace effect_order::verify;

namespace {

struct Requirement {
    std::string suite;
    std::vector<std::string> checks;
    double max_seconds = 0.0;  // 0: no runtime bound
};

struct Criterion {
    int number;
    const char* title;
    std::vector<Requirement> requirements;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "Moebius group laws",
         {{"moebius-group", {"pointwise-composition", "inverse-law", "isomorphism"}, 5.0}}},
        {2, "Operator monotonicity", {{"operator-monotone", {"monotone"}, 20.0}}},
        {3, "Dual-route functional calculus", {{"operator-monotone", {"dual-route"}}}},
        {4, "Order automorphism of the effect algebra",
         {{"automorphism-order", {"forward-order", "inverse-order", "extrema", "invertible-to-invertible"}, 60.0}}},
        {5, "Three-representation equivalence",
         {{"representation-equivalence",
           {"canonical-alt", "canonical-congruence", "alt-congruence", "f-half-factorization"}}}},
        {6, "Construction well-definedness",
         {{"representation-equivalence", {"lambda-independence", "congruence-roundtrip"}},
          {"phase-and-group", {"phase-invariance"}}}},
        {7, "Boundary extension", {{"boundary-extension", {"gap-non-increasing", "gap-at-k14"}}}},
        {8, "Group structure",
         {{"phase-and-group", {"composition", "inverse-is-identity", "antilinear-pair-is-linear"}}}},
        {9, "Antilinear algebra", {{"antilinear-algebra", {"adjoint-identity", "congruence-basis-oracle"}}}},
    };
    return all;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const RunSummary summary = run_all(VerifyConfig{});
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::map<std::string, const VerificationReport*> by_name;
    for (const auto& r : summary.reports) by_name[r.suite] = &r;

    bool all_pass = true;
    for (const Criterion& c : criteria()) {
        bool pass = true;
        std::string detail;
        for (const Requirement& req : c.requirements) {
            const VerificationReport& r = *by_name.at(req.suite);
            for (const std::string& name : req.checks) {
                const CheckStats* s = r.find_check(name);
                const bool ok = s != nullptr && s->trials > 0 && s->failures == 0;
                pass = pass && ok;
                char buf[160];
                if (s == nullptr) {
                    std::snprintf(buf, sizeof buf, " %s=missing", name.c_str());
                } else {
                    std::snprintf(buf, sizeof buf, " %s=%.2e/%.0e(%lld/%lld)", name.c_str(), s->max_error,
                                  s->tolerance, s->failures, s->trials);
                }
                detail += buf;
            }
            if (req.max_seconds > 0.0) {
                const bool fast = r.wall_time_s < req.max_seconds;
                pass = pass && fast;
                char buf[96];
                std::snprintf(buf, sizeof buf, " time=%.2fs<%.0fs", r.wall_time_s, req.max_seconds);
                detail += buf;
            }
        }
        all_pass = all_pass && pass;
        std::printf("criterion %d %s: %s;%s\n", c.number, pass ? "PASS" : "FAIL", c.title, detail.c_str());
    }

    const bool full_pass = summary.exit_code == 0 && total < 180.0;
    all_pass = all_pass && full_pass;
    std::printf("full suite %s: run_all exit %d, %.2fs (limit 180s)\n", full_pass ? "PASS" : "FAIL",
                summary.exit_code, total);
    return all_pass ? 0 : 1;
}
