// Acceptance runner: one PASS/FAIL line per criterion, each with a wall-clock bound.
// With arguments, only the listed criteria run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ellw/ellw.hpp"
#include "ellw/report.hpp"

namespace {

using ellw::IdentityReport;
using ellw::TrialConfig;

struct Run {
    std::string id;
    int n, max_weight, trials;
    double tol;
};

struct Outcome {
    bool ok = true;
    std::string detail;
};

TrialConfig make(const Run& r, std::uint64_t seed = 1)
{
    TrialConfig c = ellw::default_config(r.id);
    c.n = r.n;
    c.max_weight = r.max_weight;
    c.trials = r.trials;
    c.tol = r.tol;
    c.seed = seed;
    return c;
}

std::string brief(const IdentityReport& rep)
{
    int inc = 0;
    for (const auto& t : rep.trials)
        inc += t.status == "inconclusive";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s(n=%d,w=%d) max %.2e%s", rep.identity.c_str(), rep.config.n,
                  rep.config.max_weight, rep.max_residual,
                  inc ? (" inconclusive " + std::to_string(inc)).c_str() : "");
    return buf;
}

Outcome run_all(const std::vector<Run>& runs)
{
    Outcome out;
    for (const auto& r : runs) {
        const auto rep = ellw::run_identity(make(r));
        out.ok = out.ok && rep.passed;
        out.detail += (out.detail.empty() ? "" : "; ") + brief(rep);
    }
    return out;
}

Outcome reproducibility()
{
    Outcome out;
    for (const Run& r : {Run{"w-normalization", 2, 4, 5, 1e-9}, Run{"cocycle", 2, 5, 5, 1e-8},
                         Run{"omega-rdelta", 3, 3, 5, 1e-8}}) {
        auto a = ellw::to_json(ellw::run_identity(make(r, 42)));
        auto b = ellw::to_json(ellw::run_identity(make(r, 42)));
        a.erase("wall_time_ms");
        b.erase("wall_time_ms");
        const bool same = a.dump() == b.dump();
        out.ok = out.ok && same;
        out.detail += (out.detail.empty() ? "" : "; ") + r.id + (same ? " identical" : " DIFFERS");
    }
    return out;
}

struct Criterion {
    int number;
    std::string name;
    double limit_s;
    std::function<Outcome()> body;
};

std::vector<Criterion> criteria()
{
    return {
        {1, "W vanishing at spectral points", 30,
         [] { return run_all({{"w-vanishing", 2, 4, 20, 1e-8}, {"w-vanishing", 3, 4, 20, 1e-8}}); }},
        {2, "W normalization", 30, [] { return run_all({{"w-normalization", 3, 5, 20, 1e-9}}); }},
        {3, "W symmetry, ellipticity, stability", 60,
         [] {
             return run_all({{"w-symmetry", 3, 4, 20, 1e-9},
                             {"w-ellipticity", 3, 4, 20, 1e-9},
                             {"w-stability", 3, 4, 20, 1e-9}});
         }},
        {4, "W Jackson sums and duality", 60,
         [] {
             return run_all({{"w-jackson", 2, 4, 20, 1e-8},
                             {"w-jackson", 1, 4, 20, 1e-8},
                             {"jackson-1d", 1, 4, 20, 1e-8},
                             {"duality", 2, 4, 20, 1e-8}});
         }},
        {5, "omega cocycle and inversion", 60,
         [] { return run_all({{"cocycle", 2, 5, 20, 1e-8}, {"omega-inversion", 2, 5, 20, 1e-8}}); }},
        {6, "10phi9 transformation", 60, [] { return run_all({{"phi10-9", 2, 4, 20, 1e-8}}); }},
        {7, "omega Jackson sum and its r -> t degeneration", 90,
         [] { return run_all({{"omega-jackson", 2, 4, 20, 1e-8}, {"omega-jackson-limit", 2, 3, 20, 1e-6}}); }},
        {8, "omega shifted, r-delta, diagonal, elliptic shifts", 60,
         [] {
             return run_all({{"omega-shifted", 3, 4, 20, 1e-8},
                             {"omega-rdelta", 3, 4, 20, 1e-8},
                             {"omega-diagonal", 3, 4, 20, 1e-8},
                             {"omega-elliptic-shifts", 3, 4, 20, 1e-8}});
         }},
        {9, "Bailey transform and associativity", 10, [] { return run_all({{"bailey-transform", 2, 5, 10, 1e-12}}); }},
        {10, "limits of H and omega", 60,
         [] {
             return run_all({{"h-tq-limit", 2, 5, 20, 1e-10},
                             {"h-macdonald-limit", 2, 5, 20, 1e-10},
                             {"w-omega-limit", 3, 3, 20, 1e-6}});
         }},
        {11, "W pole structure", 30, [] { return run_all({{"w-poles", 2, 3, 10, 1e-7}}); }},
        {12, "reproducible reports", 60, reproducibility},
    };
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> pick;
    for (int i = 1; i < argc; ++i)
        pick.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : criteria()) {
        if (!pick.empty() && !pick.count(c.number))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_s;
        const bool ok = o.ok && in_time;
        failed += !ok;
        std::printf("%s criterion %2d: %s  [%.1f s / %.0f s%s]  %s\n", ok ? "PASS" : "FAIL", c.number, c.name.c_str(),
                    secs, c.limit_s, in_time ? "" : " over budget", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
