#include <gtest/gtest.h>

#include <set>

#include "ellw/report.hpp"
#include "support.hpp"

using namespace ellw;
using ellw::testing::P_;

namespace {

TrialConfig config(const std::string& id, int trials, std::uint64_t seed)
{
    TrialConfig c = default_config(id);
    c.trials = trials;
    c.seed = seed;
    return c;
}

nlohmann::json without_time(const IdentityReport& rep)
{
    auto j = to_json(rep);
    j.erase("wall_time_ms");
    return j;
}

} // namespace

TEST(Sampler, SameSeedSameSequence)
{
    Sampler a(42, 0), b(42, 0), c(42, 1);
    const auto pa = a.params(), pb = b.params(), pc = c.params();
    EXPECT_EQ(pa.q, pb.q);
    EXPECT_EQ(pa.s, pb.s);
    EXPECT_EQ(a.variable(), b.variable());
    EXPECT_NE(pa.q, pc.q);
}

TEST(Sampler, ModulusRanges)
{
    for (std::uint64_t i = 0; i < 500; ++i) {
        Sampler s(7, i);
        const auto P = s.params();
        EXPECT_LT(std::abs(P.p), 0.6L);
        for (auto v : {P.q, P.p, P.t}) {
            EXPECT_GE(std::abs(v), 0.05L - 1e-15L);
            EXPECT_LE(std::abs(v), 0.6L + 1e-15L);
        }
        for (auto v : {P.a, P.b, P.r, P.s}) {
            EXPECT_GE(std::abs(v), 0.2L - 1e-15L);
            EXPECT_LE(std::abs(v), 2.0L + 1e-15L);
        }
    }
}

TEST(MacdonaldPsi, SmallCases)
{
    const Complex q(0.3L, 0.1L), t(0.5L, -0.2L);
    EXPECT_EQ(macdonald_psi(Partition(), Partition(), q, t), Complex(1));
    EXPECT_EQ(macdonald_psi(P_({2}), Partition(), q, t), Complex(1));
    const Complex expect = (Complex(1) - t) * (Complex(1) - q * q) / ((Complex(1) - q) * (Complex(1) - q * t));
    EXPECT_LT(std::abs(macdonald_psi(P_({2}), P_({1}), q, t) - expect), 1e-15L);
}

TEST(Registry, IdsAreUniqueAndDescribed)
{
    std::set<std::string> seen;
    for (const auto& s : registry()) {
        EXPECT_TRUE(seen.insert(s.id).second) << s.id;
        EXPECT_FALSE(s.description.empty());
        EXPECT_GT(s.tol, 0);
    }
    for (const char* id : {"w-vanishing", "w-normalization", "w-jackson", "cocycle", "phi10-9", "bailey-transform",
                           "omega-jackson", "h-tq-limit", "w-poles"})
        EXPECT_NE(find_identity(id), nullptr) << id;
    EXPECT_EQ(find_identity("no-such-identity"), nullptr);
    EXPECT_THROW(default_config("no-such-identity"), std::invalid_argument);
}

TEST(RunIdentity, RejectsBadConfigs)
{
    auto c = config("w-normalization", 1, 1);
    c.trials = 0;
    EXPECT_THROW(run_identity(c), std::invalid_argument);
    c = config("w-normalization", 1, 1);
    c.tol = 0;
    EXPECT_THROW(run_identity(c), std::invalid_argument);
    c = config("w-normalization", 1, 1);
    c.n = 0;
    EXPECT_THROW(run_identity(c), std::invalid_argument);
    c.identity = "nope";
    EXPECT_THROW(run_identity(c), std::invalid_argument);
}

TEST(RunIdentity, NormalizationExample)
{
    auto c = config("w-normalization", 10, 7);
    c.n = 2;
    c.max_weight = 4;
    const auto rep = run_identity(c);
    EXPECT_TRUE(rep.passed);
    EXPECT_LT(rep.max_residual, 1e-9);
    EXPECT_EQ(rep.trials.size(), 10u);
    EXPECT_EQ(exit_code(rep), 0);
}

TEST(RunIdentity, BaileyExample)
{
    const auto rep = run_identity(config("bailey-transform", 5, 1));
    EXPECT_TRUE(rep.passed);
    EXPECT_LT(rep.max_residual, 1e-12);
}

TEST(RunIdentity, TqLimitExample)
{
    const auto rep = run_identity(config("h-tq-limit", 10, 1));
    EXPECT_TRUE(rep.passed);
    EXPECT_LT(rep.max_residual, 1e-10);
}

TEST(RunIdentity, SameSeedSameReport)
{
    const auto a = run_identity(config("jackson-1d", 5, 42));
    const auto b = run_identity(config("jackson-1d", 5, 42));
    EXPECT_EQ(without_time(a), without_time(b));
    const auto c = run_identity(config("jackson-1d", 5, 43));
    EXPECT_NE(without_time(a)["trials"], without_time(c)["trials"]);
}

TEST(RunIdentity, TrialsFollowTheSamplerSequence)
{
    const auto rep = run_identity(config("h-tq-limit", 3, 42));
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        if (rep.trials[i].resamples != 0)
            continue;
        Sampler s(42, i);
        EXPECT_EQ(rep.trials[i].params.front().second, s.params().q);
    }
}

TEST(RunIdentity, FailsWhenToleranceIsUnreachable)
{
    // w-vanishing compares against zero, so rounding noise alone exceeds this tol.
    auto c = config("w-vanishing", 2, 1);
    c.tol = 1e-30;
    c.max_weight = 2;
    const auto rep = run_identity(c);
    EXPECT_FALSE(rep.passed);
    EXPECT_EQ(exit_code(rep), 1);
}

TEST(ExitCode, InconclusiveRun)
{
    IdentityReport rep;
    rep.trials.resize(5);
    for (auto& t : rep.trials)
        t.status = "pass";
    rep.trials[0].status = rep.trials[1].status = "inconclusive";
    rep.conclusive = 3;
    rep.passed = false;
    EXPECT_EQ(exit_code(rep), 3);
}

TEST(Report, JsonShapeAndRoundTrip)
{
    const auto rep = run_identity(config("h-tq-limit", 2, 5));
    const auto j = to_json(rep);
    for (const char* k : {"identity", "config", "trials", "max_residual", "passed", "wall_time_ms"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j.size(), 6u);
    const auto& t0 = j["trials"][0];
    for (const char* k : {"params", "partitions", "residual", "status"})
        EXPECT_TRUE(t0.contains(k)) << k;
    EXPECT_TRUE(t0["params"]["q"].is_array());
    EXPECT_EQ(t0["params"]["q"].size(), 2u);

    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
}

TEST(Report, InfiniteResidualIsNull)
{
    TrialRecord r;
    r.residual = std::numeric_limits<double>::infinity();
    r.status = "fail";
    const auto j = to_json(r);
    EXPECT_TRUE(j["residual"].is_null());
    EXPECT_TRUE(std::isinf(record_from_json(j).residual));
}
