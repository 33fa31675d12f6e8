#include <gtest/gtest.h>

#include "support.hpp"

using namespace ellw;
using ellw::testing::C;
using ellw::testing::generic;
using ellw::testing::P_;
using ellw::testing::point;

namespace {
constexpr long double rel = 1e-11L;
const C x0(0.7L, 0.4L);
} // namespace

TEST(OmegaOne, EmptyLowerPartitionIgnoresR)
{
    const auto P = generic();
    const auto F = P.nome();
    for (const auto& lam : partitions_up_to(4, 3)) {
        const C closed = F.pf({C(1) / x0, P.a * x0}, lam) * F.inv_pf({P.q * P.b * x0, P.q * P.b / (P.a * x0)}, lam);
        EXPECT_LT(relative_residual(omega_skew_one(x0, lam, Partition(), 0, P), closed), rel) << lam.str();
        EXPECT_LT(relative_residual(omega_skew_one(x0, lam, Partition(), 0, P.with_r(C(1.9L, -0.2L))), closed), rel)
            << lam.str();
    }
}

TEST(OmegaOne, AtOneIsKronecker)
{
    const auto P = generic();
    EXPECT_LT(std::abs(omega_skew_one(C(1), Partition(), Partition(), 0, P) - C(1)), 1e-15L);
    for (const auto& lam : {P_({1}), P_({2}), P_({2, 1})})
        EXPECT_LT(std::abs(omega_skew_one(C(1), lam, Partition(), 0, P)), 1e-15L) << lam.str();
}

TEST(OmegaOne, ZeroUnlessNested)
{
    const auto P = generic();
    EXPECT_EQ(omega_skew_one(x0, P_({2}), P_({1, 1}), 2, P), C(0));
    EXPECT_EQ(omega_function(point({x0, C(1.1L)}), P_({2}), P_({1, 1}), P), C(0));
}

TEST(OmegaOne, ShiftedClosedFormAtOneVariable)
{
    const auto P = generic();
    for (const auto& lam : partitions_up_to(4, 2))
        for (const auto& mu : subpartitions(lam))
            EXPECT_LT(relative_residual(omega_shifted_closed(x0, 1, lam, mu, 0, P), omega_skew_one(x0, lam, mu, 0, P)),
                      rel)
                << lam.str() << "/" << mu.str();
}

TEST(OmegaMulti, ShiftedClosedForm)
{
    const auto P = generic();
    for (std::size_t m = 1; m <= 3; ++m) {
        const auto z = r_delta_point(x0, m, P.r);
        for (const auto& lam : {Partition(), P_({1}), P_({2})})
            EXPECT_LT(relative_residual(omega_function(z, lam, Partition(), P),
                                        omega_shifted_closed(x0, m, lam, Partition(), 0, P)),
                      rel)
                << lam.str() << " m=" << m;
    }
    const auto z2 = r_delta_point(x0, 2, P.r);
    EXPECT_LT(relative_residual(omega_function(z2, P_({2, 1}), P_({1}), P),
                                omega_shifted_closed(x0, 2, P_({2, 1}), P_({1}), 0, P)),
              rel);
}

TEST(OmegaMulti, VanishesAtRDelta)
{
    const auto P = generic();
    UnmonitoredScope quiet;
    const C v = omega_function(r_delta_point(C(1), 2, P.r), P_({1}), Partition(), P);
    EXPECT_LT(std::abs(v), 1e-12L);
    EXPECT_LT(std::abs(omega_function(r_delta_point(C(1), 2, P.r), Partition(), Partition(), P) - C(1)), 1e-15L);
}

TEST(OmegaMulti, FirstVariableOneReducesToShiftedOneVariable)
{
    const auto P = generic();
    const C x(1.2L, -0.3L);
    for (const auto& lam : partitions_up_to(3, 2)) {
        const C two = omega_function(point({C(1), x}), lam, Partition(), P);
        const C one = omega_skew_one(x / P.r, lam, Partition(), 0, P.with_ab(P.a * P.r * P.r, P.b * P.r));
        EXPECT_LT(relative_residual(two, one), rel) << lam.str();
    }
}

TEST(OmegaMulti, Symmetric)
{
    const auto P = generic();
    const auto z = point({C(0.7L, 0.2L), C(1.2L, -0.4L)});
    const auto zs = point({C(1.2L, -0.4L), C(1) / (P.a * C(0.7L, 0.2L))});
    for (const auto& lam : partitions_up_to(3, 2))
        for (const auto& mu : subpartitions(lam))
            EXPECT_LT(relative_residual(omega_function(z, lam, mu, P), omega_function(zs, lam, mu, P)), rel)
                << lam.str() << "/" << mu.str();
}

TEST(OmegaDiagonal, ClosedForm)
{
    const auto P = generic();
    for (const auto& lam : partitions_up_to(4, 3))
        EXPECT_LT(relative_residual(omega_skew_one(x0, lam, lam, 0, P), omega_diag_closed(x0, lam, 0, P)), rel)
            << lam.str();
}

TEST(CCoefficient, ExpandsShiftedW)
{
    // W_lambda(x/r; a r^2, b r) = sum_mu c_{lambda/mu}(r, a, b) W_mu(x).
    const auto P = generic();
    const C rr(0.9L, 0.3L);
    const auto x = point({C(0.7L, 0.2L), C(1.2L, -0.4L)});
    for (const auto& lam : partitions_up_to(3, 2)) {
        const C lhs = w_function(detail::scaled(x, C(1) / rr), lam, P.with_ab(P.a * rr * rr, P.b * rr));
        C rhs(0);
        for (const auto& mu : subpartitions(lam))
            rhs += c_coefficient(lam, mu, rr, 2, P) * w_function(x, mu, P);
        EXPECT_LT(relative_residual(lhs, rhs), 1e-10L) << lam.str();
    }
    EXPECT_EQ(c_coefficient(P_({1}), P_({2}), rr, 2, P), C(0));
    EXPECT_THROW(c_coefficient(P_({1, 1, 1}), Partition(), rr, 2, P), dimension_error);
}

TEST(CCoefficient, MatchesOmega)
{
    const auto P = generic();
    const C u(0.9L, 0.3L);
    for (const auto& lam : partitions_up_to(3, 2))
        for (const auto& mu : subpartitions(lam))
            EXPECT_LT(relative_residual(omega_from_c(lam, mu, u, 2, P),
                                        omega_skew_one(C(1) / u, lam, mu, 2, P.with_r(u))),
                      1e-10L)
                << lam.str() << "/" << mu.str();
}

TEST(OmegaLimit, SkewOneVariableTendsToW)
{
    const auto P = generic();
    for (const auto& lam : partitions_up_to(3, 2))
        for (const auto& mu : horizontal_strips(lam)) {
            if (mu.length() >= 2)
                continue;
            EXPECT_LT(relative_residual(omega_to_w_limit(x0, lam, mu, 2, P), w_skew_one(x0, lam, mu, P, 2)), 1e-8L)
                << lam.str() << "/" << mu.str();
        }
}

TEST(OmegaShifts, PeriodicInX)
{
    const auto P = generic();
    for (const auto& lam : partitions_up_to(3, 2))
        for (const auto& mu : subpartitions(lam))
            EXPECT_LT(relative_residual(omega_skew_one(x0, lam, mu, 0, P), omega_skew_one(P.p * x0, lam, mu, 0, P)),
                      rel)
                << lam.str() << "/" << mu.str();
}
