#include <gtest/gtest.h>

#include "support.hpp"

using namespace ellw;
using ellw::testing::C;
using ellw::testing::P_;

namespace {
constexpr long double tight = 1e-16L;
}

TEST(Theta, TrigonometricAndZero)
{
    const C x(0.3L, 0.7L);
    EXPECT_EQ(theta(x, C(0)), C(1) - x);
    EXPECT_LT(std::abs(theta(C(1), C(0.4L, 0.2L))), tight);
}

TEST(Theta, QuasiPeriodicity)
{
    const C x(0.3L, 0.1L), p(0.2L);
    EXPECT_LT(relative_residual(theta(p * x, p), -theta(x, p) / x), tight);
}

TEST(Theta, Reflection)
{
    const C x(0.8L, -0.4L), p = std::polar(0.5L, 2.0L);
    EXPECT_LT(relative_residual(theta(x, p), theta(p / x, p)), tight);
}

TEST(Theta, DomainErrors)
{
    EXPECT_THROW(theta(C(0.5L), C(1)), domain_error);
    EXPECT_THROW(theta(C(0), C(0.3L)), domain_error);
}

TEST(Factorial, EmptySingleAndNegative)
{
    const C a(0.4L), q(0.6L), p(0.1L);
    EXPECT_EQ(qp_factorial(a, q, p, 0), C(1));
    EXPECT_LT(relative_residual(qp_factorial(a, q, p, 1), theta(a, p)), tight);
    const C prod = qp_factorial(a, q, p, -3) * qp_factorial(a / (q * q * q), q, p, 3);
    EXPECT_LT(std::abs(prod - C(1)), tight);
}

TEST(Factorial, StepRecurrence)
{
    const C a(0.7L, 0.3L), q = std::polar(0.5L, 0.3L), p = std::polar(0.2L, -1.0L);
    for (long m = -5; m <= 5; ++m)
        EXPECT_LT(relative_residual(qp_factorial(a, q, p, m + 1),
                                    qp_factorial(a, q, p, m) * theta(a * ipow(q, m), p)),
                  1e-15L)
            << m;
}

TEST(Factorial, NegativeIndexReportsPole)
{
    Nome<long double> F{C(0.5L), C(0.1L), C(0.3L)};
    // (a;q,p)_{-1} = 1/E(a/q); a = q puts a zero in the denominator.
    try {
        F.qp(C(0.5L), -1);
        FAIL() << "expected a pole";
    } catch (const pole_error& e) {
        EXPECT_NE(std::string(e.what()).find("E(a q^0)"), std::string::npos) << e.what();
    }
}

TEST(Factorial, PartitionFactorial)
{
    Params<long double> P = ellw::testing::generic();
    P.q = 0.5L;
    P.t = 0.4L;
    P.p = 0.1L;
    const C a(0.3L);
    EXPECT_EQ(partition_factorial(a, Partition(), P), C(1));
    EXPECT_LT(relative_residual(partition_factorial(a, P_({3}), P), qp_factorial(a, P.q, P.p, 3)), tight);
    EXPECT_LT(relative_residual(partition_factorial(a, P_({2, 1}), P),
                                qp_factorial(a, P.q, P.p, 2) * qp_factorial(a / P.t, P.q, P.p, 1)),
              tight);
    EXPECT_LT(relative_residual(partition_factorial(a, P_({2, 1, 0, 0}), P), partition_factorial(a, P_({2, 1}), P)),
              tight);
}

TEST(Factorial, MultiFactorial)
{
    const auto P = ellw::testing::generic();
    const C a(0.9L, 0.2L), b(-0.4L, 1.1L);
    const Partition lam = P_({3, 1});
    EXPECT_EQ(multi_factorial<long double>({}, lam, P), C(1));
    EXPECT_EQ(multi_factorial({a}, lam, P), partition_factorial(a, lam, P));
    EXPECT_LT(relative_residual(multi_factorial({a, b}, lam, P),
                                partition_factorial(a, lam, P) * partition_factorial(b, lam, P)),
              tight);
}

TEST(Factorial, TrigonometricLimit)
{
    Params<long double> P = ellw::testing::generic();
    P.p = 0;
    const C a(0.6L, -0.2L);
    for (const auto& lam : partitions_up_to(5, 3)) {
        C direct(1);
        for (std::size_t i = 1; i <= lam.length(); ++i)
            for (int k = 0; k < lam(i); ++k)
                direct *= C(1) - a * ipow(P.t, 1 - static_cast<long>(i)) * ipow(P.q, k);
        EXPECT_LT(relative_residual(partition_factorial(a, lam, P), direct), 1e-15L) << lam.str();
    }
}

TEST(Factorial, PShiftLaw)
{
    const auto P = ellw::testing::generic();
    const C x(0.7L, 0.5L);
    for (const auto& lam : partitions_up_to(4, 3)) {
        const long w = lam.weight();
        const C lhs = partition_factorial(P.p * x, lam, P);
        const C rhs = C(w % 2 ? -1 : 1) * ipow(x, -w) * ipow(P.t, lam.n_lambda()) * ipow(P.q, -lam.n_conj()) *
                      partition_factorial(x, lam, P);
        EXPECT_LT(relative_residual(lhs, rhs), 1e-14L) << lam.str();
    }
}

TEST(Params, ValidateRejectsZerosAndLargeNome)
{
    auto P = ellw::testing::generic();
    EXPECT_NO_THROW(P.validate());
    auto bad = P;
    bad.b = 0;
    EXPECT_THROW(bad.validate(), domain_error);
    bad = P;
    bad.p = 1.2L;
    EXPECT_THROW(bad.validate(), domain_error);
}

TEST(PoleThreshold, GuardRestores)
{
    const long double before = pole_threshold();
    {
        PoleThresholdGuard g(1e-6L);
        EXPECT_EQ(pole_threshold(), 1e-6L);
    }
    EXPECT_EQ(pole_threshold(), before);
}

TEST(CircleLimit, RemovableSingularity)
{
    // sin(e)/e -> 1
    const auto v = circle_limit<long double>([](C e) { return std::sin(e) / e; }, 0.1L);
    EXPECT_LT(std::abs(v - C(1)), 1e-17L);
}
