#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace ellw;
using ellw::testing::P_;

TEST(Partition, RejectsIncreasingOrNegativeParts)
{
    EXPECT_THROW(P_({1, 2}), std::invalid_argument);
    EXPECT_THROW(P_({2, -1}), std::invalid_argument);
}

TEST(Partition, TrailingZerosAreIrrelevant)
{
    EXPECT_EQ(P_({2, 1, 0, 0}), P_({2, 1}));
    EXPECT_EQ(std::hash<Partition>{}(P_({2, 1, 0})), std::hash<Partition>{}(P_({2, 1})));
    EXPECT_EQ(P_({3, 0}).normalized().normalized(), P_({3}));
    EXPECT_EQ(P_({2, 1, 0}).length(), 2u);
}

TEST(Partition, Statistics)
{
    const Partition lam = P_({3, 2, 2});
    EXPECT_EQ(lam.weight(), 7);
    EXPECT_EQ(lam.n_lambda(), 0 * 3 + 1 * 2 + 2 * 2);
    EXPECT_EQ(lam.conjugate(), P_({3, 3, 1}));
    for (const auto& mu : partitions_up_to(6, 6))
        EXPECT_EQ(mu.n_conj(), mu.conjugate().n_lambda()) << mu.str();
}

TEST(Partition, ParseAndPrint)
{
    EXPECT_EQ(Partition::parse("3,1,0"), P_({3, 1}));
    EXPECT_TRUE(Partition::parse("").empty());
    EXPECT_EQ(Partition::parse(" 2 , 2 ").str(), "2,2");
    EXPECT_THROW(Partition::parse("1,x"), std::invalid_argument);
    EXPECT_THROW(Partition::parse("1,3"), std::invalid_argument);
}

TEST(Partition, Contains)
{
    EXPECT_TRUE(contains(P_({1}), P_({2, 1})));
    EXPECT_FALSE(contains(P_({2}), P_({1, 1})));
    for (const auto& lam : partitions_up_to(4, 3))
        EXPECT_TRUE(contains(Partition(), lam));
}

TEST(Partition, HorizontalStrip)
{
    EXPECT_TRUE(is_horizontal_strip(P_({3, 1}), P_({2, 1})));
    EXPECT_FALSE(is_horizontal_strip(P_({3, 3}), P_({1, 0})));
    for (const auto& lam : partitions_up_to(4, 3))
        EXPECT_TRUE(is_horizontal_strip(lam, lam));
}

TEST(Partition, SubpartitionsMatchBruteForce)
{
    EXPECT_EQ(subpartitions(P_({1})).size(), 2u);
    EXPECT_EQ(subpartitions(Partition()), std::vector<Partition>{Partition()});
    EXPECT_EQ(subpartitions(P_({2, 1})).size(), 5u);
    for (const auto& lam : partitions_up_to(6, 6)) {
        std::set<std::vector<int>> brute;
        for (const auto& mu : partitions_up_to(lam.weight(), lam.length()))
            if (contains(mu, lam))
                brute.insert(mu.normalized().parts());
        std::set<std::vector<int>> got;
        for (const auto& mu : subpartitions(lam))
            EXPECT_TRUE(got.insert(mu.normalized().parts()).second) << "duplicate " << mu.str();
        EXPECT_EQ(got, brute) << lam.str();
    }
}

TEST(Partition, SubpartitionsDescendReverseLexicographically)
{
    const auto subs = subpartitions(P_({2, 1}));
    EXPECT_EQ(subs.front(), P_({2, 1}));
    EXPECT_EQ(subs.back(), Partition());
    for (std::size_t i = 1; i < subs.size(); ++i)
        EXPECT_GT(subs[i - 1], subs[i]);
}

TEST(Partition, HorizontalStrips)
{
    const auto two = horizontal_strips(P_({2}));
    EXPECT_EQ(std::set<Partition>(two.begin(), two.end()), (std::set<Partition>{Partition(), P_({1}), P_({2})}));
    const auto sq = horizontal_strips(P_({2, 2}));
    EXPECT_EQ(std::set<Partition>(sq.begin(), sq.end()), (std::set<Partition>{P_({2}), P_({2, 1}), P_({2, 2})}));
    EXPECT_EQ(horizontal_strips(Partition()).size(), 1u);
    for (const auto& lam : partitions_up_to(6, 4))
        for (const auto& nu : horizontal_strips(lam)) {
            EXPECT_TRUE(contains(nu, lam));
            EXPECT_TRUE(is_horizontal_strip(lam, nu));
        }
}

TEST(Partition, SpectralPoint)
{
    using Cd = std::complex<double>;
    const Cd q(0.5), t(0.3);
    EXPECT_EQ(spectral_point(Partition(), 2, q, t), (std::vector<Cd>{t, Cd(1)}));
    EXPECT_EQ(spectral_point(P_({1}), 1, q, t), std::vector<Cd>{q});
    const auto x = spectral_point(P_({2, 1}), 3, q, t);
    EXPECT_NEAR(x[0].real(), 0.0225, 1e-15);
    EXPECT_NEAR(x[1].real(), 0.15, 1e-15);
    EXPECT_EQ(x[2], Cd(1));
    EXPECT_THROW(spectral_point(P_({1, 1, 1}), 2, q, t), dimension_error);
}

TEST(Partition, Complement)
{
    EXPECT_EQ(complement(P_({2, 1}), 3, 2), P_({2, 1}));
    EXPECT_EQ(complement(Partition(), 2, 2), P_({2, 2}));
    EXPECT_EQ(complement(P_({3, 1, 0}), 3, 3), P_({3, 2}));
    EXPECT_THROW(complement(P_({4}), 3, 2), dimension_error);
    for (const auto& lam : subpartitions(rectangle(3, 3)))
        EXPECT_EQ(complement(complement(lam, 3, 3), 3, 3), lam);
}
