#include "orbichar/characteristics.hpp"
#include "orbichar/signature.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace orbichar;

TEST(Signature, CanonicalFormIgnoresInputOrder)
{
    auto a = OrbifoldSignature::from_orders(0, {10, 5, 5});
    auto b = OrbifoldSignature::from_orders(0, {5, 10, 5});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.multiplicity(5), BigInt(2));
    EXPECT_EQ(a.cone_count(), BigInt(3));
    EXPECT_EQ(a.str(), "Σ_0(5,5,10)");
}

TEST(Signature, RejectsOrdersBelowTwo)
{
    EXPECT_THROW(OrbifoldSignature::from_orders(0, {1}), std::invalid_argument);
    EXPECT_THROW(OrbifoldSignature(0, {{0, BigInt(1)}}), std::invalid_argument);
    EXPECT_THROW(OrbifoldSignature(0, {{3, BigInt(-1)}}), std::invalid_argument);
}

TEST(Signature, ZeroMultiplicityIsDropped)
{
    OrbifoldSignature s(1, {{3, BigInt(0)}, {4, BigInt(2)}});
    EXPECT_EQ(s.distinct_orders(), 1U);
    EXPECT_EQ(s, OrbifoldSignature::from_orders(1, {4, 4}));
}

TEST(Signature, LongRunsPrintCompactly)
{
    OrbifoldSignature s(2, {{3, BigInt(9)}, {7, BigInt(1)}});
    EXPECT_EQ(s.str(), "Σ_2(3×9,7)");
    EXPECT_EQ(OrbifoldSignature(0).str(), "Σ_0()");
}

TEST(Signature, HugeMultiplicities)
{
    BigInt huge = ipow(BigInt(10), 40);
    OrbifoldSignature s(0, {{2, huge}});
    EXPECT_EQ(s.cone_count(), huge);
    EXPECT_EQ(chi_es(s), Rational(2) - Rational(huge) / Rational(2));
}

TEST(Signature, OrderingIsGenusThenCountThenTuple)
{
    std::vector<OrbifoldSignature> v{
        OrbifoldSignature::from_orders(1, {}),         OrbifoldSignature::from_orders(0, {3, 3, 3}),
        OrbifoldSignature::from_orders(0, {2, 9}),     OrbifoldSignature::from_orders(0, {2, 3, 4}),
        OrbifoldSignature::from_orders(0, {}),         OrbifoldSignature::from_orders(0, {5}),
        OrbifoldSignature::from_orders(0, {2, 3, 3}),
    };
    std::sort(v.begin(), v.end());
    std::vector<std::string> got;
    for (const auto& s : v) {
        got.push_back(s.str());
    }
    EXPECT_EQ(got, (std::vector<std::string>{"Σ_0()", "Σ_0(5)", "Σ_0(2,9)", "Σ_0(2,3,3)", "Σ_0(2,3,4)",
                                             "Σ_0(3,3,3)", "Σ_1()"}));
}

TEST(Signature, OrderingMatchesExpandedTuples)
{
    // Compare the run-length comparison with plain lexicographic tuple order.
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 5);
    std::uniform_int_distribution<Order> ord(2, 6);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<Order> a(len(rng));
        std::vector<Order> b(a.size());
        for (auto& x : a) {
            x = ord(rng);
        }
        for (auto& x : b) {
            x = ord(rng);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        const auto sa = OrbifoldSignature::from_orders(0, a);
        const auto sb = OrbifoldSignature::from_orders(0, b);
        EXPECT_EQ(sa < sb, a < b);
        EXPECT_EQ(sa == sb, a == b);
    }
}

TEST(Signature, Diffeomorphism)
{
    EXPECT_TRUE(is_diffeomorphic(OrbifoldSignature::from_orders(0, {3, 3}), OrbifoldSignature::from_orders(0, {3, 3})));
    EXPECT_FALSE(
        is_diffeomorphic(OrbifoldSignature::from_orders(0, {5, 5, 10}), OrbifoldSignature::from_orders(0, {4, 8, 8})));
    EXPECT_FALSE(is_diffeomorphic(OrbifoldSignature(1), OrbifoldSignature::from_orders(0, {2, 2})));
}
