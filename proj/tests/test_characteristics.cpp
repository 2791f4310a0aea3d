#include "orbichar/characteristics.hpp"
#include "orbichar/mirrored.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbichar;

namespace {

Rational frac(long long p, long long q) { return Rational(BigInt(p), BigInt(q)); }

OrbifoldSignature sig(std::uint64_t g, std::initializer_list<Order> orders)
{
    return OrbifoldSignature::from_orders(g, orders);
}

std::vector<Order> expand(const OrbifoldSignature& s)
{
    std::vector<Order> out;
    for (const auto& [m, c] : s.cones()) {
        for (BigInt i = 0; i < c; ++i) {
            out.push_back(m);
        }
    }
    return out;
}

OrbifoldSignature random_signature(std::mt19937& rng, int max_genus, int max_cones, Order max_order)
{
    std::uniform_int_distribution<int> g(0, max_genus);
    std::uniform_int_distribution<int> k(0, max_cones);
    std::uniform_int_distribution<Order> m(2, max_order);
    std::vector<Order> orders(static_cast<std::size_t>(k(rng)));
    for (auto& x : orders) {
        x = m(rng);
    }
    return OrbifoldSignature::from_orders(static_cast<std::uint64_t>(g(rng)), orders);
}

} // namespace

TEST(ChiTop, Values)
{
    EXPECT_EQ(chi_top(sig(0, {})), BigInt(2));
    EXPECT_EQ(chi_top(sig(1, {3, 3})), BigInt(0));
    EXPECT_EQ(chi_top(sig(2, {5})), BigInt(-2));
}

TEST(ChiEs, SameValueDifferentCones)
{
    for (std::uint64_t g = 0; g <= 5; ++g) {
        const Rational expected = Rational(-4) - Rational(2 * static_cast<long long>(g));
        EXPECT_EQ(chi_es(OrbifoldSignature(g, {{3, BigInt(9)}})), expected);
        EXPECT_EQ(chi_es(OrbifoldSignature(g, {{4, BigInt(8)}})), expected);
    }
    EXPECT_EQ(chi_es(sig(0, {})), Rational(2));
}

TEST(ChiL, BaseCaseValues)
{
    EXPECT_EQ(chi_l(sig(0, {5, 5, 10}), 2), Rational(19));
    EXPECT_EQ(chi_l(sig(0, {4, 8, 8}), 2), Rational(19));
    EXPECT_EQ(chi_l(sig(0, {5, 5, 10}), 0), frac(-1, 2));
    EXPECT_EQ(chi_l(sig(3, {5, 5, 10}), 1), Rational(-4));
}

TEST(ChiL, MatchesExpandedOracle)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_signature(rng, 4, 8, 30);
        for (std::uint64_t l = 0; l <= 6; ++l) {
            EXPECT_EQ(chi_l(s, l), oracle::chi_l(s.genus(), expand(s), l)) << s.str() << " l=" << l;
        }
        EXPECT_EQ(chi_l(s, 1), Rational(chi_top(s)));
        for (std::uint64_t l = 1; l <= 6; ++l) {
            EXPECT_TRUE(chi_l(s, l).is_integer());
        }
    }
}

TEST(HomCountCyclic, Examples)
{
    EXPECT_EQ(hom_count_cyclic(GammaDescriptor::free_abelian(2), 6), BigInt(36));
    EXPECT_EQ(hom_count_cyclic(GammaDescriptor::trivial(), 7), BigInt(1));
    EXPECT_EQ(hom_count_cyclic(GammaDescriptor::parse("Z+Z/4"), 6), BigInt(12));
    EXPECT_EQ(hom_count_cyclic(GammaDescriptor::free(3), 5), BigInt(125));
}

TEST(HomCountCyclic, MatchesBruteForce)
{
    const std::vector<std::vector<std::uint64_t>> torsions{{}, {2}, {3}, {4}, {8}, {2, 2}, {2, 6}, {4, 8}, {3, 5}, {6, 7}};
    for (std::uint32_t rank = 0; rank <= 2; ++rank) {
        for (const auto& t : torsions) {
            const FgAbelian a{rank, t};
            for (std::uint64_t m = 1; m <= 12; ++m) {
                EXPECT_EQ(hom_count_cyclic(a, m), BigInt(oracle::hom_count_cyclic(rank, t, m)))
                    << "rank " << rank << " m " << m;
            }
        }
    }
}

TEST(ChiGamma, Examples)
{
    EXPECT_EQ(chi_gamma(sig(0, {5, 5, 10}), GammaDescriptor::free_abelian(2)), Rational(19));
    EXPECT_EQ(chi_gamma(sig(0, {4, 4}), GammaDescriptor::parse("Z/2")), Rational(1));
    const auto s = sig(2, {3, 7, 7, 12});
    EXPECT_EQ(chi_gamma(s, GammaDescriptor::trivial()), chi_es(s));
}

TEST(ChiGamma, AgreesWithChiLForFreeAndFreeAbelian)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_signature(rng, 3, 6, 20);
        for (std::uint32_t l = 0; l <= 6; ++l) {
            EXPECT_EQ(chi_gamma(s, GammaDescriptor::free(l)), chi_l(s, l));
            EXPECT_EQ(chi_gamma(s, GammaDescriptor::free_abelian(l)), chi_l(s, l));
        }
    }
}

TEST(ChiGamma, MatchesSectorCensus)
{
    std::mt19937 rng(17);
    const std::vector<std::pair<std::uint32_t, std::vector<std::uint64_t>>> groups{
        {0, {}}, {1, {}}, {0, {2}}, {1, {4}}, {2, {6}}, {0, {3, 4}}};
    for (int trial = 0; trial < 60; ++trial) {
        const auto s = random_signature(rng, 3, 6, 12);
        for (const auto& [rank, t] : groups) {
            EXPECT_EQ(chi_gamma(s, GammaDescriptor::abelian(rank, t)), oracle::chi_gamma_census(s.genus(), expand(s), rank, t));
        }
    }
}

TEST(ChiGamma, PresentedEqualsAbelianized)
{
    const auto s = sig(1, {2, 3, 4, 6, 12});
    for (const char* spec : {"<x,y | xyx^-1y^-1>", "<x | x^6>", "<a,b | a^2, b^3, abab>", "<a,b,c | a^4b^2, c^6>"}) {
        const auto g = GammaDescriptor::parse(spec);
        const auto ab = abelianize(g);
        EXPECT_EQ(chi_gamma(s, g), chi_gamma(s, GammaDescriptor::abelian(ab.rank, ab.torsion)))
            << spec;
    }
}

TEST(ChiGamma, TimesManifold)
{
    const auto s = sig(0, {5, 5, 10});
    const auto z2 = GammaDescriptor::free_abelian(2);
    EXPECT_EQ(chi_gamma_times_manifold(s, z2, 2), Rational(38));
    EXPECT_EQ(chi_gamma_times_manifold(s, z2, 0), Rational(0));
    EXPECT_EQ(chi_gamma_times_manifold(s, z2, 1), chi_gamma(s, z2));
}

TEST(Mirrored, ExampleValue)
{
    EXPECT_EQ(chi_es_mirrored(MirroredCylinder({3, 5}, {7, 11})), frac(-1867, 1155));
    EXPECT_EQ(chi_es_mirrored(MirroredCylinder({3, 7}, {5, 11})), frac(-1867, 1155));
    EXPECT_EQ(chi_es_mirrored(MirroredCylinder({}, {})), Rational(0));
}

TEST(Mirrored, DependsOnlyOnCornerMultiset)
{
    const std::vector<Order> corners{3, 5, 7, 9, 11};
    const auto reference = chi_es_mirrored(MirroredCylinder(corners, {}));
    for (unsigned mask = 0; mask < 32; ++mask) {
        std::vector<Order> b0;
        std::vector<Order> b1;
        for (unsigned i = 0; i < corners.size(); ++i) {
            ((mask >> i) & 1U ? b0 : b1).push_back(corners[i]);
        }
        EXPECT_EQ(chi_es_mirrored(MirroredCylinder(b0, b1)), reference);
        Rational direct;
        for (Order n : corners) {
            direct -= (Rational(1) - frac(1, static_cast<long long>(n))) / Rational(2);
        }
        EXPECT_EQ(reference, direct);
    }
}

TEST(Mirrored, Diffeomorphism)
{
    const MirroredCylinder q({3, 5}, {7, 11});
    EXPECT_FALSE(is_diffeomorphic(q, MirroredCylinder({3, 7}, {5, 11})));
    EXPECT_TRUE(is_diffeomorphic(q, MirroredCylinder({11, 7}, {5, 3})));
    EXPECT_TRUE(is_diffeomorphic(q, q));
    EXPECT_THROW(MirroredCylinder({1}, {}), std::invalid_argument);
}
