#include "orbichar/finite_group.hpp"
#include "orbichar/sectors.hpp"

#include <gtest/gtest.h>

using namespace orbichar;

TEST(FiniteGroup, Cyclic)
{
    const auto g = cyclic_group(6);
    EXPECT_EQ(g.order(), 6U);
    EXPECT_TRUE(g.is_abelian());
    EXPECT_EQ(g.element_order(1), 6U);
    EXPECT_EQ(g.element_order(2), 3U);
    EXPECT_EQ(g.power(1, -1), 5U);
    EXPECT_EQ(cyclic_group(1).order(), 1U);
}

TEST(FiniteGroup, Dihedral)
{
    const auto d = dihedral_group(3);
    EXPECT_EQ(d.order(), 6U);
    EXPECT_FALSE(d.is_abelian());
    for (std::size_t s = 3; s < 6; ++s) {
        EXPECT_EQ(d.element_order(s), 2U);
        // s r s^-1 = r^-1
        EXPECT_EQ(d.conjugate(s, 1), 2U);
    }
    EXPECT_EQ(dihedral_group(11).order(), 22U);
    EXPECT_TRUE(dihedral_group(2).is_abelian());
}

TEST(FiniteGroup, ValidationRejectsNonGroups)
{
    EXPECT_THROW(FiniteGroup({}), std::invalid_argument);
    EXPECT_THROW(FiniteGroup({{0, 1}, {1}}), std::invalid_argument);
    EXPECT_THROW(FiniteGroup({{0, 2}, {1, 0}}), std::invalid_argument);
    // no identity
    EXPECT_THROW(FiniteGroup({{0, 0}, {1, 1}}), std::invalid_argument);
    // identity need not be element 0
    EXPECT_EQ(FiniteGroup({{1, 0}, {0, 1}}).identity(), 1U);
    // identity 0 but 1·1 = 1 leaves 1 without inverse
    EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
    // latin square with identity that is not associative
    EXPECT_THROW(FiniteGroup({{0, 1, 2, 3, 4},
                              {1, 0, 3, 4, 2},
                              {2, 4, 0, 1, 3},
                              {3, 2, 4, 0, 1},
                              {4, 3, 1, 2, 0}}),
                 std::invalid_argument);
}

TEST(FiniteGroup, TableRoundTrip)
{
    const auto d = dihedral_group(4);
    const FiniteGroup copy(d.table());
    EXPECT_EQ(copy.table(), d.table());
    EXPECT_EQ(copy.identity(), 0U);
}

TEST(FiniteGroup, ByName)
{
    EXPECT_EQ(group_from_name("C6").order(), 6U);
    EXPECT_EQ(group_from_name("D10").order(), 10U);
    EXPECT_FALSE(group_from_name("D10").is_abelian());
    EXPECT_EQ(group_from_name("C2xC3").order(), 6U);
    EXPECT_EQ(group_from_name("C2xD6").order(), 12U);
    for (const char* bad : {"", "C", "D7", "X3", "C2x", "C-1", "D0"}) {
        EXPECT_THROW(group_from_name(bad), std::invalid_argument) << bad;
    }
}

TEST(FiniteGroup, GeneratedSubgroups)
{
    const auto c12 = cyclic_group(12);
    const std::size_t four[] = {4};
    EXPECT_EQ(generated_subgroup(c12, four), (Subgroup{0, 4, 8}));
    const std::size_t gens[] = {4, 6};
    EXPECT_EQ(generated_subgroup(c12, gens), (Subgroup{0, 2, 4, 6, 8, 10}));
    EXPECT_EQ(generated_subgroup(c12, std::span<const std::size_t>{}), (Subgroup{0}));
    EXPECT_TRUE(is_subgroup(c12, {0, 3, 6, 9}));
    EXPECT_FALSE(is_subgroup(c12, {0, 3}));
    EXPECT_FALSE(is_subgroup(c12, {3, 0, 6, 9}));
    const auto d3 = dihedral_group(3);
    const std::size_t reflections[] = {3, 4};
    EXPECT_EQ(generated_subgroup(d3, reflections).size(), 6U);
}

namespace {

// Brute-force |Hom(Z^r ⊕ ⊕Z/d, G)| straight from the table.
std::size_t brute_abelian_homs(const FiniteGroup& g, std::uint32_t rank, const std::vector<std::uint64_t>& torsion)
{
    const std::size_t n = rank + torsion.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= g.order();
    }
    std::size_t count = 0;
    std::vector<std::size_t> t(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = c % g.order();
            c /= g.order();
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = i + 1; j < n && ok; ++j) {
                ok = g.multiply(t[i], t[j]) == g.multiply(t[j], t[i]);
            }
        }
        for (std::size_t i = 0; i < torsion.size() && ok; ++i) {
            std::size_t x = g.identity();
            for (std::uint64_t k = 0; k < torsion[i]; ++k) {
                x = g.multiply(x, t[rank + i]);
            }
            ok = x == g.identity();
        }
        count += ok ? 1 : 0;
    }
    return count;
}

} // namespace

TEST(FiniteGroup, ProductOfCoprimeCyclicsMatchesCyclicHomCounts)
{
    const auto product = direct_product(cyclic_group(2), cyclic_group(3));
    const auto c6 = cyclic_group(6);
    EXPECT_TRUE(product.is_abelian());
    const std::vector<std::pair<std::uint32_t, std::vector<std::uint64_t>>> battery{
        {0, {}}, {1, {}}, {2, {}}, {3, {}}, {0, {2}}, {0, {3}}, {1, {4}}, {0, {6}}, {1, {2, 3}}};
    for (const auto& [rank, torsion] : battery) {
        const auto gamma = GammaDescriptor::abelian(rank, torsion);
        EXPECT_EQ(enumerate_homs(gamma, product).size(), enumerate_homs(gamma, c6).size());
        EXPECT_EQ(enumerate_homs(gamma, product).size(), brute_abelian_homs(product, rank, torsion));
    }
    for (std::size_t x = 0; x < product.order(); ++x) {
        if (product.element_order(x) == 6) {
            return;
        }
    }
    FAIL() << "C2xC3 has no element of order 6";
}
