#ifndef ORBICHAR_SECTORS_HPP
#define ORBICHAR_SECTORS_HPP

#include "orbichar/errors.hpp"
#include "orbichar/finite_group.hpp"
#include "orbichar/gamma.hpp"
#include "orbichar/mirrored.hpp"
#include "orbichar/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbichar {

/// Images of the Γ-generators, one element index per generator.
using Hom = std::vector<std::size_t>;

inline constexpr std::uint64_t default_hom_budget = 10'000'000;

struct HomClass {
    Hom representative;
    std::size_t class_size = 0;
    std::size_t centralizer_order = 0;
    Subgroup image;
};

inline std::string subgroup_str(const Subgroup& h)
{
    std::string s = "{";
    for (std::size_t i = 0; i < h.size(); ++i) {
        s += (i == 0 ? "" : ",") + std::to_string(h[i]);
    }
    return s + "}";
}

/// χ_top(M^H) for subgroups H of the acting group.
class FixedPointCharacter {
public:
    FixedPointCharacter() = default;

    void set(Subgroup h, long long chi)
    {
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
        values_[std::move(h)] = chi;
    }

    bool contains(const Subgroup& h) const { return values_.count(h) != 0; }

    long long at(const Subgroup& h) const
    {
        auto it = values_.find(h);
        if (it == values_.end()) {
            throw std::out_of_range("fixed-point character has no entry for subgroup " + subgroup_str(h));
        }
        return it->second;
    }

    const std::map<Subgroup, long long>& entries() const { return values_; }

    /// Every key must be a subgroup of `group`.
    void validate(const FiniteGroup& group) const
    {
        for (const auto& [h, chi] : values_) {
            if (!is_subgroup(group, h)) {
                throw std::invalid_argument("fixed-point character key " + subgroup_str(h) + " is not a subgroup");
            }
        }
    }

    /// Same value on every subgroup of `group`.
    static FixedPointCharacter constant(const FiniteGroup& group, long long chi);

private:
    std::map<Subgroup, long long> values_;
};

namespace detail {

inline std::uint64_t tuple_space(std::size_t order, std::size_t generators)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < generators; ++i) {
        if (total > UINT64_MAX / order) {
            return UINT64_MAX;
        }
        total *= order;
    }
    return total;
}

inline std::size_t evaluate_word(const FiniteGroup& group, const Word& word, const Hom& images)
{
    std::size_t x = group.identity();
    for (const auto& letter : word) {
        x = group.multiply(x, group.power(images[letter.generator], letter.exponent));
    }
    return x;
}

inline std::size_t power_u64(const FiniteGroup& group, std::size_t a, std::uint64_t d)
{
    return group.power(a, static_cast<long long>(d % group.element_order(a)));
}

} // namespace detail

/// All homomorphisms Γ → G as generator-image tuples, in lexicographic order.
inline std::vector<Hom> enumerate_homs(const GammaDescriptor& gamma, const FiniteGroup& group,
                                       std::uint64_t budget = default_hom_budget)
{
    const std::size_t n = gamma.generator_count();
    const std::uint64_t space = detail::tuple_space(group.order(), n);
    if (space > budget) {
        throw BudgetExceeded("hom enumeration " + gamma.str() + " -> group of order " + std::to_string(group.order())
                             + " needs " + (space == UINT64_MAX ? std::string("more than 2^64") : std::to_string(space))
                             + " tuples, budget is " + std::to_string(budget));
    }

    // allowed(i, tuple-prefix, x): may generator i map to x given earlier images
    std::vector<Hom> result;
    Hom current(n, 0);
    const auto& value = gamma.value();

    std::function<bool(std::size_t, std::size_t)> allowed;
    std::function<bool()> complete_ok;
    if (const auto* a = std::get_if<FgAbelian>(&value)) {
        allowed = [&group, &current, a](std::size_t i, std::size_t x) {
            if (i >= a->rank) {
                if (detail::power_u64(group, x, a->torsion[i - a->rank]) != group.identity()) {
                    return false;
                }
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (!group.commute(current[j], x)) {
                    return false;
                }
            }
            return true;
        };
        complete_ok = [] { return true; };
    } else if (const auto* p = std::get_if<Presentation>(&value)) {
        allowed = [](std::size_t, std::size_t) { return true; };
        complete_ok = [&group, &current, p] {
            return std::all_of(p->relators.begin(), p->relators.end(), [&](const Word& w) {
                return detail::evaluate_word(group, w, current) == group.identity();
            });
        };
    } else {
        allowed = [](std::size_t, std::size_t) { return true; };
        complete_ok = [] { return true; };
    }

    std::function<void(std::size_t)> fill = [&](std::size_t i) {
        if (i == n) {
            if (complete_ok()) {
                result.push_back(current);
            }
            return;
        }
        for (std::size_t x = 0; x < group.order(); ++x) {
            if (allowed(i, x)) {
                current[i] = x;
                fill(i + 1);
            }
        }
    };
    fill(0);
    return result;
}

inline Subgroup hom_image(const FiniteGroup& group, const Hom& hom)
{
    return generated_subgroup(group, hom);
}

/// Partition of a hom list into simultaneous-conjugation classes. The
/// representative is the lexicographically smallest member.
inline std::vector<HomClass> classes_of(const FiniteGroup& group, const std::vector<Hom>& homs)
{
    std::map<Hom, std::size_t> index;
    for (std::size_t i = 0; i < homs.size(); ++i) {
        index.emplace(homs[i], i);
    }
    std::vector<bool> seen(homs.size(), false);
    std::vector<HomClass> classes;
    for (std::size_t i = 0; i < homs.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        std::set<Hom> orbit;
        std::size_t stabilizer = 0;
        for (std::size_t g = 0; g < group.order(); ++g) {
            Hom c = homs[i];
            for (auto& x : c) {
                x = group.conjugate(g, x);
            }
            if (c == homs[i]) {
                ++stabilizer;
            }
            orbit.insert(std::move(c));
        }
        for (const auto& h : orbit) {
            auto it = index.find(h);
            if (it == index.end()) {
                throw std::logic_error("hom list is not closed under conjugation");
            }
            seen[it->second] = true;
        }
        classes.push_back({homs[i], orbit.size(), stabilizer, hom_image(group, homs[i])});
    }
    return classes;
}

inline std::vector<HomClass> hom_classes(const GammaDescriptor& gamma, const FiniteGroup& group,
                                         std::uint64_t budget = default_hom_budget)
{
    return classes_of(group, enumerate_homs(gamma, group, budget));
}

/// Γ-Euler-Satake characteristic of the global quotient M ⋊ G, where M is
/// known only through its fixed-point character. Computed both as a sum over
/// classes and as an average over all homs; the two must agree.
inline Rational chi_gamma_quotient(const FiniteGroup& group, const FixedPointCharacter& fpc,
                                   const GammaDescriptor& gamma, std::uint64_t budget = default_hom_budget)
{
    fpc.validate(group);
    const auto homs = enumerate_homs(gamma, group, budget);
    Rational by_class;
    for (const auto& c : classes_of(group, homs)) {
        by_class += Rational(BigInt(fpc.at(c.image)), BigInt(c.centralizer_order));
    }
    BigInt total = 0;
    for (const auto& h : homs) {
        total += fpc.at(hom_image(group, h));
    }
    const Rational averaged(total, BigInt(group.order()));
    if (by_class != averaged) {
        throw VerificationFailure("class sum " + by_class.str() + " differs from averaged sum " + averaged.str());
    }
    return by_class;
}

/// All subgroups, as sorted index sets, found by saturating every pair of
/// elements (enough for the cyclic and small groups used here).
inline std::vector<Subgroup> cyclic_and_two_generated_subgroups(const FiniteGroup& group)
{
    std::set<Subgroup> found;
    for (std::size_t a = 0; a < group.order(); ++a) {
        for (std::size_t b = a; b < group.order(); ++b) {
            const std::size_t gens[2] = {a, b};
            found.insert(generated_subgroup(group, gens));
        }
    }
    return {found.begin(), found.end()};
}

inline FixedPointCharacter FixedPointCharacter::constant(const FiniteGroup& group, long long chi)
{
    FixedPointCharacter f;
    for (auto& h : cyclic_and_two_generated_subgroups(group)) {
        f.set(std::move(h), chi);
    }
    return f;
}

enum class FixedSetKind { sphere, two_poles };

inline const char* to_string(FixedSetKind k)
{
    return k == FixedSetKind::sphere ? "sphere" : "two_poles";
}

/// Z/n acting on S² with the generator rotating by 2πr/n.
struct RotationSphereAction {
    FiniteGroup group;
    FixedPointCharacter fpc;
    Subgroup kernel;
    std::map<Subgroup, FixedSetKind> fixed_sets;
};

inline RotationSphereAction rotation_sphere_action(std::size_t n, std::size_t r)
{
    if (n < 2) {
        throw std::invalid_argument("rotation group order must be at least 2");
    }
    if (r < 1 || r >= n) {
        throw std::invalid_argument("rotation step must satisfy 1 <= r < n, got r = " + std::to_string(r));
    }
    auto group = cyclic_group(n);
    const std::size_t step = n / std::gcd(n, r);
    Subgroup kernel;
    for (std::size_t i = 0; i < n; i += step) {
        kernel.push_back(i);
    }
    FixedPointCharacter fpc;
    std::map<Subgroup, FixedSetKind> kinds;
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        Subgroup h;
        for (std::size_t i = 0; i < n; i += d) {
            h.push_back(i);
        }
        const bool inside = std::includes(kernel.begin(), kernel.end(), h.begin(), h.end());
        kinds[h] = inside ? FixedSetKind::sphere : FixedSetKind::two_poles;
        fpc.set(h, 2);
    }
    return {std::move(group), std::move(fpc), std::move(kernel), std::move(kinds)};
}

/// Sectors contributed by one corner reflector D_2n.
struct CornerSectors {
    Order corner = 0;
    std::size_t rotation_classes = 0;   // point sectors, trivial Z/n action
    std::size_t reflection_classes = 0; // circle sectors, contribute 0
    std::size_t nonabelian_classes = 0; // point sectors with the centralizer acting
    Rational contribution;
};

struct MirroredSectors {
    Rational identity_sector;
    std::vector<CornerSectors> corners;
    Rational total;
};

/// Sector inventory of a mirrored cylinder with odd corner orders.
/// Reflection-image sectors are modelled as circles (χ = 0).
inline MirroredSectors mirrored_sectors(const MirroredCylinder& mc, const GammaDescriptor& gamma,
                                        std::uint64_t budget = default_hom_budget)
{
    MirroredSectors out;
    out.identity_sector = chi_es_mirrored(mc);
    out.total = out.identity_sector;
    for (Order n : mc.corners()) {
        if (n % 2 == 0) {
            throw Unsupported("mirrored sectors need odd corner orders, got " + std::to_string(n));
        }
        if (n > 100000) {
            throw Unsupported("corner order " + std::to_string(n) + " is too large for table enumeration");
        }
        const auto group = dihedral_group(static_cast<std::size_t>(n));
        CornerSectors cs;
        cs.corner = n;
        for (const auto& c : hom_classes(gamma, group, budget)) {
            if (c.image.size() == 1) {
                continue;
            }
            const bool rotations_only = c.image.back() < n;
            if (rotations_only) {
                ++cs.rotation_classes;
                cs.contribution += Rational(BigInt(1), BigInt(c.centralizer_order));
            } else if (c.image.size() == 2) {
                ++cs.reflection_classes;
            } else {
                ++cs.nonabelian_classes;
                cs.contribution += Rational(BigInt(1), BigInt(c.centralizer_order));
            }
        }
        out.total += cs.contribution;
        out.corners.push_back(std::move(cs));
    }
    return out;
}

inline Rational chi_gamma_mirrored(const MirroredCylinder& mc, const GammaDescriptor& gamma,
                                   std::uint64_t budget = default_hom_budget)
{
    return mirrored_sectors(mc, gamma, budget).total;
}

} // namespace orbichar

#endif
