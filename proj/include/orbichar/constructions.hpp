#ifndef ORBICHAR_CONSTRUCTIONS_HPP
#define ORBICHAR_CONSTRUCTIONS_HPP

#include "orbichar/characteristics.hpp"
#include "orbichar/errors.hpp"
#include "orbichar/gamma.hpp"
#include "orbichar/signature.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbichar {

namespace detail {

inline Order checked_order(const BigInt& value)
{
    if (value > std::numeric_limits<Order>::max()) {
        throw std::overflow_error("cone order " + value.str() + " exceeds 64-bit range");
    }
    return static_cast<Order>(value);
}

} // namespace detail

/// s ⋄ Q: every cone order multiplied by s.
inline OrbifoldSignature scale(const OrbifoldSignature& sig, std::uint64_t s)
{
    if (s < 1) {
        throw std::invalid_argument("scale factor must be at least 1");
    }
    OrbifoldSignature::ConeMap cones;
    for (const auto& [order, count] : sig.cones()) {
        cones[detail::checked_order(BigInt(order) * s)] += count;
    }
    return OrbifoldSignature(sig.genus(), std::move(cones));
}

/// t ⋆ Q: every cone point repeated t times.
inline OrbifoldSignature repeat(const OrbifoldSignature& sig, const BigInt& t)
{
    if (t < 1) {
        throw std::invalid_argument("repeat factor must be at least 1");
    }
    OrbifoldSignature::ConeMap cones = sig.cones();
    for (auto& [order, count] : cones) {
        count *= t;
    }
    return OrbifoldSignature(sig.genus(), std::move(cones));
}

/// Q ⊛ Q': union of the cone points of two signatures of the same genus.
inline OrbifoldSignature combine(const OrbifoldSignature& a, const OrbifoldSignature& b)
{
    if (a.genus() != b.genus()) {
        throw std::invalid_argument("combine requires equal genus, got " + std::to_string(a.genus()) + " and "
                                    + std::to_string(b.genus()));
    }
    OrbifoldSignature::ConeMap cones = a.cones();
    for (const auto& [order, count] : b.cones()) {
        cones[order] += count;
    }
    return OrbifoldSignature(a.genus(), std::move(cones));
}

/// Drops one cone point of order m. χ_(l) shifts by 1 - m^(l-1).
inline OrbifoldSignature remove_cone_point(const OrbifoldSignature& sig, Order m)
{
    auto cones = sig.cones();
    auto it = cones.find(m);
    if (it == cones.end()) {
        throw std::invalid_argument("no cone point of order " + std::to_string(m) + " in " + sig.str());
    }
    it->second -= 1;
    return OrbifoldSignature(sig.genus(), std::move(cones));
}

/// True when χ_(l) agrees for every 0 <= l <= max_l.
inline bool agree_through(const OrbifoldSignature& a, const OrbifoldSignature& b, std::uint64_t max_l)
{
    for (std::uint64_t l = 0; l <= max_l; ++l) {
        if (chi_l(a, l) != chi_l(b, l)) {
            return false;
        }
    }
    return true;
}

/// Smallest l in [from, to] with χ_(l)(a) != χ_(l)(b).
inline std::optional<std::uint64_t> first_disagreement(const OrbifoldSignature& a, const OrbifoldSignature& b,
                                                       std::uint64_t from, std::uint64_t to)
{
    for (std::uint64_t l = from; l <= to; ++l) {
        if (chi_l(a, l) != chi_l(b, l)) {
            return l;
        }
    }
    return std::nullopt;
}

/// Q[g,q] = Σ_g(2q+1, 2q+1, 2q²+q) and Q'[g,q] = Σ_g(q+2, q²+2q, q²+2q).
/// χ_(0), χ_(1) and χ_(2) agree; the two are never equal.
inline SignaturePair base_pair(std::uint64_t genus, std::uint64_t q)
{
    if (q < 2) {
        throw std::invalid_argument("base pair parameter q must be at least 2, got " + std::to_string(q));
    }
    const BigInt bq = q;
    OrbifoldSignature::ConeMap first;
    first[detail::checked_order(2 * bq + 1)] += 2;
    first[detail::checked_order(2 * bq * bq + bq)] += 1;
    OrbifoldSignature::ConeMap second;
    second[detail::checked_order(bq + 2)] += 1;
    second[detail::checked_order(bq * bq + 2 * bq)] += 2;
    return {OrbifoldSignature(genus, std::move(first)), OrbifoldSignature(genus, std::move(second))};
}

enum class EqualizeMode {
    lcm,     ///< t_j = lcm(k_1..k_N) / k_j
    product, ///< t_j = Π_{i≠j} k_i
};

struct EqualizedPairs {
    std::vector<SignaturePair> pairs;
    std::vector<BigInt> multipliers;
};

/// Repeats each pair so that every output signature has the same cone count.
/// Characteristic agreement within a pair is preserved by repetition.
inline EqualizedPairs equalize_cone_counts(const std::vector<SignaturePair>& pairs,
                                           EqualizeMode mode = EqualizeMode::lcm)
{
    std::vector<BigInt> counts;
    counts.reserve(pairs.size());
    for (const auto& p : pairs) {
        BigInt k = p.first.cone_count();
        if (k != p.second.cone_count()) {
            throw std::invalid_argument("pair members have different cone counts: " + p.first.str() + " vs "
                                        + p.second.str());
        }
        if (k == 0) {
            throw std::invalid_argument("cannot equalize a pair without cone points");
        }
        if (p.first.genus() != p.second.genus() || p.first.genus() != pairs.front().first.genus()) {
            throw std::invalid_argument("all pairs must share one genus");
        }
        counts.push_back(std::move(k));
    }

    EqualizedPairs out;
    if (mode == EqualizeMode::lcm) {
        BigInt common = 1;
        for (const auto& k : counts) {
            common = boost::multiprecision::lcm(common, k);
        }
        for (const auto& k : counts) {
            out.multipliers.push_back(common / k);
        }
    } else {
        for (std::size_t j = 0; j < counts.size(); ++j) {
            BigInt t = 1;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (i != j) {
                    t *= counts[i];
                }
            }
            out.multipliers.push_back(std::move(t));
        }
    }
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto& t = out.multipliers[j];
        out.pairs.push_back({repeat(pairs[j].first, t), repeat(pairs[j].second, t)});
    }
    return out;
}

/// One merge of two adjacent pairs while raising agreement from level n to n+1.
struct MergeStep {
    enum class Kind { pass_left, pass_right, merged };

    std::uint64_t level = 0; ///< agreement level n of the inputs
    std::size_t left = 0;    ///< index of the left input pair at this level
    Kind kind = Kind::merged;
    BigInt delta1;           ///< Σa^n - Σb^n after any role swap
    BigInt delta2;           ///< Σd^n - Σc^n after any role swap
    bool swapped_left = false;
    bool swapped_right = false;
};

struct CollisionBuild {
    SignaturePair pair;
    std::vector<MergeStep> steps;
};

namespace detail {

inline BigInt power_sum_difference(const OrbifoldSignature& a, const OrbifoldSignature& b, std::uint64_t n)
{
    return (power_sum(a, static_cast<long long>(n)) - power_sum(b, static_cast<long long>(n))).to_integer();
}

} // namespace detail

/// Two distinct signatures of genus g with equal cone counts whose χ_(l)
/// agree for every l <= L, built only from cone orders
/// {2q+1, 2q²+q, q+2, q²+2q : q ∈ R}.
///
/// Starting from the base pairs for the ascending elements of R (agreement
/// through l = 2), adjacent pairs are merged level by level. A pair that
/// already agrees one level higher is passed through unchanged; otherwise
/// the two pairs are cross-weighted by their power-sum defects so the next
/// defect cancels. Cone counts are re-equalized after each full level.
/// Needs |R| = 2^(L-2) for L >= 3; for L <= 2 the smallest element of R is used.
inline CollisionBuild build_collision_pair(std::uint64_t L, std::uint64_t genus, std::vector<std::uint64_t> R,
                                           EqualizeMode mode = EqualizeMode::lcm)
{
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    if (R.empty()) {
        throw std::invalid_argument("the base order set R must not be empty");
    }
    if (R.front() < 2) {
        throw std::invalid_argument("elements of R must be at least 2");
    }
    if (L >= 3) {
        if (L - 2 >= 63) {
            throw std::invalid_argument("L is too large");
        }
        const std::uint64_t needed = std::uint64_t{1} << (L - 2);
        if (R.size() != needed) {
            throw std::invalid_argument("L = " + std::to_string(L) + " needs exactly " + std::to_string(needed)
                                        + " distinct base orders, got " + std::to_string(R.size()));
        }
    } else {
        R.resize(1);
    }

    CollisionBuild build;
    std::vector<SignaturePair> pairs;
    pairs.reserve(R.size());
    for (auto q : R) {
        pairs.push_back(base_pair(genus, q));
    }

    for (std::uint64_t n = 2; n < L; ++n) {
        std::vector<SignaturePair> next;
        for (std::size_t j = 0; j + 1 < pairs.size(); j += 2) {
            SignaturePair left = pairs[j];
            SignaturePair right = pairs[j + 1];
            MergeStep step;
            step.level = n;
            step.left = j;
            step.delta1 = detail::power_sum_difference(left.first, left.second, n);
            if (step.delta1 == 0) {
                step.kind = MergeStep::Kind::pass_left;
                next.push_back(std::move(left));
                build.steps.push_back(std::move(step));
                continue;
            }
            step.delta2 = detail::power_sum_difference(right.second, right.first, n);
            if (step.delta2 == 0) {
                step.kind = MergeStep::Kind::pass_right;
                next.push_back(std::move(right));
                build.steps.push_back(std::move(step));
                continue;
            }
            if (step.delta1 < 0) {
                std::swap(left.first, left.second);
                step.delta1 = -step.delta1;
                step.swapped_left = true;
            }
            if (step.delta2 < 0) {
                std::swap(right.first, right.second);
                step.delta2 = -step.delta2;
                step.swapped_right = true;
            }
            next.push_back({combine(repeat(left.first, step.delta2), repeat(right.first, step.delta1)),
                            combine(repeat(left.second, step.delta2), repeat(right.second, step.delta1))});
            build.steps.push_back(std::move(step));
        }
        pairs = equalize_cone_counts(next, mode).pairs;
    }

    if (pairs.size() != 1) {
        throw VerificationFailure("collision builder did not reduce to a single pair");
    }
    build.pair = std::move(pairs.front());
    const auto& [a, b] = build.pair;
    if (a == b) {
        throw VerificationFailure("collision builder produced identical signatures " + a.str());
    }
    if (a.cone_count() != b.cone_count() || a.genus() != b.genus()) {
        throw VerificationFailure("collision pair has mismatched genus or cone count");
    }
    if (!agree_through(a, b, L)) {
        throw VerificationFailure("collision pair does not agree through l = " + std::to_string(L));
    }
    return build;
}

/// An order whose multiplicity differs between a and b, if any.
inline std::optional<Order> distinguishing_order(const OrbifoldSignature& a, const OrbifoldSignature& b)
{
    std::set<Order> orders;
    for (const auto& [m, c] : a.cones()) {
        orders.insert(m);
    }
    for (const auto& [m, c] : b.cones()) {
        orders.insert(m);
    }
    for (Order m : orders) {
        if (a.multiplicity(m) != b.multiplicity(m)) {
            return m;
        }
    }
    return std::nullopt;
}

/// N pairwise distinct signatures with the same χ_(l) for l <= L, namely
/// 𝒬_j = (N-j)·a ⊛ (j-1)·b for j = 1..N.
///
/// Distinctness: after stripping cone orders shared by a and b there is an
/// order m present in only one of them; its multiplicity in 𝒬_j is an affine
/// function of j with nonzero slope.
inline std::vector<OrbifoldSignature> expand_family(const OrbifoldSignature& a, const OrbifoldSignature& b,
                                                    std::uint64_t N, std::uint64_t L)
{
    if (N < 2) {
        throw std::invalid_argument("family size N must be at least 2");
    }
    if (a.genus() != b.genus()) {
        throw std::invalid_argument("family seeds must share a genus");
    }
    if (a.cone_count() != b.cone_count()) {
        throw std::invalid_argument("family seeds must have the same number of cone points");
    }
    if (!distinguishing_order(a, b)) {
        throw std::invalid_argument("family seeds coincide after removing shared cone points");
    }
    if (!agree_through(a, b, L)) {
        throw std::invalid_argument("family seeds do not share χ_(l) for all l <= " + std::to_string(L));
    }

    std::vector<OrbifoldSignature> family;
    family.reserve(N);
    for (std::uint64_t j = 1; j <= N; ++j) {
        OrbifoldSignature::ConeMap cones;
        for (const auto& [m, c] : a.cones()) {
            cones[m] += c * (N - j);
        }
        for (const auto& [m, c] : b.cones()) {
            cones[m] += c * (j - 1);
        }
        family.emplace_back(a.genus(), std::move(cones));
    }
    return family;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

/// q(j) = j·(2·Π_{p∈P} p) - 1 for j = 1..count. Every q(j), 2q(j)+1 and
/// q(j)+2 is coprime to each p ∈ P, so no cone order built from them admits
/// a nontrivial homomorphism from a finite group whose element orders only
/// involve primes in P.
inline std::vector<std::uint64_t> prime_avoiding_q(const std::set<std::uint64_t>& primes, std::uint64_t count)
{
    if (primes.empty()) {
        throw std::invalid_argument("prime set must not be empty");
    }
    BigInt step = 2;
    for (auto p : primes) {
        if (!is_prime(p)) {
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        }
        step *= p;
    }
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t j = 1; j <= count; ++j) {
        out.push_back(detail::checked_order(step * j - 1));
    }
    return out;
}

struct GammaFamily {
    std::vector<OrbifoldSignature> members;
    std::set<std::uint64_t> primes; ///< primes dividing some torsion element order
    std::uint64_t max_rank = 0;     ///< largest free rank among the abelianizations
    std::vector<std::uint64_t> base_orders;
};

/// N distinct signatures of genus g whose χ_Γ agree for every Γ in groups.
///
/// Cone orders are built from q values avoiding every torsion prime, so each
/// homomorphism Γ^ab = Z^l ⊕ G -> Z/m kills G and χ_Γ reduces to χ_(l).
inline GammaFamily general_gamma_family(const std::vector<GammaDescriptor>& groups, std::uint64_t N,
                                        std::uint64_t genus, EqualizeMode mode = EqualizeMode::lcm)
{
    if (groups.empty()) {
        throw std::invalid_argument("at least one group is required");
    }
    GammaFamily family;
    for (const auto& gamma : groups) {
        FgAbelian ab = abelianize(gamma);
        family.max_rank = std::max<std::uint64_t>(family.max_rank, ab.rank);
        auto ps = torsion_primes(ab);
        family.primes.insert(ps.begin(), ps.end());
    }
    const std::uint64_t L = family.max_rank;
    if (L >= 40) {
        throw std::invalid_argument("free rank " + std::to_string(L) + " is too large to construct");
    }
    const std::uint64_t count = L >= 3 ? std::uint64_t{1} << (L - 2) : 1;
    if (family.primes.empty()) {
        for (std::uint64_t q = 2; q < count + 2; ++q) {
            family.base_orders.push_back(q);
        }
    } else {
        family.base_orders = prime_avoiding_q(family.primes, count);
    }

    auto build = build_collision_pair(L, genus, family.base_orders, mode);
    family.members = expand_family(build.pair.first, build.pair.second, N, L);

    for (std::size_t i = 0; i < family.members.size(); ++i) {
        for (std::size_t j = i + 1; j < family.members.size(); ++j) {
            if (family.members[i] == family.members[j]) {
                throw VerificationFailure("family members " + std::to_string(i) + " and " + std::to_string(j)
                                          + " coincide");
            }
        }
    }
    for (const auto& gamma : groups) {
        const Rational reference = chi_gamma(family.members.front(), gamma);
        for (const auto& member : family.members) {
            if (chi_gamma(member, gamma) != reference) {
                throw VerificationFailure("χ_Γ mismatch for Γ = " + gamma.str());
            }
        }
    }
    return family;
}

/// Q_k = Σ_{g_k}(j, ..., j) with k cones and g_k = k(j^(l-1) - 1)/2 for
/// k = 1, 3, 5, ...; every member has χ_(l) = 2.
inline std::vector<OrbifoldSignature> same_chi_l_family(std::uint64_t j, std::uint64_t l, std::uint64_t count)
{
    if (j < 3 || j % 2 == 0) {
        throw std::invalid_argument("cone order j must be odd and at least 3");
    }
    if (l < 2) {
        throw std::invalid_argument("level l must be at least 2");
    }
    std::vector<OrbifoldSignature> out;
    out.reserve(count);
    const BigInt power = ipow(BigInt(j), l - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t k = 2 * i + 1;
        BigInt genus = BigInt(k) * (power - 1) / 2;
        if (genus > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("genus exceeds 64-bit range");
        }
        OrbifoldSignature::ConeMap cones;
        cones[j] = k;
        out.emplace_back(static_cast<std::uint64_t>(genus), std::move(cones));
    }
    return out;
}

} // namespace orbichar

#endif
