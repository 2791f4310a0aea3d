#ifndef ORBICHAR_CHARACTERISTICS_HPP
#define ORBICHAR_CHARACTERISTICS_HPP

#include "orbichar/gamma.hpp"
#include "orbichar/rational.hpp"
#include "orbichar/signature.hpp"

#include <numeric>

#include <cstdint>
#include <stdexcept>

namespace orbichar {

/// Euler characteristic of the underlying surface, 2 - 2g.
inline BigInt chi_top(const OrbifoldSignature& sig)
{
    return BigInt(2) - 2 * BigInt(sig.genus());
}

/// Σ_i m_i^exponent over all cone points, counted with multiplicity.
inline Rational power_sum(const OrbifoldSignature& sig, long long exponent)
{
    Rational sum;
    for (const auto& [order, count] : sig.cones()) {
        sum += Rational(count) * rpow(BigInt(order), exponent);
    }
    return sum;
}

/// χ_(l) = 2 - 2g - k + Σ_i m_i^(l-1); at l = 0 the summand is 1/m_i.
inline Rational chi_l(const OrbifoldSignature& sig, std::uint64_t l)
{
    return Rational(chi_top(sig) - sig.cone_count()) + power_sum(sig, static_cast<long long>(l) - 1);
}

/// Euler-Satake characteristic, the l = 0 member of the family.
inline Rational chi_es(const OrbifoldSignature& sig)
{
    return chi_l(sig, 0);
}

/// |HOM(Γ, Z/mZ)| = m^l · Π_j gcd(d_j, m) for Γ^ab = Z^l ⊕ ⊕_j Z/d_j.
inline BigInt hom_count_cyclic(const FgAbelian& gamma, std::uint64_t m)
{
    if (m == 0) {
        throw std::invalid_argument("cyclic group order must be positive");
    }
    BigInt count = ipow(BigInt(m), gamma.rank);
    for (auto d : gamma.torsion) {
        count *= std::gcd(d, m);
    }
    return count;
}

inline BigInt hom_count_cyclic(const GammaDescriptor& gamma, std::uint64_t m)
{
    return hom_count_cyclic(abelianize(gamma), m);
}

/// Γ-Euler-Satake characteristic of Σ_g(m_1, ..., m_k).
///
/// Each cone point of order m contributes |HOM(Γ, Z/m)| - 1 point sectors
/// with trivial Z/m action on top of the identity sector; collecting terms
/// gives 2 - 2g - k + Σ_i |HOM(Γ, Z/m_i)| / m_i. All isotropy is cyclic, so
/// Γ may be replaced by its abelianization.
inline Rational chi_gamma(const OrbifoldSignature& sig, const GammaDescriptor& gamma)
{
    const FgAbelian ab = abelianize(gamma);
    Rational value(chi_top(sig) - sig.cone_count());
    for (const auto& [order, count] : sig.cones()) {
        value += Rational(count * hom_count_cyclic(ab, order), BigInt(order));
    }
    return value;
}

/// χ_Γ of the product with a closed manifold of Euler characteristic manifold_chi.
inline Rational chi_gamma_times_manifold(const OrbifoldSignature& sig, const GammaDescriptor& gamma,
                                         const BigInt& manifold_chi)
{
    return chi_gamma(sig, gamma) * Rational(manifold_chi);
}

inline bool is_diffeomorphic(const OrbifoldSignature& a, const OrbifoldSignature& b)
{
    return a == b;
}

} // namespace orbichar

#endif
