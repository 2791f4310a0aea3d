#ifndef ORBICHAR_CLASSIFY_HPP
#define ORBICHAR_CLASSIFY_HPP

#include "orbichar/characteristics.hpp"
#include "orbichar/errors.hpp"
#include "orbichar/rational.hpp"
#include "orbichar/signature.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace orbichar {

/// (χ_(0), χ_(1), ..., χ_(L)).
struct CharSequence {
    std::vector<Rational> values;

    std::size_t max_level() const { return values.empty() ? 0 : values.size() - 1; }

    friend bool operator==(const CharSequence&, const CharSequence&) = default;
    friend auto operator<=>(const CharSequence& a, const CharSequence& b)
    {
        return std::lexicographical_compare_three_way(a.values.begin(), a.values.end(), b.values.begin(),
                                                      b.values.end());
    }
};

inline CharSequence char_sequence(const OrbifoldSignature& sig, std::uint64_t L)
{
    CharSequence seq;
    seq.values.reserve(L + 1);
    for (std::uint64_t l = 0; l <= L; ++l) {
        seq.values.push_back(chi_l(sig, l));
    }
    return seq;
}

/// The sequence is consistent so far but too short to pin down a unique signature.
struct InsufficientData {
    std::size_t available_length = 0; ///< number of values supplied
    std::size_t required_length = 0;  ///< lower bound on the number of values needed

    friend bool operator==(const InsufficientData&, const InsufficientData&) = default;
};

using ReconstructResult = std::variant<OrbifoldSignature, InsufficientData>;

namespace detail {

/// Polynomial over Q, coefficient i multiplies x^i.
using Poly = std::vector<Rational>;

inline void trim_poly(Poly& p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

inline Rational eval_poly(const Poly& p, const Rational& x)
{
    Rational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

inline Poly derivative(const Poly& p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * Rational(static_cast<long long>(i)));
    }
    trim_poly(d);
    return d;
}

inline Poly poly_rem(Poly num, const Poly& den)
{
    trim_poly(num);
    while (num.size() >= den.size() && !num.empty()) {
        Rational factor = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) {
            num[shift + i] -= factor * den[i];
        }
        trim_poly(num);
    }
    return num;
}

/// Sturm chain; the last entry is gcd(p, p') up to a constant.
inline std::vector<Poly> sturm_chain(const Poly& p)
{
    std::vector<Poly> chain{p, derivative(p)};
    while (!chain.back().empty()) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) {
            c = -c;
        }
        if (r.empty()) {
            break;
        }
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_changes(const std::vector<Poly>& chain, const Rational& x)
{
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
        int s = eval_poly(p, x).sign();
        if (s != 0) {
            if (last != 0 && s != last) {
                ++changes;
            }
            last = s;
        }
    }
    return changes;
}

/// Minimal connection polynomial C (C[0] = 1) of the sequence over Q.
inline std::pair<Poly, std::size_t> berlekamp_massey(std::span<const Rational> s)
{
    Poly c{Rational(1)};
    Poly b{Rational(1)};
    std::size_t length = 0;
    std::size_t shift = 1;
    Rational last_discrepancy(1);
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d = s[n];
        for (std::size_t i = 1; i <= length && i < c.size(); ++i) {
            d += c[i] * s[n - i];
        }
        if (d.is_zero()) {
            ++shift;
            continue;
        }
        Rational coef = d / last_discrepancy;
        Poly t = c;
        if (c.size() < b.size() + shift) {
            c.resize(b.size() + shift);
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            c[i + shift] -= coef * b[i];
        }
        if (2 * length <= n) {
            length = n + 1 - length;
            b = std::move(t);
            last_discrepancy = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    c.resize(length + 1);
    return {c, length};
}

/// Distinct integer roots >= 2 of p, or nullopt when p is not a product of
/// such linear factors. Roots are isolated exactly with Sturm counts taken
/// at half-integers.
inline std::optional<std::vector<BigInt>> distinct_integer_roots(const Poly& p)
{
    const std::size_t degree = p.size() - 1;
    auto chain = sturm_chain(p);
    if (chain.back().size() > 1) {
        return std::nullopt; // repeated root
    }
    // Cauchy bound: every root r has |r| <= 1 + max |c_i / c_n|
    Rational bound(0);
    for (std::size_t i = 0; i < degree; ++i) {
        Rational ratio = p[i] / p[degree];
        if (ratio.sign() < 0) {
            ratio = -ratio;
        }
        bound = std::max(bound, ratio);
    }
    BigInt hi = (bound + Rational(1)).numerator() / (bound + Rational(1)).denominator() + 1;
    const Rational half(BigInt(1), BigInt(2));
    auto count_in = [&](const BigInt& lo_int, const BigInt& hi_int) {
        // roots in (lo_int + 1/2, hi_int + 1/2)
        return sign_changes(chain, Rational(lo_int) + half) - sign_changes(chain, Rational(hi_int) + half);
    };
    auto half_point_is_root = [&](const BigInt& k) { return eval_poly(p, Rational(k) + half).is_zero(); };

    if (half_point_is_root(1) || half_point_is_root(hi)) {
        return std::nullopt;
    }
    if (static_cast<std::size_t>(count_in(1, hi)) != degree) {
        return std::nullopt;
    }

    std::vector<BigInt> roots;
    std::function<bool(const BigInt&, const BigInt&, int)> isolate = [&](const BigInt& lo, const BigInt& up,
                                                                       int count) -> bool {
        if (count == 0) {
            return true;
        }
        if (up - lo == 1) {
            if (count != 1 || !eval_poly(p, Rational(up)).is_zero()) {
                return false;
            }
            roots.push_back(up);
            return true;
        }
        BigInt mid = (lo + up) / 2;
        if (half_point_is_root(mid)) {
            return false;
        }
        int left = count_in(lo, mid);
        return isolate(lo, mid, left) && isolate(mid, up, count - left);
    };
    if (!isolate(1, hi, static_cast<int>(degree))) {
        return std::nullopt;
    }
    return roots;
}

/// Solves Σ_i x_i · nodes_i^(row) = rhs_row for row = 0..n-1.
inline std::vector<Rational> solve_vandermonde(const std::vector<BigInt>& nodes, std::span<const Rational> rhs)
{
    const std::size_t n = nodes.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            a[row][col] = Rational(ipow(nodes[col], row));
        }
        a[row][n] = rhs[row];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::logic_error("singular Vandermonde system");
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) {
                continue;
            }
            Rational f = a[row][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k) {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a[i][n] / a[i][i];
    }
    return x;
}

} // namespace detail

/// Recovers Σ_g(m_1, ..., m_k) from (χ_(0), ..., χ_(L)).
///
/// g comes from χ_(1) = 2 - 2g. The first differences v_l = χ_(l+1) - χ_(l)
/// equal Σ_m c_m (m-1) m^(l-1) for every l >= 0 (at l = 0 the power is 1/m),
/// an exponential sum over the D distinct cone orders, so (v_l) obeys a
/// linear recurrence of order D whose characteristic roots are exactly the
/// orders. The recurrence is found with Berlekamp-Massey on v_0..v_(L-1) and
/// accepted only when L >= 2D + 1, leaving one term beyond what determines
/// it. The weights are positive, so the Hankel matrices of (v_l) are
/// positive definite up to size D and a shorter recurrence can never fit
/// 2D + 1 terms of a longer one. Multiplicities come from an exact
/// Vandermonde solve, and the result is checked by recomputing the whole
/// input sequence.
///
/// Returns InsufficientData when the data is consistent but too short; throws
/// InvalidSequence when no signature can produce it.
inline ReconstructResult reconstruct(const CharSequence& seq)
{
    const auto& x = seq.values;
    if (x.empty()) {
        throw InvalidSequence("empty sequence");
    }
    if (x.size() < 2) {
        return InsufficientData{x.size(), 2};
    }
    for (std::size_t l = 1; l < x.size(); ++l) {
        if (!x[l].is_integer()) {
            throw InvalidSequence("χ_(" + std::to_string(l) + ") = " + x[l].str() + " is not an integer");
        }
    }
    const BigInt chi1 = x[1].to_integer();
    if (chi1 > 2 || (2 - chi1) % 2 != 0) {
        throw InvalidSequence("χ_(1) = " + chi1.str() + " is not of the form 2 - 2g");
    }
    const BigInt genus_big = (2 - chi1) / 2;
    if (genus_big > std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidSequence("genus out of range");
    }
    const auto genus = static_cast<std::uint64_t>(genus_big);
    const std::uint64_t L = x.size() - 1;

    const Rational v0 = x[1] - x[0];
    if (v0.sign() < 0) {
        throw InvalidSequence("χ_(0) exceeds χ_(1)");
    }
    if (v0.is_zero()) {
        OrbifoldSignature manifold(genus);
        if (char_sequence(manifold, L) != seq) {
            throw InvalidSequence("manifold prefix followed by non-constant values");
        }
        return manifold;
    }

    std::vector<Rational> v{v0};
    for (std::size_t l = 1; l + 1 < x.size(); ++l) {
        v.push_back(x[l + 1] - x[l]);
        if (v.back().sign() <= 0) {
            throw InvalidSequence("χ_(l) must strictly increase for l >= 1 when cone points exist");
        }
    }

    auto [connection, depth] = detail::berlekamp_massey(v);
    if (2 * depth + 1 > v.size()) {
        return InsufficientData{x.size(), 2 * depth + 2};
    }

    // characteristic polynomial x^D + c_1 x^(D-1) + ... + c_D
    detail::Poly characteristic(depth + 1);
    for (std::size_t i = 0; i <= depth; ++i) {
        characteristic[depth - i] = connection[i];
        if (!connection[i].is_integer()) {
            throw InvalidSequence("recurrence has non-integral coefficients");
        }
    }
    auto roots = detail::distinct_integer_roots(characteristic);
    if (!roots) {
        throw InvalidSequence("recurrence roots are not distinct integers >= 2");
    }
    // v_1..v_D: Σ_m w_m m^(l-1) with w_m = c_m (m-1)
    auto weights = detail::solve_vandermonde(*roots, std::span<const Rational>(v).subspan(1, depth));

    OrbifoldSignature::ConeMap cones;
    for (std::size_t i = 0; i < depth; ++i) {
        const BigInt& m = (*roots)[i];
        if (m > std::numeric_limits<Order>::max()) {
            throw InvalidSequence("cone order out of range");
        }
        Rational count = weights[i] / Rational(m - 1);
        if (!count.is_integer() || count.sign() <= 0) {
            throw InvalidSequence("multiplicity for order " + m.str() + " is " + count.str());
        }
        cones[static_cast<Order>(m)] = count.to_integer();
    }
    OrbifoldSignature result(genus, std::move(cones));
    if (char_sequence(result, L) != seq) {
        throw InvalidSequence("candidate " + result.str() + " does not reproduce the sequence");
    }
    return result;
}

namespace detail {

/// Exact remaining-sum state for the unit-fraction descent: the next
/// `remaining` orders (each >= min_order, nondecreasing) must satisfy
/// Σ 1/m_i = num/den.
template <class Int>
struct DescentState {
    Int num;
    Int den;
    std::uint64_t remaining;
    Order min_order;
};

using Wide = __int128;

inline bool mul_ok(Wide a, Wide b, Wide& out) { return !__builtin_mul_overflow(a, b, &out); }

inline Order to_order(const BigInt& v)
{
    if (v > std::numeric_limits<Order>::max()) {
        throw std::overflow_error("cone order " + v.str() + " exceeds 64-bit range");
    }
    return static_cast<Order>(v);
}

inline Order to_order(Wide v)
{
    if (v > static_cast<Wide>(std::numeric_limits<Order>::max())) {
        throw std::overflow_error("cone order exceeds 64-bit range");
    }
    return static_cast<Order>(v);
}

inline BigInt widen(Wide v)
{
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u);
    return negative ? BigInt(-out) : out;
}

using Emit = std::function<void(const std::vector<Order>&)>;

inline void descend_big(const DescentState<BigInt>& s, std::vector<Order>& prefix, const Emit& emit)
{
    if (s.remaining == 1) {
        if (s.den % s.num == 0) {
            BigInt m = s.den / s.num;
            if (m >= s.min_order) {
                prefix.push_back(to_order(m));
                emit(prefix);
                prefix.pop_back();
            }
        }
        return;
    }
    // 1/m < num/den (something must remain) and remaining/m >= num/den
    BigInt lo = s.den / s.num + 1;
    if (lo < s.min_order) {
        lo = s.min_order;
    }
    const Order first = to_order(lo);
    const Order last = to_order(BigInt(s.remaining) * s.den / s.num);
    for (Order m = first; m <= last; ++m) {
        BigInt num = s.num * m - s.den;
        BigInt den = s.den * m;
        BigInt g = gcd(num, den);
        prefix.push_back(m);
        descend_big({num / g, den / g, s.remaining - 1, m}, prefix, emit);
        prefix.pop_back();
        if (m == std::numeric_limits<Order>::max()) {
            break;
        }
    }
}

inline void descend_wide(const DescentState<Wide>& s, std::vector<Order>& prefix, const Emit& emit)
{
    auto fallback = [&] { descend_big({widen(s.num), widen(s.den), s.remaining, s.min_order}, prefix, emit); };
    if (s.remaining == 1) {
        if (s.den % s.num == 0) {
            Wide m = s.den / s.num;
            if (m >= static_cast<Wide>(s.min_order)) {
                prefix.push_back(to_order(m));
                emit(prefix);
                prefix.pop_back();
            }
        }
        return;
    }
    Wide scaled;
    if (!mul_ok(static_cast<Wide>(s.remaining), s.den, scaled)) {
        fallback();
        return;
    }
    Wide lo = s.den / s.num + 1;
    if (lo < static_cast<Wide>(s.min_order)) {
        lo = static_cast<Wide>(s.min_order);
    }
    const Order first = to_order(lo);
    const Order last = to_order(scaled / s.num);
    for (Order m = first; m <= last; ++m) {
        Wide num;
        Wide den;
        prefix.push_back(m);
        if (mul_ok(s.num, static_cast<Wide>(m), num) && mul_ok(s.den, static_cast<Wide>(m), den)) {
            num -= s.den;
            Wide a = num;
            Wide b = den;
            while (b != 0) {
                Wide t = a % b;
                a = b;
                b = t;
            }
            descend_wide({num / a, den / a, s.remaining - 1, m}, prefix, emit);
        } else {
            BigInt num_big = widen(s.num) * m - widen(s.den);
            BigInt den_big = widen(s.den) * m;
            BigInt g = gcd(num_big, den_big);
            descend_big({num_big / g, den_big / g, s.remaining - 1, m}, prefix, emit);
        }
        prefix.pop_back();
        if (m == std::numeric_limits<Order>::max()) {
            break;
        }
    }
}

} // namespace detail

/// Streams every signature with χ_ES = target, ordered by (genus, cone
/// count, order tuple). The set is finite: each cone point costs at least
/// 1/2, so 2 - 2g >= target and k <= 2(2 - 2g - target); for fixed (g, k)
/// the orders solve Σ 1/m_i = target - 2 + 2g + k, and the smallest
/// remaining order m satisfies m <= remaining / (remaining sum).
inline void enumerate_by_chi_es(const Rational& target, const std::function<void(const OrbifoldSignature&)>& visit)
{
    if (target > Rational(2)) {
        return;
    }
    for (std::uint64_t g = 0;; ++g) {
        const Rational top = Rational(2) - Rational(2) * Rational(g);
        if (top < target) {
            break;
        }
        const Rational k_bound = Rational(2) * (top - target);
        const BigInt k_max = k_bound.numerator() / k_bound.denominator();
        if (k_max > BigInt(std::numeric_limits<std::uint64_t>::max() / 2)) {
            throw std::overflow_error("cone count bound out of range");
        }
        for (std::uint64_t k = 0; k <= static_cast<std::uint64_t>(k_max); ++k) {
            const Rational sum = target - top + Rational(k);
            if (k == 0) {
                if (sum.is_zero()) {
                    visit(OrbifoldSignature(g));
                }
                continue;
            }
            if (sum.sign() <= 0) {
                continue;
            }
            std::vector<Order> prefix;
            prefix.reserve(k);
            detail::Emit emit = [&](const std::vector<Order>& orders) {
                visit(OrbifoldSignature::from_orders(g, orders));
            };
            const BigInt num = sum.numerator();
            const BigInt den = sum.denominator();
            const BigInt wide_limit = BigInt(1) << 120;
            if (num < wide_limit && den < wide_limit) {
                detail::DescentState<detail::Wide> s{0, 0, k, 2};
                // BigInt -> __int128 via two 64-bit halves
                auto narrow = [](const BigInt& v) {
                    const BigInt mask = (BigInt(1) << 64) - 1;
                    auto lo = static_cast<std::uint64_t>(v & mask);
                    auto hi = static_cast<std::uint64_t>(v >> 64);
                    return static_cast<detail::Wide>((static_cast<unsigned __int128>(hi) << 64) | lo);
                };
                s.num = narrow(num);
                s.den = narrow(den);
                detail::descend_wide(s, prefix, emit);
            } else {
                detail::descend_big({num, den, k, 2}, prefix, emit);
            }
        }
    }
}

inline std::vector<OrbifoldSignature> enumerate_by_chi_es(const Rational& target)
{
    std::vector<OrbifoldSignature> out;
    enumerate_by_chi_es(target, [&](const OrbifoldSignature& s) { out.push_back(s); });
    return out;
}

/// Signatures that share a characteristic sequence.
struct CollisionGroup {
    CharSequence sequence;
    std::vector<OrbifoldSignature> members;
};

struct SearchBounds {
    std::uint64_t max_genus = 0;
    std::uint64_t max_cones = 0;
    Order max_order = 0;
};

/// Calls visit on every signature with g <= max_genus, k <= max_cones and all
/// orders in [2, max_order], in canonical order.
inline void for_each_bounded_signature(const SearchBounds& bounds,
                                       const std::function<void(const OrbifoldSignature&)>& visit)
{
    std::vector<Order> tuple;
    std::function<void(std::uint64_t, std::uint64_t, Order)> rec = [&](std::uint64_t g, std::uint64_t left,
                                                                       Order min_order) {
        if (left == 0) {
            visit(OrbifoldSignature::from_orders(g, tuple));
            return;
        }
        for (Order m = min_order; m <= bounds.max_order; ++m) {
            tuple.push_back(m);
            rec(g, left - 1, m);
            tuple.pop_back();
        }
    };
    for (std::uint64_t g = 0; g <= bounds.max_genus; ++g) {
        for (std::uint64_t k = 0; k <= bounds.max_cones; ++k) {
            if (k > 0 && bounds.max_order < 2) {
                break;
            }
            rec(g, k, 2);
        }
    }
}

/// Groups all bounded signatures by (χ_(0), ..., χ_(L)) and returns the
/// groups with two or more members.
inline std::vector<CollisionGroup> search_collisions(const SearchBounds& bounds, std::uint64_t L)
{
    std::map<CharSequence, std::vector<OrbifoldSignature>> by_sequence;
    for_each_bounded_signature(bounds, [&](const OrbifoldSignature& sig) {
        by_sequence[char_sequence(sig, L)].push_back(sig);
    });
    std::vector<CollisionGroup> groups;
    for (auto& [seq, members] : by_sequence) {
        if (members.size() >= 2) {
            std::sort(members.begin(), members.end());
            groups.push_back({seq, std::move(members)});
        }
    }
    std::sort(groups.begin(), groups.end(),
              [](const CollisionGroup& a, const CollisionGroup& b) { return a.members.front() < b.members.front(); });
    return groups;
}

} // namespace orbichar

#endif
