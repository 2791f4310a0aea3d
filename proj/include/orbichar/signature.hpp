#ifndef ORBICHAR_SIGNATURE_HPP
#define ORBICHAR_SIGNATURE_HPP

#include "orbichar/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbichar {

/// Order of a cone point (the m in Z/mZ isotropy).
using Order = std::uint64_t;

/// Closed, connected, effective, orientable 2-orbifold Σ_g(m_1, ..., m_k).
///
/// Cones are kept as a map order -> multiplicity. Multiplicities are
/// arbitrary precision because the collision constructions multiply cone
/// counts far beyond machine range; every formula in this library is linear
/// in the multiplicities, so nothing ever needs the expanded list.
class OrbifoldSignature {
public:
    using ConeMap = std::map<Order, BigInt>;

    OrbifoldSignature() = default;

    explicit OrbifoldSignature(std::uint64_t genus, ConeMap cones = {})
        : genus_(genus)
        , cones_(std::move(cones))
    {
        for (auto it = cones_.begin(); it != cones_.end();) {
            if (it->first < 2) {
                throw std::invalid_argument("cone order must be at least 2, got " + std::to_string(it->first));
            }
            if (it->second < 0) {
                throw std::invalid_argument("negative cone multiplicity for order " + std::to_string(it->first));
            }
            it = it->second == 0 ? cones_.erase(it) : std::next(it);
        }
    }

    /// Builds from an explicit (unsorted, repeated) list of cone orders.
    static OrbifoldSignature from_orders(std::uint64_t genus, std::span<const Order> orders)
    {
        ConeMap cones;
        for (Order m : orders) {
            if (m < 2) {
                throw std::invalid_argument("cone order must be at least 2, got " + std::to_string(m));
            }
            cones[m] += 1;
        }
        return OrbifoldSignature(genus, std::move(cones));
    }

    static OrbifoldSignature from_orders(std::uint64_t genus, std::initializer_list<Order> orders)
    {
        return from_orders(genus, std::span<const Order>(orders.begin(), orders.size()));
    }

    std::uint64_t genus() const { return genus_; }
    const ConeMap& cones() const { return cones_; }

    /// Total number of cone points k, counted with multiplicity.
    BigInt cone_count() const
    {
        BigInt k = 0;
        for (const auto& [order, count] : cones_) {
            k += count;
        }
        return k;
    }

    std::size_t distinct_orders() const { return cones_.size(); }
    bool is_manifold() const { return cones_.empty(); }

    BigInt multiplicity(Order m) const
    {
        auto it = cones_.find(m);
        return it == cones_.end() ? BigInt(0) : it->second;
    }

    /// Human-readable form; runs longer than four are written as m×c.
    std::string str() const
    {
        std::string out = "Σ_" + std::to_string(genus_) + "(";
        bool first = true;
        for (const auto& [order, count] : cones_) {
            auto emit = [&](const std::string& item) {
                if (!first) {
                    out += ",";
                }
                out += item;
                first = false;
            };
            if (count <= 4) {
                for (int i = 0; i < static_cast<int>(count); ++i) {
                    emit(std::to_string(order));
                }
            } else {
                emit(std::to_string(order) + "×" + count.str());
            }
        }
        return out + ")";
    }

    friend bool operator==(const OrbifoldSignature&, const OrbifoldSignature&) = default;

    /// Canonical order: genus, then cone count, then the sorted order tuple
    /// compared lexicographically (without expanding multiplicities).
    friend std::strong_ordering operator<=>(const OrbifoldSignature& a, const OrbifoldSignature& b)
    {
        if (auto c = a.genus_ <=> b.genus_; c != 0) {
            return c;
        }
        BigInt ka = a.cone_count();
        BigInt kb = b.cone_count();
        if (ka != kb) {
            return ka < kb ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        auto ia = a.cones_.begin();
        auto ib = b.cones_.begin();
        BigInt left_a = ia == a.cones_.end() ? BigInt(0) : ia->second;
        BigInt left_b = ib == b.cones_.end() ? BigInt(0) : ib->second;
        while (ia != a.cones_.end() && ib != b.cones_.end()) {
            if (ia->first != ib->first) {
                return ia->first <=> ib->first;
            }
            BigInt step = std::min(left_a, left_b);
            left_a -= step;
            left_b -= step;
            if (left_a == 0 && ++ia != a.cones_.end()) {
                left_a = ia->second;
            }
            if (left_b == 0 && ++ib != b.cones_.end()) {
                left_b = ib->second;
            }
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const OrbifoldSignature& s) { return os << s.str(); }

private:
    std::uint64_t genus_ = 0;
    ConeMap cones_;
};

/// Two signatures related by a collision construction.
struct SignaturePair {
    OrbifoldSignature first;
    OrbifoldSignature second;

    friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

} // namespace orbichar

#endif
