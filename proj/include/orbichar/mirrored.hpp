#ifndef ORBICHAR_MIRRORED_HPP
#define ORBICHAR_MIRRORED_HPP

#include "orbichar/rational.hpp"
#include "orbichar/signature.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbichar {

/// Cylinder S¹×[0,1] with both boundary circles mirrored and corner
/// reflectors (isotropy D_2n) placed on them.
class MirroredCylinder {
public:
    MirroredCylinder() = default;

    MirroredCylinder(std::vector<Order> boundary0, std::vector<Order> boundary1)
        : boundary0_(std::move(boundary0))
        , boundary1_(std::move(boundary1))
    {
        for (const auto* side : {&boundary0_, &boundary1_}) {
            for (Order n : *side) {
                if (n < 2) {
                    throw std::invalid_argument("corner order must be at least 2, got " + std::to_string(n));
                }
            }
        }
        std::sort(boundary0_.begin(), boundary0_.end());
        std::sort(boundary1_.begin(), boundary1_.end());
    }

    const std::vector<Order>& boundary0() const { return boundary0_; }
    const std::vector<Order>& boundary1() const { return boundary1_; }

    std::vector<Order> corners() const
    {
        std::vector<Order> all = boundary0_;
        all.insert(all.end(), boundary1_.begin(), boundary1_.end());
        std::sort(all.begin(), all.end());
        return all;
    }

    std::string str() const
    {
        auto side = [](const std::vector<Order>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i == 0 ? "" : ",") + std::to_string(v[i]);
            }
            return s;
        };
        return "{" + side(boundary0_) + " | " + side(boundary1_) + "}";
    }

private:
    std::vector<Order> boundary0_;
    std::vector<Order> boundary1_;
};

/// χ_ES = χ_top(cylinder) - ½ Σ_corners (1 - 1/n) with χ_top = 0.
inline Rational chi_es_mirrored(const MirroredCylinder& mc)
{
    Rational deficit;
    for (Order n : mc.corners()) {
        deficit += Rational(1) - Rational(BigInt(1), BigInt(n));
    }
    return -deficit / Rational(2);
}

/// Equal iff the unordered pair of per-boundary corner multisets agrees.
inline bool is_diffeomorphic(const MirroredCylinder& a, const MirroredCylinder& b)
{
    return (a.boundary0() == b.boundary0() && a.boundary1() == b.boundary1())
        || (a.boundary0() == b.boundary1() && a.boundary1() == b.boundary0());
}

} // namespace orbichar

#endif
