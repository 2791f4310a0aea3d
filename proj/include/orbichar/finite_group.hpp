#ifndef ORBICHAR_FINITE_GROUP_HPP
#define ORBICHAR_FINITE_GROUP_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbichar {

/// Sorted element indices of a subgroup.
using Subgroup = std::vector<std::size_t>;

/// Finite group given by its multiplication table. The table is validated
/// (closure, identity, inverses, associativity) on construction.
class FiniteGroup {
public:
    using Element = std::size_t;

    explicit FiniteGroup(std::vector<std::vector<Element>> table, std::string name = {})
        : order_(table.size())
        , name_(std::move(name))
    {
        if (order_ == 0) {
            throw std::invalid_argument("group table is empty");
        }
        products_.reserve(order_ * order_);
        for (const auto& row : table) {
            if (row.size() != order_) {
                throw std::invalid_argument("group table is not square");
            }
            for (Element x : row) {
                if (x >= order_) {
                    throw std::invalid_argument("group table entry out of range");
                }
                products_.push_back(x);
            }
        }
        validate();
    }

    std::size_t order() const { return order_; }
    Element identity() const { return identity_; }
    const std::string& name() const { return name_; }

    Element multiply(Element a, Element b) const { return products_[a * order_ + b]; }
    Element inverse(Element a) const { return inverses_[a]; }
    bool commute(Element a, Element b) const { return multiply(a, b) == multiply(b, a); }

    Element power(Element a, long long exponent) const
    {
        if (exponent < 0) {
            a = inverse(a);
            exponent = -exponent;
        }
        Element result = identity_;
        Element base = a;
        auto e = static_cast<unsigned long long>(exponent);
        while (e != 0) {
            if ((e & 1U) != 0) {
                result = multiply(result, base);
            }
            base = multiply(base, base);
            e >>= 1U;
        }
        return result;
    }

    std::size_t element_order(Element a) const
    {
        std::size_t k = 1;
        for (Element x = a; x != identity_; x = multiply(x, a)) {
            ++k;
        }
        return k;
    }

    /// g a g^-1
    Element conjugate(Element g, Element a) const { return multiply(multiply(g, a), inverse(g)); }

    bool is_abelian() const
    {
        for (Element a = 0; a < order_; ++a) {
            for (Element b = a + 1; b < order_; ++b) {
                if (!commute(a, b)) {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<std::vector<Element>> table() const
    {
        std::vector<std::vector<Element>> rows(order_);
        for (Element a = 0; a < order_; ++a) {
            rows[a].assign(products_.begin() + static_cast<std::ptrdiff_t>(a * order_),
                           products_.begin() + static_cast<std::ptrdiff_t>((a + 1) * order_));
        }
        return rows;
    }

private:
    void validate()
    {
        bool found = false;
        for (Element e = 0; e < order_ && !found; ++e) {
            bool ok = true;
            for (Element x = 0; x < order_ && ok; ++x) {
                ok = multiply(e, x) == x && multiply(x, e) == x;
            }
            if (ok) {
                identity_ = e;
                found = true;
            }
        }
        if (!found) {
            throw std::invalid_argument("group table has no identity");
        }
        inverses_.assign(order_, order_);
        for (Element a = 0; a < order_; ++a) {
            for (Element b = 0; b < order_; ++b) {
                if (multiply(a, b) == identity_ && multiply(b, a) == identity_) {
                    inverses_[a] = b;
                    break;
                }
            }
            if (inverses_[a] == order_) {
                throw std::invalid_argument("element " + std::to_string(a) + " has no inverse");
            }
        }
        for (Element a = 0; a < order_; ++a) {
            for (Element b = 0; b < order_; ++b) {
                const Element ab = multiply(a, b);
                for (Element c = 0; c < order_; ++c) {
                    if (multiply(ab, c) != multiply(a, multiply(b, c))) {
                        throw std::invalid_argument("group table is not associative");
                    }
                }
            }
        }
    }

    std::size_t order_ = 0;
    std::vector<Element> products_;
    std::vector<Element> inverses_;
    Element identity_ = 0;
    std::string name_;
};

/// Smallest subgroup containing the given elements, by saturation.
inline Subgroup generated_subgroup(const FiniteGroup& group, std::span<const std::size_t> generators)
{
    std::vector<bool> member(group.order(), false);
    std::vector<std::size_t> elements{group.identity()};
    member[group.identity()] = true;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t g : generators) {
            std::size_t next = group.multiply(elements[i], g);
            if (!member[next]) {
                member[next] = true;
                elements.push_back(next);
            }
        }
    }
    std::sort(elements.begin(), elements.end());
    return elements;
}

inline bool is_subgroup(const FiniteGroup& group, const Subgroup& h)
{
    if (h.empty() || !std::is_sorted(h.begin(), h.end()) || std::adjacent_find(h.begin(), h.end()) != h.end()) {
        return false;
    }
    for (std::size_t x : h) {
        if (x >= group.order()) {
            return false;
        }
    }
    return generated_subgroup(group, h) == h;
}

/// Z/n with element i standing for a^i.
inline FiniteGroup cyclic_group(std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("cyclic group order must be at least 1");
    }
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            t[a][b] = (a + b) % n;
        }
    }
    return FiniteGroup(std::move(t), "C" + std::to_string(n));
}

/// Dihedral group of order 2n. Elements 0..n-1 are the rotations r^i,
/// elements n..2n-1 the reflections s·r^i.
inline FiniteGroup dihedral_group(std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("dihedral group parameter must be at least 1");
    }
    const std::size_t size = 2 * n;
    std::vector<std::vector<std::size_t>> t(size, std::vector<std::size_t>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            const std::size_t i = x % n;
            const std::size_t j = y % n;
            const bool xs = x >= n;
            const bool ys = y >= n;
            if (!xs && !ys) {
                t[x][y] = (i + j) % n;
            } else if (!xs && ys) {
                t[x][y] = n + (j + n - i) % n; // r^i s r^j = s r^(j-i)
            } else if (xs && !ys) {
                t[x][y] = n + (i + j) % n;
            } else {
                t[x][y] = (j + n - i) % n; // s r^i s r^j = r^(j-i)
            }
        }
    }
    return FiniteGroup(std::move(t), "D" + std::to_string(size));
}

/// A × B with (a, b) stored at index a·|B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b)
{
    const std::size_t nb = b.order();
    const std::size_t size = a.order() * nb;
    std::vector<std::vector<std::size_t>> t(size, std::vector<std::size_t>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            t[x][y] = a.multiply(x / nb, y / nb) * nb + b.multiply(x % nb, y % nb);
        }
    }
    return FiniteGroup(std::move(t), a.name() + "x" + b.name());
}

/// "C6", "D10" (dihedral of order 10) and products such as "C2xC3".
inline FiniteGroup group_from_name(const std::string& name)
{
    auto factor = [&](const std::string& part) {
        if (part.size() < 2 || (part[0] != 'C' && part[0] != 'D')
            || !std::all_of(part.begin() + 1, part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })
            || part.size() > 7) {
            throw std::invalid_argument("unknown group name '" + name + "'");
        }
        const std::size_t n = std::stoul(part.substr(1));
        if (part[0] == 'C') {
            return cyclic_group(n);
        }
        if (n < 2 || n % 2 != 0) {
            throw std::invalid_argument("dihedral group order must be even in '" + name + "'");
        }
        return dihedral_group(n / 2);
    };
    std::size_t start = 0;
    std::optional<FiniteGroup> result;
    while (true) {
        auto x = name.find('x', start);
        auto g = factor(name.substr(start, x - start));
        result = result ? direct_product(*result, g) : g;
        if (x == std::string::npos) {
            break;
        }
        start = x + 1;
    }
    return FiniteGroup(result->table(), name);
}

} // namespace orbichar

#endif
