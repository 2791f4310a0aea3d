#ifndef ORBICHAR_GAMMA_HPP
#define ORBICHAR_GAMMA_HPP

#include "orbichar/errors.hpp"
#include "orbichar/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace orbichar {

/// Free group F_rank.
struct FreeGroup {
    std::uint32_t rank = 0;
    friend bool operator==(const FreeGroup&, const FreeGroup&) = default;
};

/// Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s with every d_j >= 2, torsion kept sorted.
///
/// No invariant-factor reduction is applied: Z/2 ⊕ Z/3 and Z/6 are different
/// descriptors of isomorphic groups. Every quantity computed from a
/// descriptor (hom counts, prime sets) is independent of the decomposition.
struct FgAbelian {
    std::uint32_t rank = 0;
    std::vector<std::uint64_t> torsion;
    friend bool operator==(const FgAbelian&, const FgAbelian&) = default;
};

/// One letter x^e of a relator word.
struct Letter {
    std::size_t generator = 0;
    long long exponent = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Finite presentation <generators | relators>.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    friend bool operator==(const Presentation&, const Presentation&) = default;
};

class GammaDescriptor {
public:
    using Variant = std::variant<FreeGroup, FgAbelian, Presentation>;

    GammaDescriptor() : value_(FgAbelian{}) {}

    static GammaDescriptor trivial() { return GammaDescriptor(FgAbelian{}); }
    static GammaDescriptor free(std::uint32_t rank) { return GammaDescriptor(FreeGroup{rank}); }
    static GammaDescriptor free_abelian(std::uint32_t rank) { return GammaDescriptor(FgAbelian{rank, {}}); }

    static GammaDescriptor abelian(std::uint32_t rank, std::vector<std::uint64_t> torsion)
    {
        for (auto d : torsion) {
            if (d < 2) {
                throw std::invalid_argument("torsion coefficient must be at least 2, got " + std::to_string(d));
            }
        }
        std::sort(torsion.begin(), torsion.end());
        return GammaDescriptor(FgAbelian{rank, std::move(torsion)});
    }

    static GammaDescriptor presented(Presentation p)
    {
        for (const auto& word : p.relators) {
            for (const auto& letter : word) {
                if (letter.generator >= p.generators.size()) {
                    throw std::invalid_argument("relator refers to an unknown generator");
                }
            }
        }
        return GammaDescriptor(std::move(p));
    }

    /// Parses "trivial", "Z", "Z^l", "F_k", "Z/d", sums such as "Z^2+Z/4+Z/6",
    /// or a presentation "<x,y | xyx^-1y^-1>" with single-letter generators.
    static GammaDescriptor parse(std::string_view spec);

    const Variant& value() const { return value_; }
    bool is_free() const { return std::holds_alternative<FreeGroup>(value_); }
    bool is_abelian_descriptor() const { return std::holds_alternative<FgAbelian>(value_); }
    bool is_presented() const { return std::holds_alternative<Presentation>(value_); }

    /// Number of generators used when enumerating homomorphisms.
    std::size_t generator_count() const
    {
        return std::visit(
            [](const auto& g) -> std::size_t {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, FreeGroup>) {
                    return g.rank;
                } else if constexpr (std::is_same_v<T, FgAbelian>) {
                    return g.rank + g.torsion.size();
                } else {
                    return g.generators.size();
                }
            },
            value_);
    }

    std::string str() const;

    friend bool operator==(const GammaDescriptor&, const GammaDescriptor&) = default;

private:
    explicit GammaDescriptor(Variant v) : value_(std::move(v)) {}
    Variant value_;
};

namespace detail {

inline std::string abelian_str(const FgAbelian& a)
{
    std::string out;
    if (a.rank > 0) {
        out = a.rank == 1 ? "Z" : "Z^" + std::to_string(a.rank);
    }
    for (auto d : a.torsion) {
        if (!out.empty()) {
            out += "+";
        }
        out += "Z/" + std::to_string(d);
    }
    return out.empty() ? "trivial" : out;
}

inline std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\n\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::uint64_t parse_u64(std::string_view text, std::string_view context)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("expected a nonnegative integer in '" + std::string(context) + "'");
    }
    BigInt v = parse_bigint(text);
    if (v > std::numeric_limits<std::uint64_t>::max()) {
        throw std::invalid_argument("integer out of range in '" + std::string(context) + "'");
    }
    return static_cast<std::uint64_t>(v);
}

inline std::uint32_t parse_rank(std::string_view text, std::string_view context)
{
    auto v = parse_u64(text, context);
    if (v > 64) {
        throw std::invalid_argument("rank above 64 is not supported in '" + std::string(context) + "'");
    }
    return static_cast<std::uint32_t>(v);
}

inline Word parse_word(std::string_view text, std::vector<std::string>& names, bool allow_new)
{
    Word word;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '*' || text[i] == '\t')) {
            ++i;
        }
    };
    skip();
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) == 0) {
            throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' in relator");
        }
        std::string name(1, c);
        ++i;
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            if (!allow_new) {
                throw std::invalid_argument("relator uses undeclared generator '" + name + "'");
            }
            names.push_back(name);
            it = std::prev(names.end());
        }
        long long exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                ++i;
            }
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
                ++i;
            }
            auto digits = text.substr(start, i - start);
            if (!is_decimal_integer(digits)) {
                throw std::invalid_argument("malformed exponent in relator");
            }
            exponent = std::stoll(std::string(digits));
        }
        if (exponent != 0) {
            word.push_back(Letter{static_cast<std::size_t>(it - names.begin()), exponent});
        }
        skip();
    }
    return word;
}

inline GammaDescriptor parse_presentation(std::string_view spec)
{
    // <x,y | r1, r2>
    auto inner = trim(spec.substr(1, spec.size() - 2));
    auto bar = inner.find('|');
    std::string gens_text = trim(std::string_view(inner).substr(0, bar));
    std::string rels_text = bar == std::string::npos ? std::string() : trim(std::string_view(inner).substr(bar + 1));

    Presentation p;
    if (!gens_text.empty()) {
        std::size_t start = 0;
        while (start <= gens_text.size()) {
            auto comma = gens_text.find(',', start);
            auto name = trim(std::string_view(gens_text).substr(start, comma - start));
            if (name.size() != 1 || std::isalpha(static_cast<unsigned char>(name[0])) == 0) {
                throw std::invalid_argument("generator names must be single letters, got '" + name + "'");
            }
            if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end()) {
                throw std::invalid_argument("duplicate generator '" + name + "'");
            }
            p.generators.push_back(name);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    if (!rels_text.empty()) {
        std::size_t start = 0;
        while (start <= rels_text.size()) {
            auto comma = rels_text.find(',', start);
            auto rel = trim(std::string_view(rels_text).substr(start, comma - start));
            if (rel.empty()) {
                throw std::invalid_argument("empty relator");
            }
            p.relators.push_back(parse_word(rel, p.generators, false));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    return GammaDescriptor::presented(std::move(p));
}

} // namespace detail

inline GammaDescriptor GammaDescriptor::parse(std::string_view raw)
{
    std::string spec = detail::trim(raw);
    if (spec.empty()) {
        throw std::invalid_argument("empty group spec");
    }
    if (spec.front() == '<') {
        if (spec.back() != '>') {
            throw std::invalid_argument("unterminated presentation '" + spec + "'");
        }
        return detail::parse_presentation(spec);
    }
    if (spec == "trivial" || spec == "1") {
        return trivial();
    }
    if (spec.rfind("F_", 0) == 0) {
        return free(detail::parse_rank(std::string_view(spec).substr(2), spec));
    }
    std::uint32_t rank = 0;
    std::vector<std::uint64_t> torsion;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto plus = spec.find('+', start);
        auto term = detail::trim(std::string_view(spec).substr(start, plus - start));
        if (term == "Z") {
            rank += 1;
        } else if (term.rfind("Z^", 0) == 0) {
            rank += detail::parse_rank(std::string_view(term).substr(2), spec);
        } else if (term.rfind("Z/", 0) == 0) {
            auto d = detail::parse_u64(std::string_view(term).substr(2), spec);
            if (d < 2) {
                throw std::invalid_argument("torsion coefficient must be at least 2 in '" + spec + "'");
            }
            torsion.push_back(d);
        } else {
            throw std::invalid_argument("unrecognized group term '" + term + "' in '" + spec + "'");
        }
        if (plus == std::string::npos) {
            break;
        }
        start = plus + 1;
    }
    if (rank > 64) {
        throw std::invalid_argument("rank above 64 is not supported in '" + spec + "'");
    }
    return abelian(rank, std::move(torsion));
}

inline std::string GammaDescriptor::str() const
{
    return std::visit(
        [](const auto& g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FreeGroup>) {
                return "F_" + std::to_string(g.rank);
            } else if constexpr (std::is_same_v<T, FgAbelian>) {
                return detail::abelian_str(g);
            } else {
                std::string out = "<";
                for (std::size_t i = 0; i < g.generators.size(); ++i) {
                    out += (i == 0 ? "" : ",") + g.generators[i];
                }
                out += " | ";
                for (std::size_t r = 0; r < g.relators.size(); ++r) {
                    if (r != 0) {
                        out += ", ";
                    }
                    for (const auto& letter : g.relators[r]) {
                        out += g.generators[letter.generator];
                        if (letter.exponent != 1) {
                            out += "^" + std::to_string(letter.exponent);
                        }
                    }
                }
                return out + ">";
            }
        },
        value_);
}

namespace detail {

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries only).
inline std::vector<BigInt> smith_invariants(std::vector<std::vector<BigInt>> a)
{
    std::vector<BigInt> diagonal;
    if (a.empty()) {
        return diagonal;
    }
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        std::size_t pr = rows;
        std::size_t pc = cols;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr == rows) {
            break;
        }
        std::swap(a[t], a[pr]);
        for (auto& row : a) {
            std::swap(row[t], row[pc]);
        }
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            BigInt q = a[i][t] / a[t][t];
            if (q != 0) {
                for (std::size_t j = t; j < cols; ++j) {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean = clean && a[i][t] == 0;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            BigInt q = a[t][j] / a[t][t];
            if (q != 0) {
                for (std::size_t i = t; i < rows; ++i) {
                    a[i][j] -= q * a[i][t];
                }
            }
            clean = clean && a[t][j] == 0;
        }
        if (!clean) {
            continue; // remainders are smaller than the pivot; repeat
        }
        // pivot must divide the rest of the block
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[i][j] % a[t][t] != 0) {
                    for (std::size_t jj = t; jj < cols; ++jj) {
                        a[t][jj] += a[i][jj];
                    }
                    divides = false;
                    break;
                }
            }
        }
        if (!divides) {
            continue;
        }
        diagonal.push_back(abs(a[t][t]));
        ++t;
    }
    return diagonal;
}

} // namespace detail

/// Γ/[Γ,Γ] as Z^l ⊕ (torsion). Presentations are reduced via the Smith
/// normal form of their relator exponent-sum matrix.
inline FgAbelian abelianize(const GammaDescriptor& gamma)
{
    if (const auto* f = std::get_if<FreeGroup>(&gamma.value())) {
        return FgAbelian{f->rank, {}};
    }
    if (const auto* a = std::get_if<FgAbelian>(&gamma.value())) {
        return *a;
    }
    const auto& p = std::get<Presentation>(gamma.value());
    const std::size_t n = p.generators.size();
    std::vector<std::vector<BigInt>> matrix;
    for (const auto& word : p.relators) {
        std::vector<BigInt> row(n, 0);
        for (const auto& letter : word) {
            row.at(letter.generator) += letter.exponent;
        }
        matrix.push_back(std::move(row));
    }
    auto diagonal = detail::smith_invariants(std::move(matrix));
    FgAbelian out;
    out.rank = static_cast<std::uint32_t>(n - diagonal.size());
    for (const auto& d : diagonal) {
        if (d == 1) {
            continue;
        }
        if (d > std::numeric_limits<std::uint64_t>::max()) {
            throw AbelianizationUnavailable("torsion coefficient " + d.str() + " exceeds 64 bits");
        }
        out.torsion.push_back(static_cast<std::uint64_t>(d));
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

/// Primes dividing the order of some element of the torsion part.
inline std::set<std::uint64_t> torsion_primes(const FgAbelian& group)
{
    std::set<std::uint64_t> primes;
    for (auto d : group.torsion) {
        for (std::uint64_t p = 2; p <= d / p; ++p) {
            if (d % p == 0) {
                primes.insert(p);
                while (d % p == 0) {
                    d /= p;
                }
            }
        }
        if (d > 1) {
            primes.insert(d);
        }
    }
    return primes;
}

} // namespace orbichar

#endif
