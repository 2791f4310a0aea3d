#ifndef ORBICHAR_WORKED_EXAMPLES_HPP
#define ORBICHAR_WORKED_EXAMPLES_HPP

#include "orbichar/characteristics.hpp"
#include "orbichar/classify.hpp"
#include "orbichar/constructions.hpp"
#include "orbichar/mirrored.hpp"
#include "orbichar/sectors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbichar {

struct ExampleCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExampleReport {
    std::string id;
    std::vector<ExampleCheck> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.passed; });
    }
};

inline const std::vector<std::string>& worked_example_ids()
{
    static const std::vector<std::string> ids{"sameESCsameg", "sameLESC",      "basecase",
                                              "noneffective", "nonorientable", "generaldim"};
    return ids;
}

/// Γ used when comparing quotient characteristics.
inline std::vector<GammaDescriptor> quotient_gamma_battery()
{
    std::vector<GammaDescriptor> out;
    for (const char* spec : {"trivial", "Z", "Z^2", "Z^3", "Z/2", "Z/3", "Z/6", "Z+Z/2", "Z+Z/4", "F_2",
                             "<x,y | xyx^-1y^-1>"}) {
        out.push_back(GammaDescriptor::parse(spec));
    }
    return out;
}

/// Γ used for mirrored cylinders (abelian images only).
inline std::vector<GammaDescriptor> mirrored_gamma_battery()
{
    std::vector<GammaDescriptor> out;
    for (const char* spec : {"trivial", "Z", "Z^2", "Z^3", "Z/2", "Z/3", "Z+Z/2", "<x,y | xyx^-1y^-1>"}) {
        out.push_back(GammaDescriptor::parse(spec));
    }
    return out;
}

namespace detail {

inline void check(ExampleReport& r, std::string name, bool ok, std::string detail = {})
{
    r.checks.push_back({std::move(name), ok, std::move(detail)});
}

inline ExampleReport example_same_esc_same_g()
{
    ExampleReport r{"sameESCsameg", {}};
    for (std::uint64_t g = 0; g <= 5; ++g) {
        OrbifoldSignature q(g, {{3, BigInt(9)}});
        OrbifoldSignature qp(g, {{4, BigInt(8)}});
        const Rational expected = Rational(-4) - Rational(2) * Rational(g);
        const auto a = chi_es(q);
        const auto b = chi_es(qp);
        check(r, "chi_es " + q.str() + " = chi_es " + qp.str() + " = " + expected.str(), a == expected && b == expected,
              a.str() + ", " + b.str());
        check(r, "not diffeomorphic at g = " + std::to_string(g), !is_diffeomorphic(q, qp));
    }
    const OrbifoldSignature q0(0, {{3, BigInt(9)}});
    const OrbifoldSignature qp0(0, {{4, BigInt(8)}});
    bool has_q = false;
    bool has_qp = false;
    std::size_t total = 0;
    enumerate_by_chi_es(Rational(-4), [&](const OrbifoldSignature& s) {
        ++total;
        has_q = has_q || s == q0;
        has_qp = has_qp || s == qp0;
    });
    check(r, "enumerate chi_es = -4 contains both genus-0 signatures", has_q && has_qp,
          std::to_string(total) + " signatures");
    return r;
}

inline ExampleReport example_same_lesc()
{
    ExampleReport r{"sameLESC", {}};
    const std::pair<std::uint64_t, std::uint64_t> params[] = {{3, 2}, {3, 3}, {5, 2}, {7, 3}};
    for (auto [j, l] : params) {
        const auto family = same_chi_l_family(j, l, 5);
        bool ok = family.size() == 5;
        std::string values;
        for (const auto& q : family) {
            const auto v = chi_l(q, l);
            ok = ok && v == Rational(2);
            values += (values.empty() ? "" : ",") + v.str();
        }
        for (std::size_t a = 0; a < family.size(); ++a) {
            for (std::size_t b = a + 1; b < family.size(); ++b) {
                ok = ok && !is_diffeomorphic(family[a], family[b]);
            }
        }
        check(r, "j = " + std::to_string(j) + ", l = " + std::to_string(l) + ": five distinct members with chi_l = 2",
              ok, values);
    }
    return r;
}

inline ExampleReport example_base_case()
{
    ExampleReport r{"basecase", {}};
    bool values_ok = true;
    bool distinct_ok = true;
    bool split_ok = true;
    for (std::uint64_t q = 2; q <= 10; ++q) {
        for (std::uint64_t g = 0; g <= 3; ++g) {
            const auto [a, b] = base_pair(g, q);
            const BigInt bq(q);
            const BigInt bg(g);
            const Rational l0 = Rational(BigInt(1), bq) - Rational(1) - Rational(2 * bg);
            const Rational l1 = Rational(2 - 2 * bg);
            const Rational l2 = Rational(1 - 2 * bg + 5 * bq + 2 * bq * bq);
            for (const auto* s : {&a, &b}) {
                values_ok = values_ok && chi_l(*s, 0) == l0 && chi_l(*s, 1) == l1 && chi_l(*s, 2) == l2;
            }
            distinct_ok = distinct_ok && !is_diffeomorphic(a, b);
            split_ok = split_ok && chi_l(a, 3) != chi_l(b, 3);
        }
    }
    check(r, "chi_0, chi_1, chi_2 match 1/q-1-2g, 2-2g, 1-2g+5q+2q^2 for q <= 10, g <= 3", values_ok);
    check(r, "base pairs are distinct", distinct_ok);
    check(r, "base pairs are separated by chi_3", split_ok);
    const auto [a, b] = base_pair(0, 2);
    check(r, "q = 2, g = 0 gives Σ_0(5,5,10) and Σ_0(4,8,8)",
          a == OrbifoldSignature::from_orders(0, {5, 5, 10}) && b == OrbifoldSignature::from_orders(0, {4, 8, 8}),
          a.str() + ", " + b.str());
    return r;
}

inline ExampleReport example_noneffective()
{
    ExampleReport r{"noneffective", {}};
    const auto effective = rotation_sphere_action(6, 1);
    const auto noneffective = rotation_sphere_action(6, 2);
    check(r, "rotation by π/3 is effective", effective.kernel.size() == 1);
    check(r, "rotation by 2π/3 has kernel of order 2", noneffective.kernel == Subgroup{0, 3});
    for (const auto& gamma : quotient_gamma_battery()) {
        const auto a = chi_gamma_quotient(effective.group, effective.fpc, gamma);
        const auto b = chi_gamma_quotient(noneffective.group, noneffective.fpc, gamma);
        check(r, "Γ = " + gamma.str() + ": equal characteristics", a == b, a.str() + " vs " + b.str());
    }
    const auto classes = hom_classes(GammaDescriptor::free_abelian(1), effective.group);
    bool thirds = classes.size() == 6;
    for (const auto& c : classes) {
        const Rational sector(BigInt(effective.fpc.at(c.image)), BigInt(c.centralizer_order));
        thirds = thirds && sector == Rational(BigInt(1), BigInt(3));
    }
    check(r, "Γ = Z: six classes each contributing 1/3", thirds, std::to_string(classes.size()) + " classes");
    const auto total = chi_gamma_quotient(effective.group, effective.fpc, GammaDescriptor::free_abelian(1));
    check(r, "Γ = Z: total 2", total == Rational(2), total.str());
    return r;
}

inline ExampleReport example_nonorientable()
{
    ExampleReport r{"nonorientable", {}};
    const MirroredCylinder q({3, 5}, {7, 11});
    const MirroredCylinder qp({3, 7}, {5, 11});
    const Rational expected(BigInt(-1867), BigInt(1155));
    check(r, "chi_es " + q.str() + " = -1867/1155", chi_es_mirrored(q) == expected, chi_es_mirrored(q).str());
    check(r, "chi_es " + qp.str() + " = -1867/1155", chi_es_mirrored(qp) == expected, chi_es_mirrored(qp).str());
    Rational direct(-2);
    for (Order n : q.corners()) {
        direct += Rational(BigInt(1), BigInt(2 * n));
    }
    check(r, "agrees with -2 + Σ 1/(2n)", direct == expected, direct.str());
    for (const auto& gamma : mirrored_gamma_battery()) {
        const auto a = chi_gamma_mirrored(q, gamma);
        const auto b = chi_gamma_mirrored(qp, gamma);
        check(r, "Γ = " + gamma.str() + ": equal characteristics", a == b, a.str() + " vs " + b.str());
    }
    check(r, "not diffeomorphic by boundary corner multisets", !is_diffeomorphic(q, qp));
    return r;
}

inline ExampleReport example_general_dim()
{
    ExampleReport r{"generaldim", {}};
    const BigInt sphere_chi = 2;
    for (std::uint64_t L = 2; L <= 6; ++L) {
        const std::uint64_t count = L >= 3 ? std::uint64_t{1} << (L - 2) : 1;
        const auto build = build_collision_pair(L, 0, prime_avoiding_q({3}, count));
        const auto& [a, b] = build.pair;
        bool ok = true;
        for (std::uint64_t l = 0; l <= L; ++l) {
            const auto gamma = GammaDescriptor::free_abelian(static_cast<std::uint32_t>(l));
            const auto pa = chi_gamma_times_manifold(a, gamma, sphere_chi);
            ok = ok && pa == chi_gamma_times_manifold(b, gamma, sphere_chi)
                && pa == chi_gamma(a, gamma) * Rational(sphere_chi);
        }
        check(r, "L = " + std::to_string(L) + ": pair × S² keeps χ_(l) equal for l <= L", ok && a != b);
    }
    const std::vector<GammaDescriptor> groups{GammaDescriptor::parse("Z+Z/4"), GammaDescriptor::parse("Z/3"),
                                              GammaDescriptor::parse("Z^2")};
    const auto family = general_gamma_family(groups, 3, 0);
    bool ok = true;
    for (const auto& gamma : groups) {
        for (const auto& m : family.members) {
            ok = ok && chi_gamma_times_manifold(m, gamma, sphere_chi)
                == chi_gamma_times_manifold(family.members.front(), gamma, sphere_chi);
        }
    }
    check(r, "Γ-family for {Z+Z/4, Z/3, Z^2} × S² keeps χ_Γ equal", ok);
    return r;
}

} // namespace detail

/// Recomputes one of the worked examples. Throws std::invalid_argument for an unknown id.
inline ExampleReport run_worked_example(const std::string& id)
{
    if (id == "sameESCsameg") {
        return detail::example_same_esc_same_g();
    }
    if (id == "sameLESC") {
        return detail::example_same_lesc();
    }
    if (id == "basecase") {
        return detail::example_base_case();
    }
    if (id == "noneffective") {
        return detail::example_noneffective();
    }
    if (id == "nonorientable") {
        return detail::example_nonorientable();
    }
    if (id == "generaldim") {
        return detail::example_general_dim();
    }
    throw std::invalid_argument("unknown example id '" + id + "'");
}

} // namespace orbichar

#endif
