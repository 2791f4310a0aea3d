// Command-line front end for the orbichar library.
//
// Exit codes: 0 success, 2 malformed input, 3 unsupported input or budget
// exceeded, 4 internal verification failure.

#include "orbichar/characteristics.hpp"
#include "orbichar/classify.hpp"
#include "orbichar/constructions.hpp"
#include "orbichar/json_io.hpp"
#include "orbichar/mirrored.hpp"
#include "orbichar/sectors.hpp"
#include "orbichar/worked_examples.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace orbichar;

constexpr int exit_ok = 0;
constexpr int exit_malformed = 2;
constexpr int exit_unsupported = 3;
constexpr int exit_verification = 4;

std::uint64_t hom_budget()
{
    const char* raw = std::getenv("ORBICHAR_HOM_BUDGET");
    if (raw == nullptr || *raw == '\0') {
        return default_hom_budget;
    }
    try {
        return detail::parse_u64(raw, "ORBICHAR_HOM_BUDGET");
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text, std::string_view what)
{
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        try {
            out.push_back(detail::parse_u64(detail::trim(text.substr(start, comma - start)), what));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

GammaDescriptor parse_gamma(const std::string& spec)
{
    try {
        return GammaDescriptor::parse(spec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void print(const Json& j, bool compact = false) { std::cout << (compact ? j.dump() : j.dump(2)) << '\n'; }

// ---- chi ------------------------------------------------------------------

struct ChiOptions {
    std::string sig;
    std::string gamma;
    std::optional<std::uint64_t> l;
    std::optional<std::uint64_t> seq_len;
    std::optional<long long> manifold_chi;
    bool json = false;
};

int run_chi(const ChiOptions& o)
{
    const auto sig = load_signature(o.sig);
    if (o.seq_len) {
        const auto seq = char_sequence(sig, *o.seq_len);
        if (o.json) {
            print({{"signature", to_json(sig)}, {"sequence", to_json(seq)}});
        } else {
            std::string line;
            for (const auto& v : seq.values) {
                line += (line.empty() ? "" : ",") + v.str();
            }
            std::cout << line << '\n';
        }
        return exit_ok;
    }
    if (o.l && !o.gamma.empty()) {
        throw ParseError("--l and --gamma are mutually exclusive");
    }
    Rational value;
    std::string gamma_text;
    if (o.l) {
        value = chi_l(sig, *o.l);
        gamma_text = "Z^" + std::to_string(*o.l);
    } else {
        const auto gamma = parse_gamma(o.gamma.empty() ? "trivial" : o.gamma);
        gamma_text = gamma.str();
        value = o.manifold_chi ? chi_gamma_times_manifold(sig, gamma, BigInt(*o.manifold_chi)) : chi_gamma(sig, gamma);
    }
    if (o.l && o.manifold_chi) {
        value *= Rational(BigInt(*o.manifold_chi));
    }
    if (o.json) {
        Json out{{"signature", to_json(sig)}, {"gamma", gamma_text}};
        if (o.manifold_chi) {
            out["manifold_chi"] = *o.manifold_chi;
        }
        out["value"] = to_json(value);
        print(out);
    } else {
        std::cout << value.str() << '\n';
    }
    return exit_ok;
}

// ---- construct ------------------------------------------------------------

struct ConstructOptions {
    std::uint64_t L = 2;
    std::uint64_t genus = 0;
    std::string orders;
    std::string avoid_primes;
    std::vector<std::string> gammas;
    std::uint64_t N = 2;
    std::string equalize = "lcm";
};

const char* kind_name(MergeStep::Kind k)
{
    switch (k) {
    case MergeStep::Kind::pass_left:
        return "pass_left";
    case MergeStep::Kind::pass_right:
        return "pass_right";
    default:
        return "merged";
    }
}

Json verification_block(const std::vector<OrbifoldSignature>& family, std::uint64_t L,
                        const std::vector<GammaDescriptor>& gammas)
{
    Json sequences = Json::array();
    bool equal = true;
    const auto reference = char_sequence(family.front(), L);
    for (const auto& m : family) {
        auto seq = char_sequence(m, L);
        equal = equal && seq == reference;
        sequences.push_back(to_json(seq));
    }
    bool distinct = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            distinct = distinct && !is_diffeomorphic(family[i], family[j]);
        }
    }
    Json out{{"max_level", L}, {"sequences", std::move(sequences)}, {"sequences_equal", equal},
             {"pairwise_distinct", distinct}};
    bool gammas_equal = true;
    if (!gammas.empty()) {
        Json per_gamma = Json::array();
        for (const auto& g : gammas) {
            const auto ref = chi_gamma(family.front(), g);
            bool same = true;
            for (const auto& m : family) {
                same = same && chi_gamma(m, g) == ref;
            }
            gammas_equal = gammas_equal && same;
            per_gamma.push_back({{"gamma", g.str()}, {"value", to_json(ref)}, {"all_equal", same}});
        }
        out["chi_gamma"] = std::move(per_gamma);
    }
    if (!equal || !distinct || !gammas_equal) {
        throw VerificationFailure("construct verification failed");
    }
    return out;
}

int run_construct(const ConstructOptions& o)
{
    EqualizeMode mode{};
    if (o.equalize == "lcm") {
        mode = EqualizeMode::lcm;
    } else if (o.equalize == "product") {
        mode = EqualizeMode::product;
    } else {
        throw ParseError("--equalize must be lcm or product");
    }

    if (!o.gammas.empty()) {
        std::vector<GammaDescriptor> groups;
        for (const auto& s : o.gammas) {
            groups.push_back(parse_gamma(s));
        }
        const auto family = general_gamma_family(groups, o.N, o.genus, mode);
        Json members = Json::array();
        for (const auto& m : family.members) {
            members.push_back(to_json(m));
        }
        Json groups_json = Json::array();
        for (const auto& g : groups) {
            groups_json.push_back(g.str());
        }
        const std::uint64_t level = std::max<std::uint64_t>(family.max_rank, 2);
        print({{"groups", std::move(groups_json)},
               {"genus", o.genus},
               {"torsion_primes", family.primes},
               {"max_rank", family.max_rank},
               {"base_orders", family.base_orders},
               {"equalize", o.equalize},
               {"family", std::move(members)},
               {"verification", verification_block(family.members, level, groups)}});
        return exit_ok;
    }

    std::vector<std::uint64_t> R;
    if (!o.orders.empty() && !o.avoid_primes.empty()) {
        throw ParseError("--orders and --avoid-primes are mutually exclusive");
    }
    if (!o.orders.empty()) {
        R = parse_u64_list(o.orders, "base order");
    } else if (!o.avoid_primes.empty()) {
        const auto ps = parse_u64_list(o.avoid_primes, "prime");
        const std::uint64_t count = o.L >= 3 ? std::uint64_t{1} << std::min<std::uint64_t>(o.L - 2, 62) : 1;
        R = prime_avoiding_q(std::set<std::uint64_t>(ps.begin(), ps.end()), count);
    } else {
        throw ParseError("construct needs --orders, --avoid-primes or --gamma");
    }

    const auto build = build_collision_pair(o.L, o.genus, R, mode);
    const auto family = expand_family(build.pair.first, build.pair.second, o.N, o.L);

    Json steps = Json::array();
    for (const auto& s : build.steps) {
        Json step{{"level", s.level}, {"left", s.left}, {"kind", kind_name(s.kind)}, {"delta1", s.delta1.str()}};
        if (s.kind != MergeStep::Kind::pass_left) {
            step["delta2"] = s.delta2.str();
        }
        step["swapped_left"] = s.swapped_left;
        step["swapped_right"] = s.swapped_right;
        steps.push_back(std::move(step));
    }
    Json members = Json::array();
    for (const auto& m : family) {
        members.push_back(to_json(m));
    }
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    if (o.L < 3) {
        R.resize(1);
    }
    print({{"L", o.L},
           {"genus", o.genus},
           {"base_orders", R},
           {"equalize", o.equalize},
           {"steps", std::move(steps)},
           {"family", std::move(members)},
           {"verification", verification_block(family, o.L, {})}});
    return exit_ok;
}

// ---- reconstruct / enumerate / search ---------------------------------------

int run_reconstruct(const std::string& seq_text, bool text)
{
    const auto seq = parse_char_sequence(seq_text);
    const auto result = reconstruct(seq);
    if (const auto* sig = std::get_if<OrbifoldSignature>(&result)) {
        if (text) {
            std::cout << sig->str() << '\n';
        } else {
            print(to_json(*sig));
        }
        return exit_ok;
    }
    const auto& missing = std::get<InsufficientData>(result);
    if (text) {
        std::cout << "insufficient data: " << missing.available_length << " values given, at least "
                  << missing.required_length << " needed\n";
    } else {
        print({{"status", "insufficient_data"},
               {"available_length", missing.available_length},
               {"required_length", missing.required_length}});
    }
    return exit_ok;
}

int run_enumerate(const std::string& target_text, bool text, bool count_only)
{
    const Rational target = parse_rational(target_text);
    std::uint64_t count = 0;
    enumerate_by_chi_es(target, [&](const OrbifoldSignature& s) {
        ++count;
        if (count_only) {
            return;
        }
        if (text) {
            std::cout << s.str() << '\n';
        } else {
            print(to_json(s), true);
        }
    });
    if (count_only) {
        std::cout << count << '\n';
    }
    return exit_ok;
}

int run_search(const SearchBounds& bounds, std::uint64_t L)
{
    print(to_json(search_collisions(bounds, L)));
    return exit_ok;
}

// ---- quotient / mirrored -------------------------------------------------------

struct QuotientOptions {
    std::string group;
    std::string fpc;
    std::optional<long long> fpc_constant;
    std::string gamma;
    bool json = false;
};

int run_quotient(const QuotientOptions& o)
{
    const auto group = load_group(o.group);
    if (o.fpc.empty() == !o.fpc_constant) {
        throw ParseError("quotient needs exactly one of --fpc and --fpc-constant");
    }
    const auto fpc = o.fpc_constant ? FixedPointCharacter::constant(group, *o.fpc_constant) : load_fpc(o.fpc);
    const auto gamma = parse_gamma(o.gamma);
    const auto budget = hom_budget();
    const auto value = chi_gamma_quotient(group, fpc, gamma, budget);
    if (!o.json) {
        std::cout << value.str() << '\n';
        return exit_ok;
    }
    Json classes = Json::array();
    for (const auto& c : hom_classes(gamma, group, budget)) {
        classes.push_back({{"representative", c.representative},
                           {"class_size", c.class_size},
                           {"centralizer_order", c.centralizer_order},
                           {"image", c.image},
                           {"contribution", to_json(Rational(BigInt(fpc.at(c.image)), BigInt(c.centralizer_order)))}});
    }
    print({{"group_order", group.order()}, {"gamma", gamma.str()}, {"classes", std::move(classes)},
           {"value", to_json(value)}});
    return exit_ok;
}

struct MirroredOptions {
    std::string b0;
    std::string b1;
    std::string gamma;
    bool json = false;
};

int run_mirrored(const MirroredOptions& o)
{
    auto side = [](const std::string& s) {
        return s.empty() ? std::vector<Order>{} : parse_u64_list(s, "corner order");
    };
    std::optional<MirroredCylinder> mc;
    try {
        mc.emplace(side(o.b0), side(o.b1));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (o.gamma.empty()) {
        const auto v = chi_es_mirrored(*mc);
        if (o.json) {
            print({{"cylinder", mc->str()}, {"value", to_json(v)}});
        } else {
            std::cout << v.str() << '\n';
        }
        return exit_ok;
    }
    const auto gamma = parse_gamma(o.gamma);
    const auto sectors = mirrored_sectors(*mc, gamma, hom_budget());
    if (!o.json) {
        std::cout << sectors.total.str() << '\n';
        return exit_ok;
    }
    Json corners = Json::array();
    for (const auto& c : sectors.corners) {
        corners.push_back({{"corner", c.corner},
                           {"point_sectors", c.rotation_classes},
                           {"circle_sectors", c.reflection_classes},
                           {"nonabelian_point_sectors", c.nonabelian_classes},
                           {"contribution", to_json(c.contribution)}});
    }
    print({{"cylinder", mc->str()},
           {"gamma", gamma.str()},
           {"identity_sector", to_json(sectors.identity_sector)},
           {"corners", std::move(corners)},
           {"value", to_json(sectors.total)}});
    return exit_ok;
}

// ---- verify-paper / same-chi-l ---------------------------------------------------

int run_verify(const std::string& id)
{
    std::vector<std::string> ids;
    if (id == "all") {
        ids = worked_example_ids();
    } else {
        const auto& known = worked_example_ids();
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            throw ParseError("unknown example id '" + id + "'");
        }
        ids.push_back(id);
    }
    bool all = true;
    for (const auto& e : ids) {
        const auto report = run_worked_example(e);
        for (const auto& c : report.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << e << ": " << c.name;
            if (!c.detail.empty()) {
                std::cout << " [" << c.detail << "]";
            }
            std::cout << '\n';
        }
        std::cout << e << ": " << (report.passed() ? "ok" : "FAILED") << '\n';
        all = all && report.passed();
    }
    return all ? exit_ok : exit_verification;
}

int run_same_chi_l(std::uint64_t j, std::uint64_t l, std::uint64_t count)
{
    Json out = Json::array();
    for (const auto& m : same_chi_l_family(j, l, count)) {
        out.push_back({{"signature", to_json(m)}, {"chi_l", to_json(chi_l(m, l))}});
    }
    print(out);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Euler-Satake characteristics of closed 2-orbifolds"};
    app.require_subcommand(1);

    ChiOptions chi;
    auto* chi_cmd = app.add_subcommand("chi", "Characteristic of a signature");
    chi_cmd->add_option("--sig", chi.sig, "Signature JSON, Σ_g(...) or file")->required();
    chi_cmd->add_option("--gamma", chi.gamma, "Γ: trivial, Z^l, Z^l+Z/d, F_k or <x,y | ...>");
    chi_cmd->add_option("--l", chi.l, "Level l, same as --gamma Z^l");
    chi_cmd->add_option("--seq-len", chi.seq_len, "Print χ_(0..L)");
    chi_cmd->add_option("--manifold-chi", chi.manifold_chi, "Multiply by the Euler characteristic of a manifold factor");
    chi_cmd->add_flag("--json", chi.json, "JSON output");

    ConstructOptions con;
    auto* con_cmd = app.add_subcommand("construct", "Distinct signatures with equal characteristics");
    con_cmd->add_option("--L", con.L, "Agreement level")->check(CLI::Range(0, 40));
    con_cmd->add_option("--g", con.genus, "Genus");
    con_cmd->add_option("--orders", con.orders, "Base orders q1,q2,...");
    con_cmd->add_option("--avoid-primes", con.avoid_primes, "Choose base orders avoiding these primes");
    con_cmd->add_option("--gamma", con.gammas, "Groups Γ to agree on (repeatable)");
    con_cmd->add_option("--N", con.N, "Family size")->check(CLI::Range(2, 1000000));
    con_cmd->add_option("--equalize", con.equalize, "Cone-count equalization: lcm or product");

    std::string seq_text;
    bool reconstruct_text = false;
    auto* rec_cmd = app.add_subcommand("reconstruct", "Signature from χ_(0), χ_(1), ...");
    rec_cmd->add_option("--seq", seq_text, "Comma-separated values")->required();
    rec_cmd->add_flag("--text", reconstruct_text, "Print Σ_g(...) instead of JSON");

    std::string chi_es_text;
    bool enum_text = false;
    bool enum_count = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "All signatures with a given χ_ES");
    enum_cmd->add_option("--chi-es", chi_es_text, "Target p/q")->required();
    enum_cmd->add_flag("--text", enum_text, "Print Σ_g(...) lines instead of JSON lines");
    enum_cmd->add_flag("--count", enum_count, "Print only the number of signatures");

    SearchBounds bounds;
    std::uint64_t search_L = 2;
    auto* search_cmd = app.add_subcommand("search", "Collisions of χ_(0..L) in a bounded box");
    search_cmd->add_option("--g-max", bounds.max_genus, "Largest genus")->required();
    search_cmd->add_option("--k-max", bounds.max_cones, "Largest number of cone points")->required();
    search_cmd->add_option("--m-max", bounds.max_order, "Largest cone order")->required();
    search_cmd->add_option("--L", search_L, "Compare χ_(0..L)")->required();

    QuotientOptions quo;
    auto* quo_cmd = app.add_subcommand("quotient", "Γ-characteristic of a global quotient M ⋊ G");
    quo_cmd->add_option("--group", quo.group, "Group name (C6, D10, C2xC3), JSON or file")->required();
    quo_cmd->add_option("--fpc", quo.fpc, "Fixed-point character JSON or file");
    quo_cmd->add_option("--fpc-constant", quo.fpc_constant, "Same χ_top(M^H) for every subgroup");
    quo_cmd->add_option("--gamma", quo.gamma, "Γ")->required();
    quo_cmd->add_flag("--json", quo.json, "JSON output with the class list");

    MirroredOptions mir;
    auto* mir_cmd = app.add_subcommand("mirrored", "Mirrored cylinder with corner reflectors");
    mir_cmd->add_option("--b0", mir.b0, "Corner orders on the first boundary");
    mir_cmd->add_option("--b1", mir.b1, "Corner orders on the second boundary");
    mir_cmd->add_option("--gamma", mir.gamma, "Γ (omit for χ_ES)");
    mir_cmd->add_flag("--json", mir.json, "JSON output with the sector inventory");

    std::string example_id;
    auto* ver_cmd = app.add_subcommand("verify-paper", "Recompute a worked example");
    ver_cmd->add_option("id", example_id, "sameESCsameg, sameLESC, basecase, noneffective, nonorientable, generaldim or all")
        ->required();

    std::uint64_t fam_j = 3;
    std::uint64_t fam_l = 2;
    std::uint64_t fam_count = 5;
    auto* same_cmd = app.add_subcommand("same-chi-l", "Signatures with χ_(l) = 2");
    same_cmd->add_option("--j", fam_j, "Odd cone order")->required();
    same_cmd->add_option("--l", fam_l, "Level")->required();
    same_cmd->add_option("--count", fam_count, "Number of members");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_malformed;
    }

    try {
        if (chi_cmd->parsed()) {
            return run_chi(chi);
        }
        if (con_cmd->parsed()) {
            return run_construct(con);
        }
        if (rec_cmd->parsed()) {
            return run_reconstruct(seq_text, reconstruct_text);
        }
        if (enum_cmd->parsed()) {
            return run_enumerate(chi_es_text, enum_text, enum_count);
        }
        if (search_cmd->parsed()) {
            return run_search(bounds, search_L);
        }
        if (quo_cmd->parsed()) {
            return run_quotient(quo);
        }
        if (mir_cmd->parsed()) {
            return run_mirrored(mir);
        }
        if (ver_cmd->parsed()) {
            return run_verify(example_id);
        }
        if (same_cmd->parsed()) {
            return run_same_chi_l(fam_j, fam_l, fam_count);
        }
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return exit_verification;
    } catch (const AbelianizationUnavailable& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const std::overflow_error& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_malformed;
    }
    return exit_malformed;
}
