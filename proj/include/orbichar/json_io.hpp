#ifndef ORBICHAR_JSON_IO_HPP
#define ORBICHAR_JSON_IO_HPP

#include "orbichar/classify.hpp"
#include "orbichar/finite_group.hpp"
#include "orbichar/rational.hpp"
#include "orbichar/sectors.hpp"
#include "orbichar/signature.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbichar {

using Json = nlohmann::ordered_json;

/// Malformed textual input (bad JSON, bad inline syntax, unreadable file).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const OrbifoldSignature& sig)
{
    Json cones = Json::array();
    for (const auto& [m, c] : sig.cones()) {
        cones.push_back({{"order", m}, {"count", c.str()}});
    }
    return {{"genus", sig.genus()}, {"cones", std::move(cones)}};
}

inline Json to_json(const CharSequence& seq)
{
    Json out = Json::array();
    for (const auto& v : seq.values) {
        out.push_back(v.str());
    }
    return out;
}

inline Json to_json(const FiniteGroup& g) { return {{"order", g.order()}, {"table", g.table()}}; }

inline Json to_json(const FixedPointCharacter& fpc)
{
    Json out = Json::array();
    for (const auto& [h, chi] : fpc.entries()) {
        out.push_back({{"subgroup", h}, {"chi", chi}});
    }
    return out;
}

inline Json to_json(const std::vector<CollisionGroup>& groups)
{
    Json out = Json::array();
    for (const auto& g : groups) {
        Json members = Json::array();
        for (const auto& m : g.members) {
            members.push_back(to_json(m));
        }
        out.push_back({{"sequence", to_json(g.sequence)}, {"members", std::move(members)}});
    }
    return out;
}

namespace detail {

inline std::uint64_t json_u64(const Json& j, std::string_view what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

inline BigInt json_count(const Json& j)
{
    if (j.is_string()) {
        try {
            return parse_bigint(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("cone count: ") + e.what());
        }
    }
    return BigInt(json_u64(j, "cone count"));
}

} // namespace detail

inline OrbifoldSignature signature_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("genus")) {
        throw ParseError("signature JSON needs a \"genus\" field");
    }
    const std::uint64_t genus = detail::json_u64(j.at("genus"), "genus");
    OrbifoldSignature::ConeMap cones;
    if (j.contains("cones")) {
        const auto& list = j.at("cones");
        if (!list.is_array()) {
            throw ParseError("\"cones\" must be an array");
        }
        for (const auto& item : list) {
            if (!item.is_object() || !item.contains("order")) {
                throw ParseError("each cone entry needs an \"order\"");
            }
            const Order m = detail::json_u64(item.at("order"), "cone order");
            if (m < 2) {
                throw ParseError("cone order must be at least 2");
            }
            BigInt c = item.contains("count") ? detail::json_count(item.at("count")) : BigInt(1);
            if (c < 0) {
                throw ParseError("cone count must be nonnegative");
            }
            cones[m] += c;
        }
    }
    return OrbifoldSignature(genus, std::move(cones));
}

/// Σ_g(m1,m2,...) with optional runs m×c (or mxc). The prefixes S_ and
/// Sigma_ are accepted as ASCII spellings of Σ_.
inline OrbifoldSignature parse_signature_inline(std::string_view text)
{
    std::string s = detail::trim(text);
    std::string_view rest = s;
    bool matched = false;
    for (std::string_view prefix : {"Σ_", "Sigma_", "S_"}) {
        if (rest.substr(0, prefix.size()) == prefix) {
            rest.remove_prefix(prefix.size());
            matched = true;
            break;
        }
    }
    const auto open = rest.find('(');
    if (!matched || open == std::string_view::npos || rest.back() != ')') {
        throw ParseError("expected a signature like Σ_g(m1,m2,...), got '" + s + "'");
    }
    std::uint64_t genus = 0;
    try {
        genus = detail::parse_u64(rest.substr(0, open), "genus");
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    std::string body = detail::trim(rest.substr(open + 1, rest.size() - open - 2));
    OrbifoldSignature::ConeMap cones;
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
        auto comma = body.find(',', start);
        std::string item = detail::trim(std::string_view(body).substr(start, comma - start));
        std::string order_text = item;
        std::string count_text = "1";
        for (std::string_view sep : {"×", "x", "*"}) {
            if (auto pos = item.find(sep); pos != std::string::npos) {
                order_text = detail::trim(std::string_view(item).substr(0, pos));
                count_text = detail::trim(std::string_view(item).substr(pos + sep.size()));
                break;
            }
        }
        try {
            const Order m = detail::parse_u64(order_text, "cone order");
            if (m < 2) {
                throw ParseError("cone order must be at least 2 in '" + s + "'");
            }
            if (!detail::is_decimal_integer(count_text) || count_text.front() == '-') {
                throw ParseError("bad cone count '" + count_text + "'");
            }
            cones[m] += parse_bigint(count_text);
        } catch (const ParseError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(e.what()) + " in '" + s + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return OrbifoldSignature(genus, std::move(cones));
}

inline Json parse_json_text(const std::string& text, std::string_view what)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Accepts signature JSON, inline Σ_g(...) sugar, or a path to a file holding either.
inline OrbifoldSignature load_signature(const std::string& arg)
{
    std::string text = detail::trim(arg);
    if (text.empty()) {
        throw ParseError("empty signature argument");
    }
    if (text.front() != '{' && text.find('(') == std::string::npos) {
        text = detail::trim(read_text_file(text));
    }
    if (!text.empty() && text.front() == '{') {
        return signature_from_json(parse_json_text(text, "signature JSON"));
    }
    return parse_signature_inline(text);
}

inline Rational parse_rational(const std::string& text)
{
    try {
        return Rational::parse(detail::trim(text));
    } catch (const std::exception& e) {
        throw ParseError("bad rational '" + text + "': " + e.what());
    }
}

/// Comma-separated list of rationals, e.g. "2,2,2,2" or "-1/2,2,19".
inline CharSequence parse_char_sequence(const std::string& text)
{
    CharSequence seq;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        seq.values.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return seq;
}

inline FiniteGroup group_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("table") || !j.at("table").is_array()) {
        throw ParseError("group JSON needs a \"table\" array");
    }
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : j.at("table")) {
        if (!row.is_array()) {
            throw ParseError("group table rows must be arrays");
        }
        std::vector<std::size_t> r;
        for (const auto& x : row) {
            r.push_back(detail::json_u64(x, "table entry"));
        }
        table.push_back(std::move(r));
    }
    if (j.contains("order") && detail::json_u64(j.at("order"), "order") != table.size()) {
        throw ParseError("group \"order\" does not match the table size");
    }
    try {
        return FiniteGroup(std::move(table));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// Built-in name ("C6", "D10", "C2xC3"), group JSON, or a path to a JSON file.
inline FiniteGroup load_group(const std::string& arg)
{
    std::string text = detail::trim(arg);
    if (!text.empty() && text.front() == '{') {
        return group_from_json(parse_json_text(text, "group JSON"));
    }
    if (std::filesystem::exists(text)) {
        return group_from_json(parse_json_text(read_text_file(text), "group JSON"));
    }
    try {
        return group_from_name(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline FixedPointCharacter fpc_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw ParseError("fixed-point character must be a JSON array of {subgroup, chi}");
    }
    FixedPointCharacter fpc;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("subgroup") || !item.contains("chi")
            || !item.at("subgroup").is_array() || !item.at("chi").is_number_integer()) {
            throw ParseError("fixed-point entry needs \"subgroup\" (array) and \"chi\" (integer)");
        }
        Subgroup h;
        for (const auto& x : item.at("subgroup")) {
            h.push_back(detail::json_u64(x, "subgroup element"));
        }
        fpc.set(std::move(h), item.at("chi").get<long long>());
    }
    return fpc;
}

inline FixedPointCharacter load_fpc(const std::string& arg)
{
    std::string text = detail::trim(arg);
    if (text.empty() || text.front() != '[') {
        text = read_text_file(text);
    }
    return fpc_from_json(parse_json_text(text, "fixed-point character JSON"));
}

} // namespace orbichar

#endif
