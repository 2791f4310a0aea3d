#ifndef ORBICHAR_RATIONAL_HPP
#define ORBICHAR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbichar {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline bool is_decimal_integer(std::string_view text)
{
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Parses a signed decimal integer of arbitrary length.
inline BigInt parse_bigint(std::string_view text)
{
    if (!detail::is_decimal_integer(text)) {
        throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
    bool negative = text.front() == '-';
    if (text.front() == '-' || text.front() == '+') {
        text.remove_prefix(1);
    }
    // cpp_int treats a leading 0 as an octal prefix
    while (text.size() > 1 && text.front() == '0') {
        text.remove_prefix(1);
    }
    BigInt value{std::string(text)};
    return negative ? BigInt(-value) : value;
}

inline std::string to_string(const BigInt& value) { return value.str(); }

/// Exact fraction, always in lowest terms with a positive denominator.
class Rational {
public:
    using storage_type = boost::multiprecision::cpp_rational;

    Rational() = default;
    template <std::integral T>
    Rational(T value) : value_(value) {}
    Rational(const BigInt& value) : value_(value) {}
    Rational(const BigInt& numerator, const BigInt& denominator)
    {
        if (denominator == 0) {
            throw std::domain_error("rational with zero denominator");
        }
        value_ = denominator < 0 ? storage_type(-numerator, -denominator) : storage_type(numerator, denominator);
    }

    /// Accepts "p" or "p/q" with an optional sign on p; q must be nonzero.
    static Rational parse(std::string_view text)
    {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            return Rational(parse_bigint(text));
        }
        auto den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
            throw std::invalid_argument("sign is only allowed on the numerator: '" + std::string(text) + "'");
        }
        BigInt den = parse_bigint(den_text);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(parse_bigint(text.substr(0, slash)), den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return value_ == 0; }
    int sign() const { return value_.sign(); }

    /// Integer value; throws if the fraction is not integral.
    BigInt to_integer() const
    {
        if (!is_integer()) {
            throw std::domain_error("rational " + str() + " is not an integer");
        }
        return numerator();
    }

    std::string str() const
    {
        BigInt den = denominator();
        if (den == 1) {
            return numerator().str();
        }
        return numerator().str() + "/" + den.str();
    }

    const storage_type& raw() const { return value_; }

    Rational operator-() const { return from_raw(-value_); }

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs)
    {
        if (rhs.is_zero()) {
            throw std::domain_error("division by zero");
        }
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        if (lhs.value_ < rhs.value_) {
            return std::strong_ordering::less;
        }
        if (rhs.value_ < lhs.value_) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Rational from_raw(storage_type v)
    {
        Rational r;
        r.value_ = std::move(v);
        return r;
    }

    storage_type value_;
};

inline std::string to_string(const Rational& value) { return value.str(); }

/// base^exponent for a nonnegative machine exponent.
inline BigInt ipow(const BigInt& base, std::uint64_t exponent)
{
    BigInt result = 1;
    BigInt b = base;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

/// base^exponent where a negative exponent yields the exact reciprocal power.
inline Rational rpow(const BigInt& base, long long exponent)
{
    if (exponent >= 0) {
        return Rational(ipow(base, static_cast<std::uint64_t>(exponent)));
    }
    if (base == 0) {
        throw std::domain_error("zero raised to a negative power");
    }
    return Rational(BigInt(1), ipow(base, static_cast<std::uint64_t>(-exponent)));
}

} // namespace orbichar

#endif
