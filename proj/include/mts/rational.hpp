#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mts {

/// Exact rational on 64-bit numerator/denominator.
///
/// Always normalized: den > 0 and gcd(|num|, den) == 1. Intermediates run in
/// 128-bit arithmetic; a result that cannot be renormalized back into 64 bits
/// throws std::overflow_error.
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: integers are rationals
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    Rational operator-() const noexcept { return Rational(-num_, den_, raw_tag{}); }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0

    friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    /// "3", "-5/7"
    std::string to_string() const;

    /// Exact decimal ("2.5", "5.00005") when the denominator is 2^a*5^b with
    /// at most 18 decimal places; otherwise falls back to to_string().
    std::string to_decimal_string() const;

    /// Accepts integers ("42"), decimals ("-0.001"), and ratios ("5/3").
    /// Throws std::invalid_argument on anything else.
    static Rational from_string(std::string_view text);

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    struct raw_tag {};
    constexpr Rational(std::int64_t num, std::int64_t den, raw_tag) noexcept : num_(num), den_(den) {}

    static Rational normalized(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace mts
