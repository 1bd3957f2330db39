#include "mts/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace mts {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t checked64(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
        throw std::overflow_error("rational: value does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

void append_u128(std::string& out, u128 v) {
    char buf[40];
    int pos = 40;
    do {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    } while (v != 0);
    out.append(buf + pos, buf + 40);
}

}  // namespace

Rational Rational::normalized(i128 num, i128 den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rational(0);
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
    return Rational(checked64(num), checked64(den), raw_tag{});
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = normalized(num, den); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::normalized(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational::normalized(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::normalized(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational: division by zero");
    return Rational::normalized(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) {
        out += '/';
        out += std::to_string(den_);
    }
    return out;
}

std::string Rational::to_decimal_string() const {
    if (den_ == 1) return std::to_string(num_);

    std::int64_t d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    int places = twos > fives ? twos : fives;
    if (d != 1 || places > 18) return to_string();

    u128 pow10 = 1;
    for (int i = 0; i < places; ++i) pow10 *= 10;
    u128 scaled = abs128(static_cast<i128>(num_)) * (pow10 / static_cast<u128>(den_));

    std::string out;
    if (num_ < 0) out += '-';
    append_u128(out, scaled / pow10);
    std::string frac;
    u128 rem = scaled % pow10;
    for (int i = 0; i < places; ++i) {
        frac += static_cast<char>('0' + static_cast<int>(rem % 10));
        rem /= 10;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) {
        out += '.';
        out.append(frac.rbegin(), frac.rend());
    }
    return out;
}

Rational Rational::from_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("rational: empty string");

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    auto read_digits = [&](std::string_view what) -> i128 {
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            throw std::invalid_argument("rational: expected digits in " + std::string(what));
        }
        i128 value = 0;
        int count = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (++count > 18) throw std::invalid_argument("rational: too many digits");
            value = value * 10 + (text[pos] - '0');
            ++pos;
        }
        return value;
    };

    i128 intpart = read_digits("integer part");
    i128 num = intpart;
    i128 den = 1;

    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t frac_start = pos;
        i128 frac = read_digits("fraction");
        for (std::size_t i = frac_start; i < pos; ++i) den *= 10;
        num = intpart * den + frac;
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_digits("denominator");
    }

    if (pos != text.size()) throw std::invalid_argument("rational: trailing characters");
    if (negative) num = -num;
    return Rational::normalized(num, den);
}

}  // namespace mts
