#include "sspi/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace sspi {

namespace {

BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

// cpp_int's string constructor reads a leading 0 as an octal prefix
BigInt big_from_digits(std::string_view digits) {
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return BigInt(0);
    return BigInt{std::string(digits.substr(first))};
}

[[noreturn]] void bad(std::string_view text) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view rest = text;
    if (rest.empty()) bad(text);

    bool negative = false;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) bad(text);

    // a/b fraction form
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        std::string_view num = rest.substr(0, slash);
        std::string_view den = rest.substr(slash + 1);
        if (num.empty() || den.empty()) bad(text);
        for (char c : num)
            if (!std::isdigit(static_cast<unsigned char>(c))) bad(text);
        for (char c : den)
            if (!std::isdigit(static_cast<unsigned char>(c))) bad(text);
        BigInt n = big_from_digits(num);
        BigInt d = big_from_digits(den);
        if (d == 0) bad(text);
        Rational r(n, d);
        return negative ? Rational(-r) : r;
    }

    // decimal form: digits [. digits] [e[+-]digits]
    std::string int_part;
    std::string frac_part;
    long exponent = 0;
    std::size_t i = 0;
    while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) int_part.push_back(rest[i++]);
    if (i < rest.size() && rest[i] == '.') {
        ++i;
        while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) frac_part.push_back(rest[i++]);
    }
    if (int_part.empty() && frac_part.empty()) bad(text);
    if (i < rest.size() && (rest[i] == 'e' || rest[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < rest.size() && (rest[i] == '+' || rest[i] == '-')) {
            exp_neg = rest[i] == '-';
            ++i;
        }
        if (i == rest.size()) bad(text);
        long e = 0;
        while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) {
            e = e * 10 + (rest[i] - '0');
            if (e > 100000) bad(text);
            ++i;
        }
        exponent = exp_neg ? -e : e;
    }
    if (i != rest.size()) bad(text);

    BigInt mantissa = big_from_digits(int_part + frac_part);
    long shift = exponent - static_cast<long>(frac_part.size());
    Rational r(mantissa, 1);
    if (shift > 0)
        r *= Rational(pow10(static_cast<unsigned>(shift)), 1);
    else if (shift < 0)
        r /= Rational(pow10(static_cast<unsigned>(-shift)), 1);
    return negative ? Rational(-r) : r;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("value is not finite");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings turn the mantissa into an integer
    BigInt mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant, 1);
    if (exp > 0)
        r *= Rational(BigInt(1) << exp, 1);
    else if (exp < 0)
        r /= Rational(BigInt(1) << -exp, 1);
    return r;
}

std::string to_fraction_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

} // namespace sspi
