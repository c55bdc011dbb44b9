#pragma once

#include "sspi/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>

namespace sspi {

// Nonnegative rational with a power-of-two denominator, kept unreduced so a
// probability counted out of 2^n assignments stays literally num/2^n. Every
// probability in the pairwise sample/realization model is of this form, and
// the arithmetic below is exact.
class Dyadic {
public:
    Dyadic() : num_(0), log2_den_(0) {}

    Dyadic(BigInt numerator, int log2_denominator)
        : num_(std::move(numerator)), log2_den_(log2_denominator) {
        if (num_ < 0) throw std::invalid_argument("dyadic numerator must be nonnegative");
        if (log2_den_ < 0) throw std::invalid_argument("dyadic log2 denominator must be nonnegative");
    }

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1, 0); }

    const BigInt& numerator() const { return num_; }
    int log2_denominator() const { return log2_den_; }
    bool is_zero() const { return num_ == 0; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.log2_den_, b.log2_den_);
        return Dyadic((a.num_ << (e - a.log2_den_)) + (b.num_ << (e - b.log2_den_)), e);
    }

    Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }

    // Scaling by a nonnegative integer (used for the factor 2 in 2*q_j >= p_j).
    friend Dyadic operator*(unsigned long scale, const Dyadic& a) {
        return Dyadic(a.num_ * scale, a.log2_den_);
    }

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int e = std::max(a.log2_den_, b.log2_den_);
        BigInt na = a.num_ << (e - a.log2_den_);
        BigInt nb = b.num_ << (e - b.log2_den_);
        if (na < nb) return std::strong_ordering::less;
        if (na > nb) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Equality of values, not of representations: 2/2^2 == 1/2^1.
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    Rational to_rational() const {
        return Rational(num_, BigInt(1) << log2_den_);
    }

    // Lossless "num/2^e" rendering used in reports.
    std::string str() const {
        return num_.str() + "/2^" + std::to_string(log2_den_);
    }

private:
    BigInt num_;
    int log2_den_;
};

// Parses the "num/2^e" rendering back; inverse of Dyadic::str().
Dyadic parse_dyadic(const std::string& text);

} // namespace sspi
