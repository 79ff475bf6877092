#pragma once

#include <string>

#include "mfspin/bigint.hpp"

namespace mfspin {

// Exact rational with BigInt numerator/denominator, always reduced,
// denominator positive.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const;
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational pow(int e) const;  // e >= 0
    Rational abs() const;

    double to_double() const;
    // "1/2", "-1/3", integers without the "/1"
    std::string to_string() const;

private:
    BigInt num_, den_;
    void normalize();
};

}  // namespace mfspin
