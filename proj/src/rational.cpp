#include "mfspin/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mfspin {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
        num_ = num_.divide_exact(g);
        den_ = den_.divide_exact(g);
    }
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return (num_ * o.den_) <=> (o.num_ * den_);
}

Rational Rational::pow(int e) const {
    if (e < 0) throw std::domain_error("Rational::pow: negative exponent");
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

Rational Rational::abs() const {
    Rational r = *this;
    if (r.num_.is_negative()) r.num_ = -r.num_;
    return r;
}

double Rational::to_double() const {
    double n = num_.to_double();
    double d = den_.to_double();
    if (std::isfinite(n) && std::isfinite(d)) return n / d;
    return (num_.is_negative() ? -1.0 : 1.0) * std::exp(num_.log_abs() - den_.log_abs());
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

}  // namespace mfspin
