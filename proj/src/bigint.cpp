#include "mfspin/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace mfspin {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long u = v > 0 ? static_cast<unsigned long long>(v)
                                 : 0ULL - static_cast<unsigned long long>(v);
    while (u) {
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

BigInt BigInt::from_uint64(std::uint64_t v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = 1;
    while (v) {
        r.mag_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return r;
}

void BigInt::trim(std::vector<std::uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

void BigInt::set_from_mag(int sign, std::vector<std::uint32_t> mag) {
    trim(mag);
    mag_ = std::move(mag);
    sign_ = mag_.empty() ? 0 : sign;
}

std::strong_ordering BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
}

std::strong_ordering BigInt::compare(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    auto mag = compare_mag(mag_, o.mag_);
    if (sign_ >= 0) return mag;
    if (mag == std::strong_ordering::less) return std::strong_ordering::greater;
    if (mag == std::strong_ordering::greater) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<std::uint32_t> r(hi.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<std::uint32_t>(carry);
    trim(r);
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (s < 0) {
            s += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(s);
    }
    trim(r);
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t s = r[i + j] + carry + ai * b[j];
            r[i + j] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t s = r[k] + carry;
            r[k] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
            ++k;
        }
    }
    trim(r);
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    if (sign_ == o.sign_) {
        r.set_from_mag(sign_, add_mag(mag_, o.mag_));
        return r;
    }
    auto c = compare_mag(mag_, o.mag_);
    if (c == std::strong_ordering::equal) return r;
    if (c == std::strong_ordering::greater) {
        r.set_from_mag(sign_, sub_mag(mag_, o.mag_));
    } else {
        r.set_from_mag(o.sign_, sub_mag(o.mag_, mag_));
    }
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.set_from_mag(sign_ * o.sign_, mul_mag(mag_, o.mag_));
    return r;
}

int BigInt::bit_length(const std::vector<std::uint32_t>& m) {
    if (m.empty()) return 0;
    int bits = 32 * static_cast<int>(m.size() - 1);
    std::uint32_t top = m.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

void BigInt::shift_left_one(std::vector<std::uint32_t>& m) {
    std::uint32_t carry = 0;
    for (auto& w : m) {
        std::uint32_t next = w >> 31;
        w = (w << 1) | carry;
        carry = next;
    }
    if (carry) m.push_back(carry);
}

void BigInt::shift_right_one(std::vector<std::uint32_t>& m) {
    std::uint32_t carry = 0;
    for (std::size_t i = m.size(); i-- > 0;) {
        std::uint32_t next = m[i] & 1u;
        m[i] = (m[i] >> 1) | (carry << 31);
        carry = next;
    }
    trim(m);
}

BigInt::DivMod BigInt::divmod(const BigInt& divisor) const {
    if (divisor.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    DivMod out;
    if (sign_ == 0) return out;
    auto c = compare_mag(mag_, divisor.mag_);
    if (c == std::strong_ordering::less) {
        out.rem = *this;
        return out;
    }
    // binary long division on magnitudes
    int shift = bit_length(mag_) - bit_length(divisor.mag_);
    std::vector<std::uint32_t> d = divisor.mag_;
    for (int i = 0; i < shift; ++i) shift_left_one(d);
    std::vector<std::uint32_t> rem = mag_;
    std::vector<std::uint32_t> quot(static_cast<std::size_t>(shift / 32 + 1), 0);
    for (int i = shift; i >= 0; --i) {
        if (compare_mag(rem, d) != std::strong_ordering::less) {
            rem = sub_mag(rem, d);
            quot[static_cast<std::size_t>(i) / 32] |= (1u << (i % 32));
        }
        shift_right_one(d);
    }
    out.quot.set_from_mag(sign_ * divisor.sign_, std::move(quot));
    out.rem.set_from_mag(sign_, std::move(rem));
    return out;
}

BigInt BigInt::divide_exact(const BigInt& divisor) const {
    DivMod dm = divmod(divisor);
    if (!dm.rem.is_zero()) throw std::logic_error("BigInt: inexact division");
    return dm.quot;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    std::uint64_t v = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    return v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1;
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::range_error("BigInt: does not fit int64");
    std::uint64_t v = 0;
    if (mag_.size() >= 1) v |= mag_[0];
    if (mag_.size() >= 2) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
    if (sign_ >= 0) return static_cast<std::int64_t>(v);
    return static_cast<std::int64_t>(0ULL - v);
}

double BigInt::to_double() const {
    double r = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        r = r * 4294967296.0 + static_cast<double>(mag_[i]);
    }
    return sign_ < 0 ? -r : r;
}

double BigInt::log_abs() const {
    if (sign_ == 0) return -std::numeric_limits<double>::infinity();
    // top 64 bits give a 1e-19 relative handle on the mantissa
    int bits = bit_length(mag_);
    std::uint64_t top = 0;
    int take = std::min(bits, 64);
    for (int b = 0; b < take; ++b) {
        int idx = bits - 1 - b;
        std::uint32_t w = mag_[static_cast<std::size_t>(idx) / 32];
        std::uint32_t bit = (w >> (idx % 32)) & 1u;
        top = (top << 1) | bit;
    }
    return std::log(static_cast<double>(top)) + (bits - take) * std::log(2.0);
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        // divide magnitude by 1e9 in place
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
            rem = cur % 1000000000ULL;
        }
        trim(m);
        std::string chunk = std::to_string(rem);
        std::reverse(chunk.begin(), chunk.end());
        digits += chunk;
        // interior groups are exactly nine digits; restore their leading zeros
        if (!m.empty()) digits.append(9 - chunk.size(), '0');
    }
    if (sign_ < 0) digits += '-';
    std::reverse(digits.begin(), digits.end());
    return digits;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::factorial(int k) {
    BigInt r(1);
    for (int i = 2; i <= k; ++i) r *= BigInt(i);
    return r;
}

BigInt BigInt::pow(const BigInt& base, int e) {
    BigInt r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace mfspin
