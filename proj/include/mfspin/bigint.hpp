#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mfspin {

// Arbitrary-precision signed integer, base 2^32 magnitude.
// Sized for exact combinatorics (factorials, Kostka numbers, rational
// Vandermonde solves), not for cryptographic workloads.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    static BigInt from_uint64(std::uint64_t v);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    // Truncated division (quotient rounds toward zero, remainder has the
    // sign of the dividend). Throws std::domain_error on division by zero.
    struct DivMod;
    DivMod divmod(const BigInt& divisor) const;
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    // Exact division: throws std::logic_error if the remainder is nonzero.
    BigInt divide_exact(const BigInt& divisor) const;

    std::strong_ordering operator<=>(const BigInt& o) const { return compare(o); }
    bool operator==(const BigInt& o) const { return compare(o) == 0; }

    bool fits_int64() const;
    std::int64_t to_int64() const;          // throws if out of range
    double to_double() const;               // may overflow to +-inf
    double log_abs() const;                 // natural log of |x|, -inf for 0

    std::string to_string() const;          // decimal

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative
    static BigInt factorial(int k);
    static BigInt pow(const BigInt& base, int e);

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;  // little endian, trimmed

    std::strong_ordering compare(const BigInt& o) const;
    static std::strong_ordering compare_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires a >= b
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void trim(std::vector<std::uint32_t>& m);
    static int bit_length(const std::vector<std::uint32_t>& m);
    static void shift_left_one(std::vector<std::uint32_t>& m);
    static void shift_right_one(std::vector<std::uint32_t>& m);
    void set_from_mag(int sign, std::vector<std::uint32_t> mag);
};

struct BigInt::DivMod {
    BigInt quot, rem;
};

inline BigInt BigInt::operator/(const BigInt& o) const { return divmod(o).quot; }
inline BigInt BigInt::operator%(const BigInt& o) const { return divmod(o).rem; }

}  // namespace mfspin
