#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mfspin/bigint.hpp"

namespace mfspin {

// Integer partition with at most theta parts, stored zero-padded to length
// theta and weakly decreasing.
struct Partition {
    std::vector<int> parts;
    int n = 0;

    // validates ordering/nonnegativity and computes n
    static Partition of(std::vector<int> parts);
    // sorts a composition's entries into a partition of the same content
    static Partition sorted_from(std::vector<int> entries);

    int theta() const { return static_cast<int>(parts.size()); }
    int nonzero_parts() const;
    std::string to_string() const;  // "4+4+2" style, zeros dropped

    bool operator==(const Partition& o) const { return parts == o.parts; }
};

struct Composition {
    std::vector<int> entries;
    int n = 0;

    static Composition of(std::vector<int> entries);
    int theta() const { return static_cast<int>(entries.size()); }
};

// Exact nonnegative count plus a log-domain shadow. The shadow tracks the
// exact value to ~1e-15 whenever the count is nonzero.
struct BigCount {
    BigInt exact;
    double log_value;

    static BigCount from_bigint(BigInt v);
    static BigCount zero();
    double to_double() const { return exact.to_double(); }
    bool operator==(const BigCount& o) const { return exact == o.exact; }
};

// All partitions of n into at most theta parts, reverse-lexicographic
// ((n,0,...) first). Rejects n < 1 or theta < 2.
std::vector<Partition> enumerate_partitions(int n, int theta);
// Allocation-light variant for large sweeps; buf holds the current parts.
void for_each_partition(int n, int theta,
                        const std::function<void(const std::vector<int>&)>& fn);

// |K(lambda)|: number of distinct reorderings of the zero-padded parts.
BigCount rearrangement_count(const Partition& lambda);

// mu dominates lambda: prefix sums of mu >= prefix sums of lambda.
// Requires equal n and theta.
bool dominates(const Partition& mu, const Partition& lambda);

// Kostka number K_{mu,lambda}: semistandard fillings of shape mu with
// content lambda. Zero unless mu dominates lambda.
BigCount kostka(const Partition& mu, const Partition& lambda);

// Engine fast path; counts fit in uint64 for every size the engines visit
// (checked against the BigInt route in tests). shape/content are weakly
// decreasing, equal sums.
std::uint64_t kostka_u64(const std::vector<int>& shape, const std::vector<int>& content);

// n! / prod(lambda_j!)
BigCount multinomial(const Partition& lambda);

// Dimension of the S_n irreducible indexed by mu:
// d_mu = n!/(m_1! ... m_k!) * prod_{i<j} (m_i - m_j), m_i = mu_i + k - i,
// k = number of nonzero parts.
BigCount dimension(const Partition& mu);

// (beta/2) * [ sum_j mu_j (mu_j - 2j + 1)/n - (n-1) ]; the log-weight of the
// irrep mu in the partition function. <= 0, zero only for mu = (n).
double energy_exponent(const Partition& mu, double beta);

// log-domain helpers used in the hot loops (n can be large)
double log_factorial(int k);                                  // exact-table based
double log_dimension(const std::vector<int>& mu_parts, int n);
double log_multinomial(const std::vector<int>& parts, int n);
double log_rearrangement_count(const std::vector<int>& sorted_parts);
// number of semistandard tableaux of shape mu with entries in {1..theta}
// (GL_theta Weyl dimension formula), in log domain
double log_weyl_dimension(const std::vector<int>& mu_parts, int theta);
double energy_exponent_raw(const std::vector<int>& mu_parts, int n, double beta);

}  // namespace mfspin
