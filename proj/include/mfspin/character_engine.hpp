#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mfspin/logspace.hpp"
#include "mfspin/partitions.hpp"
#include "mfspin/rational.hpp"

namespace mfspin {

// Class function on S_n: weight per cycle type (lengths sorted decreasing).
using ClassFunction = std::map<std::vector<int>, double>;
using RationalClassFunction = std::map<std::vector<int>, Rational>;

// Exact finite-n partition functions through the character decomposition.
//
// Two algebraically identical routes are kept:
//  * pair route    Z = sum_lambda |K(lambda)| sum_{mu >= lambda} d_mu K_{mu lambda} e^{E(mu)}
//  * single route  Z = sum_mu d_mu * ssyt(mu, theta) * e^{E(mu)}
// where ssyt(mu,theta) = sum_lambda K_{mu lambda}|K(lambda)| counts all
// semistandard fillings of mu with entries <= theta. The single route is
// O(#partitions) and carries the large-n sweeps where the quadratic pair
// table would not fit the time budget; both routes are cross-checked in the
// test suites and against the dense quantum trace.
class CharacterEngine {
public:
    // pair_limit: build the (lambda, mu) Kostka table when the estimated
    // number of dominance pairs stays below this bound.
    CharacterEngine(int n, int theta, std::size_t pair_limit = 20000);

    int n() const { return n_; }
    int theta() const { return theta_; }
    bool pair_table_built() const { return pair_table_.has_value(); }
    std::size_t partition_count() const { return count_; }
    std::vector<int> partition_at(std::size_t i) const;

    double log_z(double beta) const;            // route chosen by size
    double log_z_pairsum(double beta) const;    // forces the pair route
    double log_z_collapsed(double beta) const;  // forces the single route
    double log_z_field(double beta, double h) const;  // always pair route
    double free_energy_density(double beta, double h) const;

    // log G_n(lambda) = log sum_{mu >= lambda} d_mu K_{mu lambda} e^{E(mu)}
    double log_g_weight(const Partition& lambda, double beta) const;

    struct LambdaRow {
        std::vector<int> lambda;
        double log_g;
        double log_rearrangements;
    };
    std::vector<LambdaRow> lambda_rows(double beta) const;

private:
    int n_, theta_;
    std::size_t count_ = 0;
    std::vector<int> parts_flat_;           // reverse-lex, zero-padded, theta ints each
    std::vector<double> log_dim_;           // log d_mu
    std::vector<double> exponent_coeff_;    // E(mu,beta) = beta * coeff
    std::vector<double> log_weyl_;          // log ssyt(mu, theta)
    std::vector<double> log_kcount_;        // log |K(lambda)|

    struct PairRow {
        std::vector<int> mu_index;
        std::vector<double> log_kostka;
    };
    mutable std::optional<std::vector<PairRow>> pair_table_;

    const int* part(std::size_t i) const { return &parts_flat_[i * theta_]; }
    void build_pair_table() const;
    PairRow row_for(const int* lambda) const;
    double log_g_from_row(const PairRow& row, double beta) const;
};

// One-shot conveniences (construct an engine per call).
LogValue z_exact(int n, int theta, double beta);
LogValue z_field_exact(int n, int theta, double beta, double h);
double free_energy_density(int n, int theta, double beta, double h);
LogValue g_weight(const Partition& lambda, double beta);

// Monochromatic-colouring identity gap |LHS - RHS| by exhaustive enumeration
// (n <= 8). LHS runs over every permutation; RHS over Young subgroups.
double colouring_identity_gap(int n, int theta, const std::vector<double>& p,
                              const ClassFunction& f);
// Exact-rational variant; the returned gap is identically zero when the
// identity holds.
Rational colouring_identity_gap_exact(int n, int theta, const std::vector<Rational>& p,
                                      const RationalClassFunction& f);

}  // namespace mfspin
