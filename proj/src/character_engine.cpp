#include "mfspin/character_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfspin {

namespace {

bool dominates_raw(const int* mu, const int* la, int theta) {
    long long pm = 0, pl = 0;
    for (int i = 0; i < theta; ++i) {
        pm += mu[i];
        pl += la[i];
        if (pm < pl) return false;
    }
    return true;
}

double exponent_coefficient(const std::vector<int>& mu, int n) {
    double s = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        double mj = mu[j];
        s += mj * (mj - 2.0 * (static_cast<double>(j) + 1.0) + 1.0);
    }
    return 0.5 * (s / n - (n - 1.0));
}

}  // namespace

CharacterEngine::CharacterEngine(int n, int theta, std::size_t pair_limit)
    : n_(n), theta_(theta) {
    if (n < 1) throw std::domain_error("CharacterEngine: n must be >= 1");
    if (theta < 2) throw std::domain_error("CharacterEngine: theta must be >= 2");
    for_each_partition(n, theta, [&](const std::vector<int>& p) {
        parts_flat_.insert(parts_flat_.end(), p.begin(), p.end());
        log_dim_.push_back(log_dimension(p, n_));
        exponent_coeff_.push_back(exponent_coefficient(p, n_));
        log_weyl_.push_back(log_weyl_dimension(p, theta_));
        log_kcount_.push_back(log_rearrangement_count(p));
    });
    count_ = log_dim_.size();
    if (count_ * (count_ + 1) / 2 <= pair_limit) build_pair_table();
}

std::vector<int> CharacterEngine::partition_at(std::size_t i) const {
    return std::vector<int>(part(i), part(i) + theta_);
}

void CharacterEngine::build_pair_table() const {
    if (pair_table_) return;
    std::vector<PairRow> table(count_);
    for (std::size_t li = 0; li < count_; ++li) table[li] = row_for(part(li));
    pair_table_ = std::move(table);
}

CharacterEngine::PairRow CharacterEngine::row_for(const int* lambda) const {
    PairRow row;
    std::vector<int> mu_vec(theta_), la_vec(lambda, lambda + theta_);
    for (std::size_t mi = 0; mi < count_; ++mi) {
        if (!dominates_raw(part(mi), lambda, theta_)) continue;
        mu_vec.assign(part(mi), part(mi) + theta_);
        std::uint64_t k = kostka_u64(mu_vec, la_vec);
        if (k == 0) continue;
        if (theta_ == 2 && k != 1)
            throw std::logic_error("CharacterEngine: theta=2 Kostka number differs from 1");
        row.mu_index.push_back(static_cast<int>(mi));
        row.log_kostka.push_back(std::log(static_cast<double>(k)));
    }
    return row;
}

double CharacterEngine::log_g_from_row(const PairRow& row, double beta) const {
    LogSum acc;
    for (std::size_t i = 0; i < row.mu_index.size(); ++i) {
        const int mi = row.mu_index[i];
        acc.add_log(log_dim_[mi] + row.log_kostka[i] + beta * exponent_coeff_[mi]);
    }
    return acc.log();
}

double CharacterEngine::log_g_weight(const Partition& lambda, double beta) const {
    if (lambda.n != n_) throw std::domain_error("log_g_weight: wrong n");
    std::vector<int> padded = lambda.parts;
    padded.resize(theta_, 0);
    if (pair_table_) {
        for (std::size_t li = 0; li < count_; ++li) {
            if (std::equal(padded.begin(), padded.end(), part(li)))
                return log_g_from_row((*pair_table_)[li], beta);
        }
    }
    return log_g_from_row(row_for(padded.data()), beta);
}

double CharacterEngine::log_z_pairsum(double beta) const {
    build_pair_table();
    LogSum acc;
    for (std::size_t li = 0; li < count_; ++li) {
        acc.add_log(log_kcount_[li] + log_g_from_row((*pair_table_)[li], beta));
    }
    return acc.log();
}

double CharacterEngine::log_z_collapsed(double beta) const {
    LogSum acc;
    for (std::size_t mi = 0; mi < count_; ++mi) {
        acc.add_log(log_dim_[mi] + log_weyl_[mi] + beta * exponent_coeff_[mi]);
    }
    return acc.log();
}

double CharacterEngine::log_z(double beta) const {
    return pair_table_ ? log_z_pairsum(beta) : log_z_collapsed(beta);
}

double CharacterEngine::log_z_field(double beta, double h) const {
    if (h == 0.0) return log_z(beta);
    build_pair_table();
    // sum_{kappa in K(lambda)} e^{h kappa_1} = (|K(lambda)|/theta) sum_j e^{h lambda_j}
    LogSum acc;
    for (std::size_t li = 0; li < count_; ++li) {
        LogSum front;
        for (int j = 0; j < theta_; ++j) front.add_log(h * part(li)[j]);
        double log_front = log_kcount_[li] - std::log(static_cast<double>(theta_)) + front.log();
        acc.add_log(log_front + log_g_from_row((*pair_table_)[li], beta));
    }
    return acc.log() - (h / theta_) * n_;
}

double CharacterEngine::free_energy_density(double beta, double h) const {
    return log_z_field(beta, h) / n_;
}

std::vector<CharacterEngine::LambdaRow> CharacterEngine::lambda_rows(double beta) const {
    build_pair_table();
    std::vector<LambdaRow> rows;
    rows.reserve(count_);
    for (std::size_t li = 0; li < count_; ++li) {
        rows.push_back(LambdaRow{partition_at(li), log_g_from_row((*pair_table_)[li], beta),
                                 log_kcount_[li]});
    }
    return rows;
}

LogValue z_exact(int n, int theta, double beta) {
    return LogValue::from_log(CharacterEngine(n, theta).log_z(beta));
}

LogValue z_field_exact(int n, int theta, double beta, double h) {
    return LogValue::from_log(CharacterEngine(n, theta).log_z_field(beta, h));
}

double free_energy_density(int n, int theta, double beta, double h) {
    return CharacterEngine(n, theta).free_energy_density(beta, h);
}

LogValue g_weight(const Partition& lambda, double beta) {
    CharacterEngine engine(lambda.n, lambda.theta());
    return LogValue::from_log(engine.log_g_weight(lambda, beta));
}

// ---------------------------------------------------------------------------
// Monochromatic-colouring identity
// ---------------------------------------------------------------------------

namespace {

std::vector<int> cycle_type_of(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    std::vector<int> lengths;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = sigma[j];
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<int>());
    return lengths;
}

template <typename Scalar>
Scalar lookup(const std::map<std::vector<int>, Scalar>& f, const std::vector<int>& type) {
    auto it = f.find(type);
    return it == f.end() ? Scalar(0) : it->second;
}

// shared skeleton for the double / rational variants
template <typename Scalar>
Scalar colouring_gap_impl(int n, int theta, const std::vector<Scalar>& p,
                          const std::map<std::vector<int>, Scalar>& f) {
    if (n < 1 || n > 8)
        throw std::domain_error("colouring_identity_gap: n must be in 1..8");
    if (static_cast<int>(p.size()) != theta)
        throw std::domain_error("colouring_identity_gap: p must have length theta");

    // p_i^len for len = 0..n
    std::vector<std::vector<Scalar>> pw(theta, std::vector<Scalar>(n + 1, Scalar(1)));
    for (int i = 0; i < theta; ++i)
        for (int len = 1; len <= n; ++len) pw[i][len] = pw[i][len - 1] * p[i];

    const auto lambdas = enumerate_partitions(n, theta);

    Scalar lhs(0);
    std::vector<Scalar> tsum(lambdas.size(), Scalar(0));  // sum_{sigma in T_lambda} f

    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        auto type = cycle_type_of(sigma);
        Scalar fval = lookup(f, type);
        bool fzero;
        if constexpr (std::is_same_v<Scalar, double>) {
            fzero = fval == 0.0;
        } else {
            fzero = fval.is_zero();
        }
        if (!fzero) {
            Scalar prod(1);
            for (int len : type) {
                Scalar s(0);
                for (int i = 0; i < theta; ++i) s += pw[i][len];
                prod *= s;
            }
            lhs += fval * prod;
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                // sigma in T_lambda iff each consecutive block maps to itself
                bool member = true;
                int start = 0;
                for (int b = 0; b < theta && member; ++b) {
                    int len = lambdas[li].parts[b];
                    for (int v = start; v < start + len; ++v) {
                        if (sigma[v] < start || sigma[v] >= start + len) {
                            member = false;
                            break;
                        }
                    }
                    start += len;
                }
                if (member) tsum[li] += fval;
            }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    Scalar rhs(0);
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const auto& la = lambdas[li];
        Scalar content_sum(0);
        std::vector<int> kappa = la.parts;
        std::sort(kappa.begin(), kappa.end());
        do {
            Scalar term(1);
            for (int i = 0; i < theta; ++i) term *= pw[i][kappa[i]];
            content_sum += term;
        } while (std::next_permutation(kappa.begin(), kappa.end()));
        Scalar multi;
        if constexpr (std::is_same_v<Scalar, double>) {
            multi = multinomial(la).to_double();
        } else {
            multi = Scalar(multinomial(la).exact, BigInt(1));
        }
        rhs += multi * content_sum * tsum[li];
    }

    Scalar gap = lhs - rhs;
    if constexpr (std::is_same_v<Scalar, double>) {
        return std::abs(gap);
    } else {
        return gap.abs();
    }
}

}  // namespace

double colouring_identity_gap(int n, int theta, const std::vector<double>& p,
                              const ClassFunction& f) {
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::domain_error("colouring_identity_gap: negative probability");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::domain_error("colouring_identity_gap: p must sum to 1");
    return colouring_gap_impl<double>(n, theta, p, f);
}

Rational colouring_identity_gap_exact(int n, int theta, const std::vector<Rational>& p,
                                      const RationalClassFunction& f) {
    Rational total(0);
    for (const auto& v : p) {
        if (v < Rational(0))
            throw std::domain_error("colouring_identity_gap: negative probability");
        total += v;
    }
    if (!(total == Rational(1)))
        throw std::domain_error("colouring_identity_gap: p must sum to 1");
    return colouring_gap_impl<Rational>(n, theta, p, f);
}

}  // namespace mfspin
