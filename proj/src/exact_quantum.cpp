#include "mfspin/exact_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mfspin/eigen_sym.hpp"

namespace mfspin {

namespace {

long long pow_ll(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_dim_guard(int theta, int n) {
    if (theta < 2) throw std::domain_error("exact_quantum: theta must be >= 2");
    if (n < 1) throw std::domain_error("exact_quantum: n must be >= 1");
    long long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= theta;
        if (dim > (1LL << 16))
            throw std::domain_error("exact_quantum: theta^n exceeds the 2^16 dimension guard");
    }
}

}  // namespace

DenseOperator DenseOperator::zero(int dim) {
    DenseOperator m;
    m.dim = dim;
    m.a.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    return m;
}

DenseOperator DenseOperator::identity(int dim) {
    DenseOperator m = zero(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
    if (dim != o.dim) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r = zero(dim);
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            std::complex<double> aik = at(i, k);
            if (aik == std::complex<double>{0.0, 0.0}) continue;
            const std::complex<double>* orow = &o.a[static_cast<std::size_t>(k) * dim];
            std::complex<double>* rrow = &r.a[static_cast<std::size_t>(i) * dim];
            for (int j = 0; j < dim; ++j) rrow[j] += aik * orow[j];
        }
    }
    return r;
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
    if (dim != o.dim) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
    if (dim != o.dim) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

DenseOperator DenseOperator::scaled(std::complex<double> s) const {
    DenseOperator r = *this;
    for (auto& v : r.a) v *= s;
    return r;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator r = zero(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

DenseOperator DenseOperator::kron(const DenseOperator& x, const DenseOperator& y) {
    DenseOperator r = zero(x.dim * y.dim);
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) {
            std::complex<double> xij = x.at(i, j);
            if (xij == std::complex<double>{0.0, 0.0}) continue;
            for (int k = 0; k < y.dim; ++k)
                for (int l = 0; l < y.dim; ++l)
                    r.at(i * y.dim + k, j * y.dim + l) = xij * y.at(k, l);
        }
    return r;
}

std::complex<double> DenseOperator::trace() const {
    std::complex<double> t{0.0, 0.0};
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

double DenseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

double DenseOperator::max_imag_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::fabs(v.imag()));
    return m;
}

double DenseOperator::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

std::vector<double> DenseOperator::real_matrix(double imag_tol) const {
    if (max_imag_abs() > imag_tol)
        throw std::logic_error("DenseOperator: imaginary parts exceed tolerance");
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].real();
    return r;
}

std::array<DenseOperator, 3> spin_operators(int two_s) {
    if (two_s < 0) throw std::domain_error("spin_operators: 2S must be >= 0");
    const int dim = two_s + 1;
    const double S = 0.5 * two_s;
    DenseOperator s3 = DenseOperator::zero(dim);
    DenseOperator sp = DenseOperator::zero(dim);  // raising
    for (int i = 0; i < dim; ++i) {
        double m = S - i;  // basis ordered S, S-1, ..., -S
        s3.at(i, i) = m;
        if (i > 0) {
            // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>
            double amp = std::sqrt(S * (S + 1.0) - m * (m + 1.0));
            sp.at(i - 1, i) = amp;
        }
    }
    DenseOperator sm = sp.adjoint();
    DenseOperator s1 = (sp + sm).scaled(0.5);
    DenseOperator s2 = (sp - sm).scaled(std::complex<double>{0.0, -0.5});
    return {s1, s2, s3};
}

DenseOperator transposition_matrix(int theta, int n, int x, int y) {
    check_dim_guard(theta, n);
    if (!(1 <= x && x < y && y <= n))
        throw std::domain_error("transposition_matrix: need 1 <= x < y <= n");
    const long long dim = pow_ll(theta, n);
    DenseOperator t = DenseOperator::zero(static_cast<int>(dim));
    // vertex 1 is the slowest-varying digit
    const long long px = pow_ll(theta, n - x);
    const long long py = pow_ll(theta, n - y);
    for (long long idx = 0; idx < dim; ++idx) {
        int ax = static_cast<int>((idx / px) % theta);
        int ay = static_cast<int>((idx / py) % theta);
        long long swapped = idx + (ay - ax) * px + (ax - ay) * py;
        t.at(static_cast<int>(swapped), static_cast<int>(idx)) = 1.0;
    }
    return t;
}

DenseOperator hamiltonian(int n, int theta) {
    check_dim_guard(theta, n);
    const long long dim = pow_ll(theta, n);
    DenseOperator h = DenseOperator::zero(static_cast<int>(dim));
    std::vector<int> digits(n);
    for (long long idx = 0; idx < dim; ++idx) {
        long long rest = idx;
        for (int v = n - 1; v >= 0; --v) {
            digits[v] = static_cast<int>(rest % theta);
            rest /= theta;
        }
        int discordant = 0;
        for (int xv = 0; xv < n; ++xv) {
            for (int yv = xv + 1; yv < n; ++yv) {
                if (digits[xv] == digits[yv]) continue;
                ++discordant;
                long long px = pow_ll(theta, n - 1 - xv);
                long long py = pow_ll(theta, n - 1 - yv);
                long long swapped =
                    idx + static_cast<long long>(digits[yv] - digits[xv]) * px +
                    static_cast<long long>(digits[xv] - digits[yv]) * py;
                h.at(static_cast<int>(swapped), static_cast<int>(idx)) -= 1.0;
            }
        }
        h.at(static_cast<int>(idx), static_cast<int>(idx)) += discordant;
    }
    return h;
}

std::vector<double> hamiltonian_spectrum(int n, int theta) {
    check_dim_guard(theta, n);
    const long long dim = pow_ll(theta, n);
    // bucket basis states by colour content
    std::map<std::vector<int>, std::vector<long long>> blocks;
    std::vector<int> digits(n);
    for (long long idx = 0; idx < dim; ++idx) {
        long long rest = idx;
        std::vector<int> content(theta, 0);
        for (int v = n - 1; v >= 0; --v) {
            ++content[rest % theta];
            rest /= theta;
        }
        blocks[content].push_back(idx);
    }
    std::vector<double> spectrum;
    spectrum.reserve(static_cast<std::size_t>(dim));
    for (const auto& [content, members] : blocks) {
        const int m = static_cast<int>(members.size());
        std::map<long long, int> local;
        for (int i = 0; i < m; ++i) local[members[i]] = i;
        std::vector<double> block(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) {
            long long idx = members[i];
            long long rest = idx;
            for (int v = n - 1; v >= 0; --v) {
                digits[v] = static_cast<int>(rest % theta);
                rest /= theta;
            }
            int discordant = 0;
            for (int xv = 0; xv < n; ++xv) {
                for (int yv = xv + 1; yv < n; ++yv) {
                    if (digits[xv] == digits[yv]) continue;
                    ++discordant;
                    long long px = pow_ll(theta, n - 1 - xv);
                    long long py = pow_ll(theta, n - 1 - yv);
                    long long swapped =
                        idx + static_cast<long long>(digits[yv] - digits[xv]) * px +
                        static_cast<long long>(digits[xv] - digits[yv]) * py;
                    block[static_cast<std::size_t>(local.at(swapped)) * m + i] -= 1.0;
                }
            }
            block[static_cast<std::size_t>(i) * m + i] += discordant;
        }
        auto eig = symmetric_eigenvalues(std::move(block), m);
        spectrum.insert(spectrum.end(), eig.begin(), eig.end());
    }
    std::sort(spectrum.begin(), spectrum.end());
    return spectrum;
}

LogValue trace_exp_from_spectrum(const std::vector<double>& spectrum, int n, double beta) {
    LogSum acc;
    for (double eps : spectrum) acc.add_log(-(beta / n) * eps);
    return acc.value();
}

LogValue trace_exp(int n, int theta, double beta) {
    return trace_exp_from_spectrum(hamiltonian_spectrum(n, theta), n, beta);
}

SpinPolyCoefficients swap_poly_coefficients(int two_s) {
    if (two_s < 0 || two_s > 12)
        throw std::domain_error("swap_poly_coefficients: need 0 <= 2S <= 12");
    const int m = two_s + 1;
    // nodes x_J = J(J+1)/2 - S(S+1) = (2J(J+1) - 2S(2S+2)/2)/4
    std::vector<Rational> nodes(m);
    for (int J = 0; J < m; ++J) {
        nodes[J] = Rational(BigInt(2LL * J * (J + 1) - static_cast<long long>(two_s) * (two_s + 2)),
                            BigInt(4));
    }
    // augmented Vandermonde system, exact Gaussian elimination
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(m + 1));
    for (int J = 0; J < m; ++J) {
        Rational pw(1);
        for (int k = 0; k < m; ++k) {
            aug[J][k] = pw;
            pw *= nodes[J];
        }
        aug[J][m] = Rational(((two_s - J) % 2 == 0) ? 1 : -1);
    }
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r) {
            if (!aug[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw std::logic_error("swap_poly_coefficients: singular Vandermonde");
        std::swap(aug[col], aug[pivot]);
        for (int r = 0; r < m; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            Rational factor = aug[r][col] / aug[col][col];
            for (int c = col; c <= m; ++c) aug[r][c] -= factor * aug[col][c];
        }
    }
    SpinPolyCoefficients out;
    out.two_s = two_s;
    out.a.resize(m);
    for (int k = 0; k < m; ++k) out.a[k] = aug[k][m] / aug[k][k];
    return out;
}

double verify_swap_poly(int two_s) {
    if (two_s < 0 || two_s > 6)
        throw std::domain_error("verify_swap_poly: dense verification limited to 2S <= 6");
    const auto coeffs = swap_poly_coefficients(two_s);
    const auto spins = spin_operators(two_s);
    const int d = two_s + 1;
    DenseOperator dot = DenseOperator::zero(d * d);
    for (const auto& s : spins) dot = dot + DenseOperator::kron(s, s);
    if (dot.max_imag_abs() > 1e-14)
        throw std::logic_error("verify_swap_poly: S_x.S_y has nonreal entries");
    if (dot.hermiticity_defect() > 1e-12)
        throw std::logic_error("verify_swap_poly: S_x.S_y is not Hermitian");

    DenseOperator poly = DenseOperator::zero(d * d);
    DenseOperator power = DenseOperator::identity(d * d);
    for (int k = 0; k <= two_s; ++k) {
        poly = poly + power.scaled(coeffs.a[k].to_double());
        power = power * dot;
    }
    // swap on the two-site space: |a,b> -> |b,a>
    DenseOperator swap = DenseOperator::zero(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) swap.at(b * d + a, a * d + b) = 1.0;
    return (poly - swap).max_abs();
}

}  // namespace mfspin
