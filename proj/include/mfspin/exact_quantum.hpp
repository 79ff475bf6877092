#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mfspin/logspace.hpp"
#include "mfspin/rational.hpp"

namespace mfspin {

// Dense complex operator on a tensor space; complex storage throughout with
// reality asserted where the physics demands it (S^2 is imaginary, products
// like S_x.S_y are real).
struct DenseOperator {
    int dim = 0;
    std::vector<std::complex<double>> a;  // row-major

    static DenseOperator zero(int dim);
    static DenseOperator identity(int dim);

    std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const std::complex<double>& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * dim + j];
    }

    DenseOperator operator*(const DenseOperator& o) const;
    DenseOperator operator+(const DenseOperator& o) const;
    DenseOperator operator-(const DenseOperator& o) const;
    DenseOperator scaled(std::complex<double> s) const;
    DenseOperator adjoint() const;
    static DenseOperator kron(const DenseOperator& x, const DenseOperator& y);

    std::complex<double> trace() const;
    double max_abs() const;
    double max_imag_abs() const;
    double hermiticity_defect() const;  // max |A - A^dagger| entry

    // requires max_imag_abs() small; extracts the real part
    std::vector<double> real_matrix(double imag_tol) const;
};

// Spin S passed as 2S (a nonnegative integer).

// The three spin-S matrices in the S^3 eigenbasis, S^3 diagonal with entries
// S, S-1, ..., -S.
std::array<DenseOperator, 3> spin_operators(int two_s);

// Permutation operator swapping tensor factors x and y (1-based vertices) on
// the theta^n-dimensional space; vertex 1 is the slowest-varying index.
// Guards theta^n <= 2^16.
DenseOperator transposition_matrix(int theta, int n, int x, int y);

// H_n = -sum_{x<y} (T_xy - 1), dense.
DenseOperator hamiltonian(int n, int theta);

// Full spectrum of H_n. Computed per colour-content block: H_n preserves the
// multiset of tensor-factor values, so the basis splits into invariant
// blocks that are eigensolved independently; the union is the exact dense
// spectrum (asserted against the dense route in the tests). Sorted ascending.
std::vector<double> hamiltonian_spectrum(int n, int theta);

// tr exp(-(beta/n) H_n) over the full spectrum, in log domain.
LogValue trace_exp(int n, int theta, double beta);
LogValue trace_exp_from_spectrum(const std::vector<double>& spectrum, int n, double beta);

// Swap-operator polynomial: exact rational a_k with
// T_xy = sum_k a_k (S_x . S_y)^k on the two-site space.
struct SpinPolyCoefficients {
    int two_s = 0;
    std::vector<Rational> a;  // length 2S+1
};

// Exact Vandermonde solve with nodes x_J = J(J+1)/2 - S(S+1) and right side
// (-1)^{2S-J}. Guards 2S <= 12.
SpinPolyCoefficients swap_poly_coefficients(int two_s);

// Max-abs entry of  sum_k a_k (S_x.S_y)^k  -  T_xy  on the (2S+1)^2 space.
// Guards 2S <= 6.
double verify_swap_poly(int two_s);

}  // namespace mfspin
