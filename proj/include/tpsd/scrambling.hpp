#pragma once

#include "tpsd/linalg.hpp"
#include "tpsd/randomness.hpp"
#include "tpsd/structure.hpp"

namespace tpsd {

/// S(U(A_i) : A_j'), with A_j' the commutant of the algebra on site j.
struct ManValue {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

/// MAN from ||C_ij||^2: 1 - (1 + ||C_ij||^2) / q_i^2.
double man_from_correlator_norm(int q_i, double norm_sq);

ManValue man(const TensorFactorization& tf, const DenseOperator& u, int i, int j);

/// (1/2d) E ||[X, U Y U^dagger]||^2 with X Haar on site i and Y Haar on every site except j.
Estimate man_commutator_mc(const TensorFactorization& tf, const DenseOperator& u, int i, int j,
                           int samples, const SeededGenerator& gen);

/// 1 - sum_k s_k^4 / d^2 over the operator-Schmidt coefficients of U on C^{d1} (x) C^{d2}.
double operator_entanglement(const Matrix& u, int d1, int d2);
double operator_entanglement(const DenseOperator& u, int d1, int d2);

/// Normalized entangling power from the two bipartite MAN values.
/// s12 = S(U(A_1) : A_2), s11 = S(U(A_1) : A_1), requires d1 <= d2.
double entangling_power_from_man(int d1, int d2, double s12, double s11);

/// Phi for the algebra L(H_1) (x) 1 from the same two values.
double phi_bipartite_from_man(int d1, int d2, double s12, double s11);

double entangling_power(const DenseOperator& u, int d1, int d2);

/// Average linear entropy of Tr_2 U|psi_1 psi_2> over Haar product states, normalized like
/// entangling_power.
Estimate entangling_power_mc(const DenseOperator& u, int d1, int d2, int samples,
                             const SeededGenerator& gen);

/// Tr_{not j}( U (rho (x) (q_i/d) 1) U^dagger ).
Matrix reduced_map(const TensorFactorization& tf, const DenseOperator& u, int i, int j, const Matrix& rho);

double linear_entropy(const Matrix& rho);

/// Phi from averaged linear entropies of the reduced maps over Haar pure inputs; equal q_i only.
Estimate phi_entropy_mc(const TensorFactorization& tf, const DenseOperator& u, int samples,
                        const SeededGenerator& gen);

/// H minus its projection onto A_i + A_i'.
Matrix interaction_part(const Matrix& h, const TensorFactorization& tf, int i);

/// ||interaction_part(H)||_2 / sqrt(d).
double scrambling_rate(const DenseOperator& h, const TensorFactorization& tf, int i);

/// Phi(t) = coefficient * t^2 + O(t^4).
double short_time_coefficient(const DenseOperator& h, const TensorFactorization& tf);

} // namespace tpsd
