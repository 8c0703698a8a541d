#pragma once

#include "tpsd/linalg.hpp"
#include "tpsd/structure.hpp"

#include <string>

namespace tpsd {

enum class PhiRoute { correlator, man, projection };

const char* to_string(PhiRoute route);

struct PhiResult {
    double value = 0.0;
    PhiRoute route = PhiRoute::correlator;
    /// ||C_ij||^2 over member algebras (rows: evolved algebra i); empty when not applicable.
    RealMatrix correlator_norms;
    std::string note;
};

/// [C_ij]_ab = <U P_i^a U^dagger, P_j^b>, via one conjugation per P_i^a and a partial trace to site j.
RealMatrix correlator_matrix(const TensorFactorization& tf, const DenseOperator& u, int i, int j);

/// ||C_ij||^2 from the reshuffled Gram matrix of U; no d x d conjugations.
double correlator_norm_sq(const TensorFactorization& tf, const Matrix& u, int i, int j);

/// ||C_ij||^2 for all (i, j) in `sites`.
RealMatrix correlator_norms(const TensorFactorization& tf, const Matrix& u, std::span<const int> sites);

/// Phi = 1 - sum_ij ||C_ij||^2 / dim(W/C1).
PhiResult phi_correlator(const AlgebraSet& aset, const DenseOperator& u);

/// Phi assembled from the mutual averaged non-commutativities S(U(A_i):A_j').
PhiResult phi_man(const AlgebraSet& aset, const DenseOperator& u);

/// ||P_W - P_U(W)||_HS^2 / (2 dim(W/C1)) with explicit d^2 x d^2 superoperator projectors.
PhiResult phi_projection(const AlgebraSet& aset, const DenseOperator& u);

/// Phi-distance for algebra sets that are not a complete TPS.
PhiResult generalized_phi(const AlgebraSet& aset, const DenseOperator& u);

/// C_B(U) = 1 - (1/d) sum_ij |<i|U|j>|^4 in the basis given by the columns of `basis`.
double coherence_generating_power(const Matrix& u, const Matrix& basis);

/// Per (i, j): max deviation of sum_{a_i', b_j'} U_a^b conj(U_a'^b') from (d/(q_i q_j)) delta delta,
/// with U expressed in `basis`.
RealMatrix check_max_condition(const DenseOperator& u, const TensorFactorization& tf, const Matrix& basis);

/// U|i,j> = |i+j, i+2j> (mod q), q an odd prime.
DenseOperator two_unitary_example(int q);

struct TwoUnitaryResidual {
    double reshuffle = 0.0;         // sum over k2, l2 (first contraction)
    double partial_transpose = 0.0; // sum over k1, l2 (second contraction)
    double max() const { return reshuffle > partial_transpose ? reshuffle : partial_transpose; }
};

TwoUnitaryResidual is_two_unitary(const Matrix& u, int q);

} // namespace tpsd
