#pragma once

// Small-dimension reference computations that share no code path with the production routes.

#include "tpsd/linalg.hpp"
#include "tpsd/structure.hpp"

namespace tpsd::oracle {

/// 1 - (1/d^2)(q_j/q_i) Tr( U^{(x)2} S_ii' U^{dagger (x)2} S_jj' ) on the doubled space.
double man_swap_trace(const TensorFactorization& tf, const DenseOperator& u, int i, int j);

/// 1 - (1/d^2) Tr( S_11' U^{(x)2} S_11' U^{dagger (x)2} ) for the bipartition (d1, d2).
double operator_entanglement_swap_trace(const DenseOperator& u, int d1, int d2);

/// Normalized entangling power from the two doubled-space swap traces, d1 <= d2.
double entangling_power_swap_trace(const DenseOperator& u, int d1, int d2);

/// Infinite-time average of Phi(exp(iHt)) for a complete factorization, keeping only
/// energy-gap-resonant terms (gaps grouped within the configured tolerance).
double long_time_phi_resonance(const DenseOperator& h, const TensorFactorization& tf);

} // namespace tpsd::oracle
