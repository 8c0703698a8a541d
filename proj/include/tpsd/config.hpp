#pragma once

#include <cstdint>

namespace tpsd {

/// Numerical tolerances and size limits shared by the library and its tests.
struct Tolerances {
    double hermitian_construction = 1e-12; // max |A - A^dagger| entrywise
    double unitary_construction = 1e-10;   // max |A A^dagger - 1| entrywise
    double comparison = 1e-9;              // generic equality of derived quantities
    double density_matrix = 1e-10;         // trace / positivity slack for density inputs
    double gap_grouping = 1e-10;           // energy-gap resonance grouping
    double convergence = 1e-2;             // half-window long-time average agreement
};

struct Limits {
    std::int64_t max_dim = 65536;             // 4^8, for kron and general dense builders
    std::int64_t projection_oracle_dim = 64;  // superoperator route builds d^2 x d^2 matrices
    std::int64_t max_doubled_dim = 4096;      // swap operators on H (x) H
    std::int64_t max_hamiltonian_dim = 4096;  // dense many-body Hamiltonians and their eigensystems
    int max_tjz_sites = 7;
    std::int64_t resonance_oracle_dim = 256;
};

inline constexpr Tolerances kTol{};
inline constexpr Limits kLimits{};

} // namespace tpsd
