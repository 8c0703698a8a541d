#pragma once

#include "tpsd/linalg.hpp"
#include "tpsd/structure.hpp"

#include <cstdint>
#include <vector>

namespace tpsd {

/// Counter-based generator: output k of stream s is splitmix64(key(seed, s) + k * golden).
/// Streams are forked by index, so sample i of an estimator always sees the same numbers
/// regardless of scheduling.
class SeededGenerator {
public:
    static constexpr const char* algorithm = "splitmix64-counter";

    explicit SeededGenerator(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t next_u64();
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double normal();
    cplx complex_normal();                 // E|z|^2 = 1

    SeededGenerator fork(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Mean and standard error (unbiased sample variance).
Estimate summarize(const std::vector<double>& values);

DenseOperator haar_unitary(Index d, SeededGenerator& gen);
Vector haar_state(Index q, SeededGenerator& gen);

/// Haar average of Phi: 1 - dim(W/C1) / (d^2 - 1).
double typical_phi(const AlgebraSet& aset);

/// Haar average for M equal clusters of a d-dimensional system.
double typical_phi_clustered(std::int64_t d, int clusters);

struct QubitTypical {
    double value = 0.0;      // for the requested cluster sizes
    double max_value = 0.0;  // 1 - 3N / (2^{2N} - 1)
    std::vector<int> argmax; // (1, ..., 1)
};

/// Haar average for qubit clusters of sizes n_i (q_i = 2^{n_i}).
QubitTypical typical_phi_qubit(const std::vector<int>& cluster_qubits);

} // namespace tpsd
