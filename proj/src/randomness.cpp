#include "tpsd/randomness.hpp"

#include "tpsd/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace tpsd {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(splitmix64(seed ^ splitmix64(stream + kGolden))) {}

std::uint64_t SeededGenerator::next_u64() {
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
}

double SeededGenerator::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededGenerator::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SeededGenerator::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

cplx SeededGenerator::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

SeededGenerator SeededGenerator::fork(std::uint64_t index) const {
    return SeededGenerator(seed_, splitmix64(stream_ * kGolden + index + 1));
}

Estimate summarize(const std::vector<double>& values) {
    Estimate e;
    e.samples = values.size();
    if (values.empty()) return e;
    const double n = static_cast<double>(values.size());
    e.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

DenseOperator haar_unitary(Index d, SeededGenerator& gen) {
    if (d < 1) throw ShapeError("haar_unitary: d must be >= 1");
    Matrix z(d, d);
    for (Index c = 0; c < d; ++c)
        for (Index r = 0; r < d; ++r) z(r, c) = gen.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Index k = 0; k < d; ++k) {
        const cplx diag = r(k, k);
        const double mag = std::abs(diag);
        q.col(k) *= mag > 0.0 ? diag / mag : cplx(1.0);
    }
    return DenseOperator::unitary(std::move(q));
}

Vector haar_state(Index q, SeededGenerator& gen) {
    if (q < 1) throw ShapeError("haar_state: q must be >= 1");
    Vector v(q);
    for (Index k = 0; k < q; ++k) v(k) = gen.complex_normal();
    return v / v.norm();
}

double typical_phi(const AlgebraSet& aset) {
    const auto* full = std::get_if<FullTps>(&aset.kind());
    if (!full) throw UnsupportedError("typical_phi: requires a complete tensor factorization");
    if (full->tf.sites() == 1) return 0.0;
    const double d = static_cast<double>(full->tf.dim());
    return 1.0 - static_cast<double>(aset.traceless_dim()) / (d * d - 1.0);
}

double typical_phi_clustered(std::int64_t d, int clusters) {
    if (d < 2 || clusters < 1) throw InvalidClusteringError("typical_phi_clustered: need d >= 2, M >= 1");
    const auto q = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(d), 1.0 / clusters)));
    std::int64_t power = 1;
    for (int k = 0; k < clusters; ++k) power *= q;
    if (q < 2 || power != d) throw InvalidClusteringError("d^(1/M) is not an integer >= 2");
    const double dd = static_cast<double>(d);
    const double qq = static_cast<double>(q);
    return 1.0 - clusters * (qq * qq - 1.0) / (dd * dd - 1.0);
}

QubitTypical typical_phi_qubit(const std::vector<int>& cluster_qubits) {
    if (cluster_qubits.empty()) throw InvalidClusteringError("typical_phi_qubit: no clusters");
    int total = 0;
    double local = 0.0;
    for (int n : cluster_qubits) {
        if (n < 1) throw InvalidClusteringError("typical_phi_qubit: cluster sizes must be >= 1");
        total += n;
        local += std::ldexp(1.0, 2 * n) - 1.0;
    }
    const double all = std::ldexp(1.0, 2 * total) - 1.0;
    QubitTypical out;
    out.value = 1.0 - local / all;
    out.max_value = 1.0 - 3.0 * total / all;
    out.argmax.assign(static_cast<std::size_t>(total), 1);
    return out;
}

} // namespace tpsd
