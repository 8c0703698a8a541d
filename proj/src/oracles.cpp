#include "tpsd/oracles.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace tpsd::oracle {

namespace {

Matrix conjugate_doubled(const DenseOperator& u, const Matrix& x) {
    const Matrix uu = kron(u.matrix(), u.matrix());
    return uu * x * uu.adjoint();
}

} // namespace

double man_swap_trace(const TensorFactorization& tf, const DenseOperator& u, int i, int j) {
    if (!u.is_unitary() || u.dim() != tf.dim()) throw ValidationError("man_swap_trace: expected a unitary on tf");
    const Matrix s_i = swap_pair(i, tf.dims()).matrix();
    const Matrix s_j = swap_pair(j, tf.dims()).matrix();
    const double d = static_cast<double>(tf.dim());
    const double ratio = static_cast<double>(tf.local_dim(j)) / tf.local_dim(i);
    const double tr = (conjugate_doubled(u, s_i) * s_j).trace().real();
    return 1.0 - ratio * tr / (d * d);
}

double operator_entanglement_swap_trace(const DenseOperator& u, int d1, int d2) {
    const TensorFactorization tf({d1, d2});
    if (!u.is_unitary() || u.dim() != tf.dim()) throw ValidationError("expected a unitary on C^d1 (x) C^d2");
    const Matrix s = swap_pair(0, tf.dims()).matrix();
    const double d = static_cast<double>(tf.dim());
    return 1.0 - (s * conjugate_doubled(u, s)).trace().real() / (d * d);
}

double entangling_power_swap_trace(const DenseOperator& u, int d1, int d2) {
    if (d1 > d2) throw ValidationError("entangling_power_swap_trace: requires d1 <= d2");
    const TensorFactorization tf({d1, d2});
    if (!u.is_unitary() || u.dim() != tf.dim()) throw ValidationError("expected a unitary on C^d1 (x) C^d2");
    const Matrix s1 = swap_pair(0, tf.dims()).matrix();
    const Matrix s2 = swap_pair(1, tf.dims()).matrix();
    const double d = static_cast<double>(tf.dim());
    const double t11 = (conjugate_doubled(u, s1) * s1).trace().real();
    const double t21 = (conjugate_doubled(u, s2) * s1).trace().real();
    const double norm = (1.0 + 1.0 / d2) / (1.0 - 1.0 / d1);
    return norm * (1.0 - (d * (d1 + d2) + t11 + t21) / (d * (1.0 + d1) * (1.0 + d2)));
}

double long_time_phi_resonance(const DenseOperator& h, const TensorFactorization& tf) {
    const Index d = tf.dim();
    if (d > kLimits.resonance_oracle_dim) throw SizeError("long_time_phi_resonance: dimension above oracle bound");
    if (tf.sites() == 1) return 0.0;
    const EigenSystem es = herm_eig(h);

    // pairs (m, n) sorted by gap E_m - E_n, then split into resonance groups
    std::vector<std::pair<double, Index>> gaps;
    gaps.reserve(static_cast<std::size_t>(d * d));
    for (Index n = 0; n < d; ++n)
        for (Index m = 0; m < d; ++m) gaps.emplace_back(es.values(m) - es.values(n), n * d + m);
    std::sort(gaps.begin(), gaps.end());
    std::vector<std::size_t> group_start{0};
    for (std::size_t k = 1; k < gaps.size(); ++k)
        if (gaps[k].first - gaps[k - 1].first > kTol.gap_grouping) group_start.push_back(k);
    group_start.push_back(gaps.size());

    std::vector<std::vector<Matrix>> rotated(static_cast<std::size_t>(tf.sites()));
    for (int s = 0; s < tf.sites(); ++s)
        for (const Matrix& p : local_basis(tf, s).elements)
            rotated[static_cast<std::size_t>(s)].push_back(es.vectors.adjoint() * p * es.vectors);

    // Tr(U_t A U_t^dagger B) = sum_mn exp(i (E_m - E_n) t) A_mn B_nm in the energy basis
    double averaged = 0.0;
    for (const auto& as : rotated) {
        for (const Matrix& a : as) {
            for (const auto& bs : rotated) {
                for (const Matrix& b : bs) {
                    for (std::size_t g = 0; g + 1 < group_start.size(); ++g) {
                        cplx sum = 0.0;
                        for (std::size_t k = group_start[g]; k < group_start[g + 1]; ++k) {
                            const Index n = gaps[k].second / d;
                            const Index m = gaps[k].second % d;
                            sum += a(m, n) * b(n, m);
                        }
                        averaged += std::norm(sum);
                    }
                }
            }
        }
    }
    return 1.0 - averaged / static_cast<double>(tf.local_operator_dim());
}

} // namespace tpsd::oracle
