#include "tpsd/scrambling.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"
#include "tpsd/geometry.hpp"
#include "detail/indexing.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace tpsd {

namespace {

void check_site(const TensorFactorization& tf, int site) {
    if (site < 0 || site >= tf.sites()) throw ShapeError("site index out of range");
}

void check_unitary(const DenseOperator& u, Index d) {
    if (!u.is_unitary()) throw ValidationError("expected a unitary-tagged operator");
    if (u.dim() != d) throw ShapeError("unitary dimension does not match the factorization");
}

void check_bipartition(Index dim, int d1, int d2) {
    if (d1 < 1 || d2 < 1 || static_cast<Index>(d1) * d2 != dim)
        throw ShapeError("bipartition d1 * d2 does not match the operator dimension");
}

// U on C^{d1} (x) C^{d2} rewritten on C^{d2} (x) C^{d1}.
Matrix exchange_factors(const Matrix& u, int d1, int d2) {
    const Index d = u.rows();
    Matrix out(d, d);
    for (Index c = 0; c < d; ++c) {
        const Index c2 = (c % d2) * d1 + c / d2;
        for (Index r = 0; r < d; ++r) out((r % d2) * d1 + r / d2, c2) = u(r, c);
    }
    return out;
}

std::vector<int> complement(int sites, int skip) {
    std::vector<int> out;
    for (int s = 0; s < sites; ++s)
        if (s != skip) out.push_back(s);
    return out;
}

} // namespace

double man_from_correlator_norm(int q_i, double norm_sq) {
    const double q2 = static_cast<double>(q_i) * q_i;
    return 1.0 - (1.0 + norm_sq) / q2;
}

ManValue man(const TensorFactorization& tf, const DenseOperator& u, int i, int j) {
    check_site(tf, i);
    check_site(tf, j);
    const double norm_sq = correlator_matrix(tf, u, i, j).squaredNorm();
    return {i, j, man_from_correlator_norm(tf.local_dim(i), norm_sq)};
}

Estimate man_commutator_mc(const TensorFactorization& tf, const DenseOperator& u, int i, int j,
                           int samples, const SeededGenerator& gen) {
    check_site(tf, i);
    check_site(tf, j);
    check_unitary(u, tf.dim());
    if (samples < 2) throw ValidationError("man_commutator_mc: samples must be >= 2");
    const std::vector<int> rest = complement(tf.sites(), j);
    const Index rest_dim = tf.dim() / tf.local_dim(j);
    const int x_sites[] = {i};
    const double d = static_cast<double>(tf.dim());
    const Matrix& um = u.matrix();
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        SeededGenerator g = gen.fork(static_cast<std::uint64_t>(s));
        const Matrix x = embed_sites(haar_unitary(tf.local_dim(i), g).matrix(), x_sites, tf.dims());
        Matrix y = rest.empty() ? Matrix::Identity(tf.dim(), tf.dim())
                                : embed_sites(haar_unitary(rest_dim, g).matrix(), rest, tf.dims());
        const Matrix evolved = um * y * um.adjoint();
        values[static_cast<std::size_t>(s)] = (x * evolved - evolved * x).squaredNorm() / (2.0 * d);
    }
    return summarize(values);
}

double operator_entanglement(const Matrix& u, int d1, int d2) {
    check_bipartition(u.rows(), d1, d2);
    if (u.rows() != u.cols()) throw ShapeError("operator_entanglement: operator must be square");
    // R[(a1, b1), (a2, b2)] = U[(a1, a2), (b1, b2)]
    Matrix r(static_cast<Index>(d1) * d1, static_cast<Index>(d2) * d2);
    for (Index c = 0; c < u.cols(); ++c) {
        const Index b1 = c / d2, b2 = c % d2;
        for (Index row = 0; row < u.rows(); ++row) {
            const Index a1 = row / d2, a2 = row % d2;
            r(a1 * d1 + b1, a2 * d2 + b2) = u(row, c);
        }
    }
    const RealVector s = Eigen::BDCSVD<Matrix>(r).singularValues();
    const double d = static_cast<double>(u.rows());
    return 1.0 - s.array().pow(4).sum() / (d * d);
}

double operator_entanglement(const DenseOperator& u, int d1, int d2) {
    return operator_entanglement(u.matrix(), d1, d2);
}

double entangling_power_from_man(int d1, int d2, double s12, double s11) {
    if (d1 > d2) throw ValidationError("entangling_power_from_man: requires d1 <= d2");
    const double a = static_cast<double>(d1) * d1;
    const double d = static_cast<double>(d1) * d2;
    const double ep = a / (a - 1.0) * s12 + a / (a - 1.0) * (a / d) * s11 - a / d;
    return ep < 0.0 && ep > -kTol.comparison ? 0.0 : ep;
}

double phi_bipartite_from_man(int d1, int d2, double s12, double s11) {
    const double a = static_cast<double>(d1) * d1;
    const double b = static_cast<double>(d2) * d2;
    const double k = a + b - 2.0;
    const double phi = (a + b) / k * s12 + 2.0 * a / k * s11 - 2.0 * (a - 1.0) / k;
    // rounding noise around Phi = 0
    return phi < 0.0 && phi > -kTol.comparison ? 0.0 : phi;
}

double entangling_power(const DenseOperator& u, int d1, int d2) {
    check_bipartition(u.dim(), d1, d2);
    if (!u.is_unitary()) throw ValidationError("entangling_power: expected a unitary-tagged operator");
    if (d1 > d2) {
        return entangling_power(DenseOperator::unitary_unchecked(exchange_factors(u.matrix(), d1, d2)), d2, d1);
    }
    const TensorFactorization tf({d1, d2});
    const double s12 = man(tf, u, 0, 0).value;
    const double s11 = man(tf, u, 0, 1).value;
    return entangling_power_from_man(d1, d2, s12, s11);
}

Estimate entangling_power_mc(const DenseOperator& u, int d1, int d2, int samples,
                             const SeededGenerator& gen) {
    check_bipartition(u.dim(), d1, d2);
    if (samples < 2) throw ValidationError("entangling_power_mc: samples must be >= 2");
    if (d1 > d2) {
        return entangling_power_mc(DenseOperator::unitary_unchecked(exchange_factors(u.matrix(), d1, d2)),
                                   d2, d1, samples, gen);
    }
    const double norm = (1.0 + 1.0 / d2) / (1.0 - 1.0 / d1);
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        SeededGenerator g = gen.fork(static_cast<std::uint64_t>(s));
        const Vector psi1 = haar_state(d1, g);
        const Vector psi2 = haar_state(d2, g);
        Vector product(static_cast<Index>(d1) * d2);
        for (Index a = 0; a < d1; ++a) product.segment(a * d2, d2) = psi1(a) * psi2;
        const Vector out = u.matrix() * product;
        const Eigen::Map<const Matrix> m(out.data(), d2, d1); // column a holds block a
        const Matrix rho1 = m.transpose() * m.conjugate();
        values[static_cast<std::size_t>(s)] = norm * linear_entropy(rho1);
    }
    return summarize(values);
}

double linear_entropy(const Matrix& rho) { return 1.0 - (rho * rho).trace().real(); }

Matrix reduced_map(const TensorFactorization& tf, const DenseOperator& u, int i, int j, const Matrix& rho) {
    check_site(tf, i);
    check_site(tf, j);
    check_unitary(u, tf.dim());
    const int q = tf.local_dim(i);
    if (rho.rows() != q || rho.cols() != q) throw ShapeError("reduced_map: rho has the wrong dimension");
    const double tol = kTol.density_matrix;
    if (hermiticity_residual(rho) > tol) throw ValidationError("reduced_map: rho is not hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > tol) throw ValidationError("reduced_map: rho does not have unit trace");
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(herm, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (min_eig < -tol) throw ValidationError("reduced_map: rho is not positive semidefinite");
    const Matrix input = embed_local(rho, i, tf.dims()) * (static_cast<double>(q) / static_cast<double>(tf.dim()));
    const int keep[] = {j};
    return partial_trace(u.matrix() * input * u.matrix().adjoint(), tf.dims(), keep);
}

Estimate phi_entropy_mc(const TensorFactorization& tf, const DenseOperator& u, int samples,
                        const SeededGenerator& gen) {
    check_unitary(u, tf.dim());
    const int m = tf.sites();
    const int q = tf.local_dim(0);
    for (int s = 1; s < m; ++s)
        if (tf.local_dim(s) != q) throw UnsupportedError("phi_entropy_mc: local dimensions must be equal");
    if (samples < 2) throw ValidationError("phi_entropy_mc: samples must be >= 2");
    const double qd = static_cast<double>(q);
    const double input_scale = qd / static_cast<double>(tf.dim());
    const Matrix& um = u.matrix();
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        SeededGenerator g = gen.fork(static_cast<std::uint64_t>(s));
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            const Vector psi = haar_state(q, g);
            const Matrix rho = psi * psi.adjoint();
            const Matrix evolved = um * (embed_local(rho, i, tf.dims()) * input_scale) * um.adjoint();
            for (int j = 0; j < m; ++j) {
                const int keep[] = {j};
                total += linear_entropy(partial_trace(evolved, tf.dims(), keep));
            }
        }
        values[static_cast<std::size_t>(s)] = qd / (qd - 1.0) * total / m - (m - 1);
    }
    return summarize(values);
}

Matrix interaction_part(const Matrix& h, const TensorFactorization& tf, int i) {
    check_site(tf, i);
    if (h.rows() != tf.dim() || h.cols() != tf.dim()) throw ShapeError("interaction_part: dimension mismatch");
    const double d = static_cast<double>(tf.dim());
    const double q = tf.local_dim(i);
    const std::vector<int> rest = complement(tf.sites(), i);
    const int site[] = {i};
    Matrix r = h;
    r.diagonal().array() += h.trace() / d;
    if (rest.empty())
        r.diagonal().array() -= h.trace() / q;
    else
        r -= embed_sites(partial_trace(h, tf.dims(), rest), rest, tf.dims()) / q;
    r -= embed_sites(partial_trace(h, tf.dims(), site), site, tf.dims()) * (q / d);
    return r;
}

double scrambling_rate(const DenseOperator& h, const TensorFactorization& tf, int i) {
    if (!h.is_hermitian()) throw ValidationError("scrambling_rate: expected a hermitian-tagged operator");
    return interaction_part(h.matrix(), tf, i).norm() / std::sqrt(static_cast<double>(tf.dim()));
}

double short_time_coefficient(const DenseOperator& h, const TensorFactorization& tf) {
    const double k = static_cast<double>(tf.local_operator_dim());
    if (k == 0.0) return 0.0;
    double total = 0.0;
    for (int i = 0; i < tf.sites(); ++i) {
        const double rate = scrambling_rate(h, tf, i);
        const double q = tf.local_dim(i);
        total += q * q * rate * rate;
    }
    return 2.0 * total / k;
}

} // namespace tpsd
