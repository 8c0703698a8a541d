#include "tpsd/geometry.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"
#include "tpsd/scrambling.hpp"
#include "detail/indexing.hpp"
#include "detail/reshuffle.hpp"

#include <cmath>
#include <numeric>

namespace tpsd {

const char* to_string(PhiRoute route) {
    switch (route) {
    case PhiRoute::correlator: return "correlator";
    case PhiRoute::man: return "man";
    case PhiRoute::projection: return "projection";
    }
    return "unknown";
}

namespace {

void require_unitary(const DenseOperator& u, Index d) {
    if (!u.is_unitary()) throw ValidationError("expected a unitary-tagged operator");
    if (u.dim() != d) throw ShapeError("unitary dimension does not match the algebra set");
}

bool is_single_factor(const FactorView& view) { return view.tf.sites() == 1; }

} // namespace

RealMatrix correlator_matrix(const TensorFactorization& tf, const DenseOperator& u, int i, int j) {
    require_unitary(u, tf.dim());
    if (j < 0 || j >= tf.sites()) throw ShapeError("correlator_matrix: site out of range");
    const LocalBasis source = local_basis(tf, i);
    const std::vector<Matrix> target = gell_mann_basis(tf.local_dim(j));
    const double scale = std::sqrt(static_cast<double>(tf.local_dim(j)) / static_cast<double>(tf.dim()));
    const int keep[] = {j};
    RealMatrix c(static_cast<Index>(source.elements.size()), static_cast<Index>(target.size()));
    const Matrix& um = u.matrix();
    for (std::size_t a = 0; a < source.elements.size(); ++a) {
        const Matrix evolved = um * source.elements[a] * um.adjoint();
        const Matrix reduced = partial_trace(evolved, tf.dims(), keep);
        for (std::size_t b = 0; b < target.size(); ++b) {
            // <X, P> = Tr(X^dagger P); X hermitian
            c(static_cast<Index>(a), static_cast<Index>(b)) = scale * (reduced * target[b]).trace().real();
        }
    }
    return c;
}

double correlator_norm_sq(const TensorFactorization& tf, const Matrix& u, int i, int j) {
    if (u.rows() != tf.dim() || u.cols() != tf.dim()) throw ShapeError("correlator_norm_sq: dimension mismatch");
    if (i < 0 || i >= tf.sites() || j < 0 || j >= tf.sites()) throw ShapeError("site out of range");
    const double frob = detail::reshuffled_gram_frobenius_sq(u, tf.dims(), /*row_site=*/j, /*col_site=*/i);
    const double d = static_cast<double>(tf.dim());
    return static_cast<double>(tf.local_dim(i)) * tf.local_dim(j) / (d * d) * frob - 1.0;
}

RealMatrix correlator_norms(const TensorFactorization& tf, const Matrix& u, std::span<const int> sites) {
    const Index m = static_cast<Index>(sites.size());
    RealMatrix out(m, m);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) out(a, b) = correlator_norm_sq(tf, u, sites[a], sites[b]);
    return out;
}

namespace {

PhiResult phi_abelian(const MaxAbelian& kind, const Matrix& u) {
    const Index d = kind.basis.rows();
    const Matrix rotated = kind.basis.adjoint() * u * kind.basis;
    const RealMatrix q = rotated.cwiseAbs2();
    RealMatrix a = RealMatrix::Zero(d, d - 1);
    for (Index l = 1; l < d; ++l) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * static_cast<double>(l + 1));
        a.col(l - 1).head(l).setConstant(norm);
        a(l, l - 1) = -static_cast<double>(l) * norm;
    }
    const RealMatrix g = a.transpose() * q * a;
    PhiResult r;
    r.route = PhiRoute::correlator;
    r.value = 1.0 - g.squaredNorm() / static_cast<double>(d - 1);
    r.correlator_norms = RealMatrix::Constant(1, 1, g.squaredNorm());
    return r;
}

} // namespace

PhiResult phi_correlator(const AlgebraSet& aset, const DenseOperator& u) {
    require_unitary(u, aset.dim());
    if (const auto* ab = std::get_if<MaxAbelian>(&aset.kind())) return phi_abelian(*ab, u.matrix());
    const FactorView view = *aset.factor_view();
    PhiResult r;
    r.route = PhiRoute::correlator;
    if (is_single_factor(view)) {
        r.value = 0.0;
        r.correlator_norms = RealMatrix::Constant(1, 1, static_cast<double>(aset.traceless_dim()));
        r.note = "single-site factorization: W = L(H) is invariant under every unitary";
        return r;
    }
    r.correlator_norms = correlator_norms(view.tf, u.matrix(), view.sites);
    r.value = 1.0 - r.correlator_norms.sum() / static_cast<double>(aset.traceless_dim());
    // rounding noise around Phi = 0
    if (r.value < 0.0 && r.value > -kTol.comparison) r.value = 0.0;
    return r;
}

PhiResult phi_man(const AlgebraSet& aset, const DenseOperator& u) {
    require_unitary(u, aset.dim());
    const auto view = aset.factor_view();
    if (!view) throw UnsupportedError("phi_man: member algebras must be local factors");
    PhiResult r;
    r.route = PhiRoute::man;
    if (is_single_factor(*view)) {
        r.value = 0.0;
        r.note = "single-site factorization: W = L(H) is invariant under every unitary";
        return r;
    }
    const double total = static_cast<double>(aset.traceless_dim());
    const Index m = static_cast<Index>(view->sites.size());
    r.correlator_norms.resize(m, m);
    double phi = 0.0;
    for (Index a = 0; a < m; ++a) {
        const int i = view->sites[a];
        const double qi2 = static_cast<double>(view->tf.local_dim(i)) * view->tf.local_dim(i);
        double inner = 1.0;
        for (Index b = 0; b < m; ++b) {
            const double s = man(view->tf, u, i, view->sites[b]).value;
            r.correlator_norms(a, b) = qi2 * (1.0 - s) - 1.0;
            inner -= 1.0 - s / (1.0 - 1.0 / qi2);
        }
        phi += inner * (qi2 - 1.0) / total;
    }
    r.value = phi;
    return r;
}

PhiResult phi_projection(const AlgebraSet& aset, const DenseOperator& u) {
    require_unitary(u, aset.dim());
    const Index d = aset.dim();
    if (d > kLimits.projection_oracle_dim) throw SizeError("phi_projection: dimension above oracle bound");
    std::vector<Matrix> basis = aset.traceless_basis();
    basis.insert(basis.begin(), Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    const Index n = static_cast<Index>(basis.size());
    Matrix v(d * d, n), vu(d * d, n);
    const Matrix& um = u.matrix();
    for (Index k = 0; k < n; ++k) {
        const Matrix& w = basis[static_cast<std::size_t>(k)];
        v.col(k) = Eigen::Map<const Vector>(w.data(), d * d);
        const Matrix evolved = um * w * um.adjoint();
        vu.col(k) = Eigen::Map<const Vector>(evolved.data(), d * d);
    }
    const Matrix p_w = v * v.adjoint();
    const Matrix p_uw = vu * vu.adjoint();
    PhiResult r;
    r.route = PhiRoute::projection;
    r.value = (p_w - p_uw).squaredNorm() / (2.0 * static_cast<double>(aset.traceless_dim()));
    return r;
}

PhiResult generalized_phi(const AlgebraSet& aset, const DenseOperator& u) {
    if (std::holds_alternative<FullTps>(aset.kind()))
        throw UnsupportedError("generalized_phi: use phi_correlator for a complete factorization");
    require_unitary(u, aset.dim());
    if (const auto* b = std::get_if<BipartiteAlgebra>(&aset.kind())) {
        PhiResult r;
        r.route = PhiRoute::correlator;
        const double d1sq = static_cast<double>(b->d1) * b->d1;
        r.value = operator_entanglement(u, b->d1, b->d2) / (1.0 - 1.0 / d1sq);
        r.note = "normalized operator entanglement";
        return r;
    }
    PhiResult r = phi_correlator(aset, u);
    if (std::holds_alternative<MaxAbelian>(aset.kind())) r.note = "normalized coherence generating power";
    return r;
}

double coherence_generating_power(const Matrix& u, const Matrix& basis) {
    if (u.rows() != basis.rows()) throw ShapeError("coherence_generating_power: dimension mismatch");
    const Matrix rotated = basis.adjoint() * u * basis;
    const double d = static_cast<double>(u.rows());
    return 1.0 - rotated.cwiseAbs2().cwiseAbs2().sum() / d;
}

RealMatrix check_max_condition(const DenseOperator& u, const TensorFactorization& tf, const Matrix& basis) {
    require_unitary(u, tf.dim());
    if (basis.rows() != tf.dim() || basis.cols() != tf.dim()) throw ShapeError("basis dimension mismatch");
    const Matrix rotated = basis.adjoint() * u.matrix() * basis;
    const int m = tf.sites();
    const double d = static_cast<double>(tf.dim());
    RealMatrix residual(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Matrix g = detail::reshuffled_gram(rotated, tf.dims(), /*row_site=*/i, /*col_site=*/j);
            g.diagonal().array() -= d / (static_cast<double>(tf.local_dim(i)) * tf.local_dim(j));
            residual(i, j) = g.cwiseAbs().maxCoeff();
        }
    }
    return residual;
}

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int k = 2; k * k <= q; ++k)
        if (q % k == 0) return false;
    return true;
}

} // namespace

DenseOperator two_unitary_example(int q) {
    if (q == 2) throw UnsupportedError("no 2-unitary exists on C^2 (x) C^2");
    if (q < 2 || !is_prime(q)) throw UnsupportedError("two_unitary_example: q must be an odd prime");
    const Index d = static_cast<Index>(q) * q;
    Matrix u = Matrix::Zero(d, d);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) u(((i + j) % q) * q + (i + 2 * j) % q, i * q + j) = 1.0;
    return DenseOperator::unitary(std::move(u));
}

TwoUnitaryResidual is_two_unitary(const Matrix& u, int q) {
    const Index d = static_cast<Index>(q) * q;
    if (u.rows() != d || u.cols() != d) throw ShapeError("is_two_unitary: dim(U) must be q^2");
    Matrix reshuffled(d, d), transposed(d, d);
    for (int k1 = 0; k1 < q; ++k1)
        for (int k2 = 0; k2 < q; ++k2)
            for (int l1 = 0; l1 < q; ++l1)
                for (int l2 = 0; l2 < q; ++l2) {
                    const cplx value = u(k1 * q + k2, l1 * q + l2);
                    reshuffled(k1 * q + l1, k2 * q + l2) = value;
                    transposed(k2 * q + l1, k1 * q + l2) = value;
                }
    TwoUnitaryResidual r;
    r.reshuffle = unitarity_residual(reshuffled);
    r.partial_transpose = unitarity_residual(transposed);
    return r;
}

} // namespace tpsd
