#include "tpsd/linalg.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"
#include "detail/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tpsd {

double hermiticity_residual(const Matrix& a) {
    if (a.rows() != a.cols()) return INFINITY;
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Matrix& a) {
    if (a.rows() != a.cols()) return INFINITY;
    if (a.size() == 0) return 0.0;
    Matrix p = a * a.adjoint();
    p.diagonal().array() -= 1.0;
    return p.cwiseAbs().maxCoeff();
}

DenseOperator DenseOperator::general(Matrix m) {
    if (m.rows() != m.cols()) throw ShapeError("operator must be square");
    return {std::move(m), OperatorTag::general};
}

DenseOperator DenseOperator::hermitian(Matrix m) {
    if (m.rows() != m.cols()) throw ShapeError("operator must be square");
    const double r = hermiticity_residual(m);
    if (!(r < kTol.hermitian_construction))
        throw ValidationError("matrix is not hermitian (residual " + std::to_string(r) + ")");
    return {std::move(m), OperatorTag::hermitian};
}

DenseOperator DenseOperator::unitary(Matrix m) {
    if (m.rows() != m.cols()) throw ShapeError("operator must be square");
    const double r = unitarity_residual(m);
    if (!(r < kTol.unitary_construction))
        throw ValidationError("matrix is not unitary (residual " + std::to_string(r) + ")");
    return {std::move(m), OperatorTag::unitary};
}

DenseOperator DenseOperator::unitary_unchecked(Matrix m) {
    return {std::move(m), OperatorTag::unitary};
}

DenseOperator DenseOperator::identity(Index d) {
    return {Matrix::Identity(d, d), OperatorTag::unitary};
}

DenseOperator DenseOperator::adjoint() const {
    return {m_.adjoint(), tag_};
}

std::int64_t dims_product(std::span<const int> dims) {
    std::int64_t d = 1;
    for (int q : dims) {
        if (q < 1) throw ShapeError("local dimensions must be positive");
        d *= q;
        if (d > (std::int64_t{1} << 40)) throw SizeError("dimension product overflows");
    }
    return d;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    if (ra * rb > kLimits.max_dim || ca * cb > kLimits.max_dim)
        throw SizeError("kron result exceeds the configured maximum dimension");
    Matrix out(ra * rb, ca * cb);
    for (Index j = 0; j < ca; ++j)
        for (Index i = 0; i < ra; ++i) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
    Matrix m = kron(a.matrix(), b.matrix());
    if (a.is_unitary() && b.is_unitary()) return DenseOperator::unitary_unchecked(std::move(m));
    if (a.is_hermitian() && b.is_hermitian()) return DenseOperator::hermitian(std::move(m));
    return DenseOperator::general(std::move(m));
}

Matrix partial_trace(const Matrix& a, std::span<const int> dims, std::span<const int> keep) {
    const std::int64_t d = dims_product(dims);
    if (a.rows() != d || a.cols() != d) throw ShapeError("partial_trace: dims do not match operator");
    const detail::SiteSplit split(dims, keep);
    const Index dk = split.kept_dim();
    const Index dr = split.rest_dim();
    Matrix out = Matrix::Zero(dk, dk);
    for (Index r = 0; r < dr; ++r) {
        for (Index k2 = 0; k2 < dk; ++k2) {
            const Index col = split.full_index(k2, r);
            for (Index k1 = 0; k1 < dk; ++k1) out(k1, k2) += a(split.full_index(k1, r), col);
        }
    }
    return out;
}

Matrix embed_local(const Matrix& b, int site, std::span<const int> dims) {
    const int m = static_cast<int>(dims.size());
    if (site < 0 || site >= m) throw ShapeError("embed_local: site out of range");
    if (b.rows() != dims[site] || b.cols() != dims[site])
        throw ShapeError("embed_local: operator dimension does not match local dimension");
    std::int64_t left = 1, right = 1;
    for (int k = 0; k < site; ++k) left *= dims[k];
    for (int k = site + 1; k < m; ++k) right *= dims[k];
    return kron(kron(Matrix::Identity(left, left), b), Matrix::Identity(right, right));
}

Matrix embed_sites(const Matrix& op, std::span<const int> sites, std::span<const int> dims) {
    const std::int64_t d = dims_product(dims);
    if (d > kLimits.max_dim) throw SizeError("embed_sites: dimension above limit");
    const detail::SiteSplit split(dims, sites);
    if (op.rows() != split.kept_dim() || op.cols() != split.kept_dim())
        throw ShapeError("embed_sites: operator dimension does not match the listed sites");
    Matrix out = Matrix::Zero(d, d);
    for (Index r = 0; r < split.rest_dim(); ++r)
        for (Index k2 = 0; k2 < split.kept_dim(); ++k2)
            for (Index k1 = 0; k1 < split.kept_dim(); ++k1)
                out(split.full_index(k1, r), split.full_index(k2, r)) = op(k1, k2);
    return out;
}

EigenSystem herm_eig(const DenseOperator& h) {
    if (!h.is_hermitian()) throw ValidationError("herm_eig requires a hermitian-tagged operator");
    const Matrix& m = h.matrix();
    EigenSystem es;
    const bool real = m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0;
    if (real) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m.real());
        if (solver.info() != Eigen::Success) {
            throw NumericError("herm_eig: eigensolver did not converge");
        }
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors().cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
        if (solver.info() != Eigen::Success) {
            throw NumericError("herm_eig: eigensolver did not converge");
        }
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors();
    }
    const double residual =
        (m * es.vectors - es.vectors * es.values.cast<cplx>().asDiagonal()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!(residual < 1e-8 * scale * static_cast<double>(std::max<Index>(1, m.rows()))))
        throw NumericError("herm_eig: eigen-residual too large (" + std::to_string(residual) + ")");
    return es;
}

DenseOperator propagator(const EigenSystem& es, double t) {
    const Index d = es.values.size();
    Vector phases(d);
    for (Index k = 0; k < d; ++k) phases(k) = std::polar(1.0, es.values(k) * t);
    Matrix scaled = es.vectors * phases.asDiagonal();
    return DenseOperator::unitary_unchecked(scaled * es.vectors.adjoint());
}

DenseOperator swap_pair(int site, std::span<const int> dims) {
    const int m = static_cast<int>(dims.size());
    if (site < 0 || site >= m) throw ShapeError("swap_pair: site out of range");
    const std::int64_t d = dims_product(dims);
    if (d * d > kLimits.max_doubled_dim) throw SizeError("swap_pair: doubled dimension above limit");
    Dims doubled(dims.begin(), dims.end());
    doubled.insert(doubled.end(), dims.begin(), dims.end());
    std::vector<int> perm(2 * m);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[site], perm[m + site]);
    return permutation_operator(perm, doubled);
}

cplx hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("hs_inner: dimension mismatch");
    return (a.conjugate().cwiseProduct(b)).sum();
}

DenseOperator permutation_operator(std::span<const int> perm, std::span<const int> dims) {
    const int m = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != m) throw InvalidPermutationError("permutation length mismatch");
    std::vector<bool> seen(m, false);
    for (int k = 0; k < m; ++k) {
        const int p = perm[k];
        if (p < 0 || p >= m || seen[p]) throw InvalidPermutationError("not a permutation of sites");
        seen[p] = true;
        if (dims[p] != dims[k])
            throw InvalidPermutationError("permutation maps between sites of unequal dimension");
    }
    const std::int64_t d = dims_product(dims);
    if (d > kLimits.max_dim) throw SizeError("permutation_operator: dimension above limit");
    const auto strides = detail::strides(dims);
    Matrix out = Matrix::Zero(d, d);
    for (std::int64_t a = 0; a < d; ++a) {
        std::int64_t b = 0;
        for (int k = 0; k < m; ++k) b += detail::digit(a, strides, dims, perm[k]) * strides[k];
        out(b, a) = 1.0;
    }
    return DenseOperator::unitary_unchecked(std::move(out));
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

} // namespace tpsd
