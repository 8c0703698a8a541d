#include "tpsd/structure.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tpsd {

TensorFactorization::TensorFactorization(Dims dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ShapeError("a factorization needs at least one site");
    for (int q : dims_)
        if (q < 2) throw ShapeError("local dimensions must be >= 2");
    dim_ = dims_product(dims_);
}

Index TensorFactorization::local_operator_dim() const {
    Index k = 0;
    for (int q : dims_) k += static_cast<Index>(q) * q - 1;
    return k;
}

std::vector<Matrix> gell_mann_basis(int q) {
    if (q < 2) throw ShapeError("gell_mann_basis: q must be >= 2");
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(q * q - 1));
    const double s = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < q; ++j) {
        for (int k = j + 1; k < q; ++k) {
            Matrix sym = Matrix::Zero(q, q);
            sym(j, k) = s;
            sym(k, j) = s;
            out.push_back(std::move(sym));
            Matrix asym = Matrix::Zero(q, q);
            asym(j, k) = cplx(0, -s);
            asym(k, j) = cplx(0, s);
            out.push_back(std::move(asym));
        }
    }
    for (int l = 1; l < q; ++l) {
        Matrix diag = Matrix::Zero(q, q);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m) diag(m, m) = norm;
        diag(l, l) = -l * norm;
        out.push_back(std::move(diag));
    }
    return out;
}

LocalBasis local_basis(const TensorFactorization& tf, int site, const std::vector<Matrix>& local) {
    if (site < 0 || site >= tf.sites()) throw ShapeError("local_basis: site out of range");
    const int q = tf.local_dim(site);
    if (static_cast<int>(local.size()) != q * q - 1)
        throw ShapeError("local_basis: expected q^2 - 1 local elements");
    const double scale = std::sqrt(static_cast<double>(q) / static_cast<double>(tf.dim()));
    LocalBasis basis{site, {}};
    basis.elements.reserve(local.size());
    for (const Matrix& b : local) basis.elements.push_back(embed_local(b, site, tf.dims()) * scale);
    return basis;
}

LocalBasis local_basis(const TensorFactorization& tf, int site) {
    if (site < 0 || site >= tf.sites()) throw ShapeError("local_basis: site out of range");
    return local_basis(tf, site, gell_mann_basis(tf.local_dim(site)));
}

namespace {

std::vector<int> checked_sites(const TensorFactorization& tf, std::vector<int> sites) {
    if (sites.empty()) throw ShapeError("site subset must be non-empty");
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
        throw ShapeError("site subset has duplicates");
    if (sites.front() < 0 || sites.back() >= tf.sites()) throw ShapeError("site subset out of range");
    return sites;
}

} // namespace

AlgebraSet AlgebraSet::full(TensorFactorization tf) {
    const Index d = tf.dim();
    return AlgebraSet(FullTps{std::move(tf)}, d);
}

AlgebraSet AlgebraSet::bipartite(int d1, int d2) {
    if (d1 < 2 || d2 < 2) throw ShapeError("bipartite algebra needs d1, d2 >= 2");
    return AlgebraSet(BipartiteAlgebra{d1, d2}, static_cast<Index>(d1) * d2);
}

AlgebraSet AlgebraSet::max_abelian(Matrix basis) {
    if (basis.rows() != basis.cols() || basis.rows() < 2) throw ShapeError("basis must be square, d >= 2");
    if (!(unitarity_residual(basis) < kTol.unitary_construction))
        throw ValidationError("maximally abelian basis must be unitary");
    const Index d = basis.rows();
    return AlgebraSet(MaxAbelian{std::move(basis)}, d);
}

AlgebraSet AlgebraSet::computational_abelian(Index d) {
    return max_abelian(Matrix::Identity(d, d));
}

AlgebraSet AlgebraSet::subset(TensorFactorization tf, std::vector<int> sites) {
    sites = checked_sites(tf, std::move(sites));
    const Index d = tf.dim();
    return AlgebraSet(SiteSubset{std::move(tf), std::move(sites)}, d);
}

std::optional<FactorView> AlgebraSet::factor_view() const {
    if (const auto* f = std::get_if<FullTps>(&kind_)) {
        std::vector<int> all(static_cast<std::size_t>(f->tf.sites()));
        for (int k = 0; k < f->tf.sites(); ++k) all[static_cast<std::size_t>(k)] = k;
        return FactorView{f->tf, std::move(all)};
    }
    if (const auto* b = std::get_if<BipartiteAlgebra>(&kind_))
        return FactorView{TensorFactorization({b->d1, b->d2}), {0}};
    if (const auto* s = std::get_if<SiteSubset>(&kind_)) return FactorView{s->tf, s->sites};
    return std::nullopt;
}

Index AlgebraSet::traceless_dim() const {
    if (auto view = factor_view()) {
        Index k = 0;
        for (int s : view->sites) k += static_cast<Index>(view->tf.local_dim(s)) * view->tf.local_dim(s) - 1;
        return k;
    }
    return dim_ - 1;
}

std::vector<Matrix> AlgebraSet::traceless_basis() const {
    std::vector<Matrix> out;
    if (auto view = factor_view()) {
        for (int s : view->sites) {
            auto lb = local_basis(view->tf, s);
            for (auto& e : lb.elements) out.push_back(std::move(e));
        }
        return out;
    }
    const auto& b = std::get<MaxAbelian>(kind_).basis;
    const Index d = dim_;
    // traceless diagonal Gell-Mann elements, rotated into the basis B
    for (Index l = 1; l < d; ++l) {
        Vector diag = Vector::Zero(d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * static_cast<double>(l + 1));
        for (Index m = 0; m < l; ++m) diag(m) = norm;
        diag(l) = -static_cast<double>(l) * norm;
        out.push_back(b * diag.asDiagonal() * b.adjoint());
    }
    return out;
}

std::vector<std::vector<Matrix>> AlgebraSet::member_generators() const {
    std::vector<std::vector<Matrix>> out;
    if (auto view = factor_view()) {
        for (int s : view->sites) out.push_back(local_basis(view->tf, s).elements);
        return out;
    }
    const auto& b = std::get<MaxAbelian>(kind_).basis;
    for (Index k = 0; k < dim_; ++k) out.push_back({b.col(k) * b.col(k).adjoint()});
    return out;
}

Matrix project_w(const AlgebraSet& aset, const Matrix& x) {
    const Index d = aset.dim();
    if (x.rows() != d || x.cols() != d) throw ShapeError("project_w: operator dimension mismatch");
    if (auto view = aset.factor_view()) {
        const cplx tr = x.trace();
        Matrix out = Matrix::Identity(d, d) * (-(static_cast<double>(view->sites.size()) - 1.0) * tr /
                                               static_cast<double>(d));
        for (int s : view->sites) {
            const int q = view->tf.local_dim(s);
            const int keep[] = {s};
            Matrix reduced = partial_trace(x, view->tf.dims(), keep);
            out += embed_local(reduced, s, view->tf.dims()) * (static_cast<double>(q) / static_cast<double>(d));
        }
        return out;
    }
    const auto& b = std::get<MaxAbelian>(aset.kind()).basis;
    Matrix rotated = b.adjoint() * x * b;
    Matrix diag = rotated.diagonal().asDiagonal();
    return b * diag * b.adjoint();
}

namespace {

Index span_rank(const std::vector<const Matrix*>& ops) {
    if (ops.empty()) return 0;
    const Index n = ops.front()->size();
    Matrix stacked(n, static_cast<Index>(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k)
        stacked.col(static_cast<Index>(k)) = Eigen::Map<const Vector>(ops[k]->data(), n);
    Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
    qr.setThreshold(1e-10);
    return qr.rank();
}

} // namespace

AlgebraConditionReport check_algebra_conditions(const AlgebraSet& aset) {
    const auto members = aset.member_generators();
    const Index d = aset.dim();
    const Matrix id = Matrix::Identity(d, d);
    AlgebraConditionReport report;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            for (const Matrix& x : members[i])
                for (const Matrix& y : members[j])
                    report.max_commutator =
                        std::max(report.max_commutator, (x * y - y * x).cwiseAbs().maxCoeff());
            std::vector<const Matrix*> a{&id}, b{&id}, ab{&id};
            for (const Matrix& x : members[i]) {
                a.push_back(&x);
                ab.push_back(&x);
            }
            for (const Matrix& y : members[j]) {
                b.push_back(&y);
                ab.push_back(&y);
            }
            const Index expected = span_rank(a) + span_rank(b) - 1;
            const int excess = static_cast<int>(expected - span_rank(ab));
            report.intersection_excess = std::max(report.intersection_excess, excess);
        }
    }
    return report;
}

} // namespace tpsd
