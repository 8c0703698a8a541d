#pragma once

#include "tpsd/linalg.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace tpsd {

/// H = H_1 (x) ... (x) H_M with dim H_i = q_i >= 2.
class TensorFactorization {
public:
    explicit TensorFactorization(Dims dims);

    const Dims& dims() const noexcept { return dims_; }
    int sites() const noexcept { return static_cast<int>(dims_.size()); }
    Index dim() const noexcept { return dim_; }
    int local_dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }

    /// sum_i (q_i^2 - 1)
    Index local_operator_dim() const;

    bool operator==(const TensorFactorization&) const = default;

private:
    Dims dims_;
    Index dim_ = 1;
};

/// Orthonormal, hermitian, traceless basis of q x q matrices (generalized Gell-Mann), q^2 - 1 elements.
std::vector<Matrix> gell_mann_basis(int q);

/// Normalized embedded local operators P_i^a for one site, a = 1..q_i^2-1.
struct LocalBasis {
    int site = 0;
    std::vector<Matrix> elements;
};

LocalBasis local_basis(const TensorFactorization& tf, int site);

/// Same construction with a caller-provided orthonormal traceless local basis.
LocalBasis local_basis(const TensorFactorization& tf, int site, const std::vector<Matrix>& local);

struct FullTps {
    TensorFactorization tf;
};

/// The single algebra L(H_1) (x) 1 on C^{d1} (x) C^{d2}.
struct BipartiteAlgebra {
    int d1 = 0;
    int d2 = 0;
};

/// Algebras C{1, |k><k|} for the columns |k> of a unitary basis matrix.
struct MaxAbelian {
    Matrix basis;
};

/// Local algebras of a subset of the sites of a factorization.
struct SiteSubset {
    TensorFactorization tf;
    std::vector<int> sites;
};

/// Member algebras that are full local factors of some factorization.
struct FactorView {
    TensorFactorization tf;
    std::vector<int> sites;
};

class AlgebraSet {
public:
    using Kind = std::variant<FullTps, BipartiteAlgebra, MaxAbelian, SiteSubset>;

    static AlgebraSet full(TensorFactorization tf);
    static AlgebraSet bipartite(int d1, int d2);
    static AlgebraSet max_abelian(Matrix basis);
    static AlgebraSet computational_abelian(Index d);
    static AlgebraSet subset(TensorFactorization tf, std::vector<int> sites);

    const Kind& kind() const noexcept { return kind_; }
    Index dim() const noexcept { return dim_; }

    /// dim(W / C1)
    Index traceless_dim() const;

    /// Factor structure when every member algebra is L(H_i) (x) 1; empty for MaxAbelian.
    std::optional<FactorView> factor_view() const;

    /// Orthonormal basis of W / C1 as d x d operators.
    std::vector<Matrix> traceless_basis() const;

    /// Member algebras as lists of generators (each list spans the algebra together with 1).
    std::vector<std::vector<Matrix>> member_generators() const;

private:
    explicit AlgebraSet(Kind kind, Index dim) : kind_(std::move(kind)), dim_(dim) {}

    Kind kind_;
    Index dim_ = 0;
};

/// Orthogonal (Hilbert-Schmidt) projection onto W = sum_i A_i.
Matrix project_w(const AlgebraSet& aset, const Matrix& x);

/// Max commutator norm between generators of distinct members, and the smallest
/// pairwise rank deficit of A_i + A_j relative to dim A_i + dim A_j - 1 (0 means trivial intersection).
struct AlgebraConditionReport {
    double max_commutator = 0.0;
    int intersection_excess = 0;
};

AlgebraConditionReport check_algebra_conditions(const AlgebraSet& aset);

} // namespace tpsd
