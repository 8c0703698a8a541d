#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace tpsd {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Local dimensions q_1..q_M of a tensor factorization, site 0 most significant.
using Dims = std::vector<int>;

enum class OperatorTag { general, hermitian, unitary };

/// A square complex matrix carrying a role tag checked at construction.
class DenseOperator {
public:
    DenseOperator() = default;

    static DenseOperator general(Matrix m);
    static DenseOperator hermitian(Matrix m);
    static DenseOperator unitary(Matrix m);
    static DenseOperator identity(Index d);

    // Skips the O(d^3) unitarity check. Only for matrices unitary by construction
    // (products of unitaries, eigenvector conjugations, permutations).
    static DenseOperator unitary_unchecked(Matrix m);

    const Matrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }
    OperatorTag tag() const noexcept { return tag_; }
    bool is_unitary() const noexcept { return tag_ == OperatorTag::unitary; }
    bool is_hermitian() const noexcept { return tag_ == OperatorTag::hermitian; }

    DenseOperator adjoint() const;

private:
    DenseOperator(Matrix m, OperatorTag tag) : m_(std::move(m)), tag_(tag) {}

    Matrix m_;
    OperatorTag tag_ = OperatorTag::general;
};

/// Eigenvalues ascending; eigenvectors as columns of a unitary matrix.
struct EigenSystem {
    RealVector values;
    Matrix vectors;
};

double hermiticity_residual(const Matrix& a);
double unitarity_residual(const Matrix& a);

std::int64_t dims_product(std::span<const int> dims);

Matrix kron(const Matrix& a, const Matrix& b);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// Reduced operator on the sites listed in `keep` (any order; result follows site order).
Matrix partial_trace(const Matrix& a, std::span<const int> dims, std::span<const int> keep);

/// 1 (x) ... (x) b (x) ... (x) 1 with b on `site`.
Matrix embed_local(const Matrix& b, int site, std::span<const int> dims);

/// Operator acting as `op` on the listed sites (in site order) and as identity elsewhere.
Matrix embed_sites(const Matrix& op, std::span<const int> sites, std::span<const int> dims);

EigenSystem herm_eig(const DenseOperator& h);

/// exp(i H t) from a precomputed eigensystem.
DenseOperator propagator(const EigenSystem& es, double t);

/// Swap of factor `site` between the two copies of H (x) H, for H with factors `dims`.
DenseOperator swap_pair(int site, std::span<const int> dims);

/// Tr(A^dagger B).
cplx hs_inner(const Matrix& a, const Matrix& b);

/// L |a_1 ... a_M> = |a_perm(1) ... a_perm(M)>, perm given zero-based.
DenseOperator permutation_operator(std::span<const int> perm, std::span<const int> dims);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

} // namespace tpsd
