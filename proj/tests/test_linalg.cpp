#include <doctest.h>

#include "support/reference.hpp"
#include "tpsd/errors.hpp"
#include "tpsd/linalg.hpp"
#include "tpsd/randomness.hpp"

using namespace tpsd;

namespace {

Matrix random_matrix(Index rows, Index cols, SeededGenerator& g) {
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = g.complex_normal();
    return m;
}

Matrix random_hermitian(Index d, SeededGenerator& g) {
    const Matrix a = random_matrix(d, d, g);
    return 0.5 * (a + a.adjoint());
}

} // namespace

TEST_CASE("operator tags are validated at construction") {
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    CHECK_THROWS_AS(DenseOperator::hermitian(m), ValidationError);
    CHECK_THROWS_AS(DenseOperator::unitary(m), ValidationError);
    CHECK_THROWS_AS(DenseOperator::general(Matrix::Zero(2, 3)), ShapeError);
    CHECK(DenseOperator::unitary(pauli_x()).is_unitary());
    CHECK(DenseOperator::hermitian(pauli_y()).is_hermitian());
}

TEST_CASE("kron matches the block definition") {
    SeededGenerator g(1);
    const Matrix a = random_matrix(2, 3, g);
    const Matrix b = random_matrix(3, 2, g);
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 3; ++j)
            for (Index r = 0; r < 3; ++r)
                for (Index s = 0; s < 2; ++s) CHECK(std::abs(k(i * 3 + r, j * 2 + s) - a(i, j) * b(r, s)) < 1e-15);
}

TEST_CASE("partial trace agrees with the index-sum definition") {
    SeededGenerator g(2);
    const std::vector<int> dims{2, 3, 2};
    const Matrix a = random_matrix(12, 12, g);
    for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
        std::vector<bool> mask(3, false);
        for (int s : keep) mask[s] = true;
        const Matrix expected = ref::partial_trace_sum(a, dims, mask);
        CHECK((partial_trace(a, dims, keep) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    // keep order does not matter
    const int forward[] = {0, 2};
    const int backward[] = {2, 0};
    CHECK((partial_trace(a, dims, forward) - partial_trace(a, dims, backward)).norm() < 1e-14);
}

TEST_CASE("partial trace of a product state returns the factor") {
    SeededGenerator g(3);
    const Vector psi = haar_state(2, g);
    const Vector phi = haar_state(3, g);
    const Matrix rho1 = psi * psi.adjoint();
    const Matrix rho2 = phi * phi.adjoint();
    const int dims[] = {2, 3};
    const int keep0[] = {0};
    const int keep1[] = {1};
    CHECK((partial_trace(kron(rho1, rho2), dims, keep0) - rho1).norm() < 1e-14);
    CHECK((partial_trace(kron(rho1, rho2), dims, keep1) - rho2).norm() < 1e-14);
}

TEST_CASE("embedding helpers agree with explicit kron chains") {
    SeededGenerator g(4);
    const std::vector<int> dims{2, 3, 2};
    const Matrix b = random_matrix(3, 3, g);
    const Matrix expected = ref::kron_chain({Matrix::Identity(2, 2), b, Matrix::Identity(2, 2)});
    CHECK((embed_local(b, 1, dims) - expected).norm() < 1e-14);

    const Matrix c = random_matrix(4, 4, g); // acts on sites 0 and 2
    const int sites[] = {0, 2};
    const Matrix e = embed_sites(c, sites, dims);
    for (Index x = 0; x < 12; ++x)
        for (Index y = 0; y < 12; ++y) {
            const auto dx = ref::digits_of(x, dims);
            const auto dy = ref::digits_of(y, dims);
            const cplx want = dx[1] == dy[1] ? c(dx[0] * 2 + dx[2], dy[0] * 2 + dy[2]) : cplx(0.0);
            CHECK(std::abs(e(x, y) - want) < 1e-15);
        }
    CHECK_THROWS_AS(embed_local(b, 0, dims), ShapeError);
}

TEST_CASE("herm_eig and propagator reproduce the matrix exponential") {
    SeededGenerator g(5);
    for (Index d : {2, 5, 16}) {
        const Matrix h = random_hermitian(d, g);
        const EigenSystem es = herm_eig(DenseOperator::hermitian(h));
        CHECK((h * es.vectors - es.vectors * es.values.cast<cplx>().asDiagonal()).norm() < 1e-10);
        for (double t : {0.0, 0.3, 2.0}) {
            const Matrix expected = ref::expm_taylor(cplx(0.0, t) * h);
            CHECK((propagator(es, t).matrix() - expected).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    // real-symmetric fast path
    RealMatrix r = RealMatrix::Random(6, 6);
    r = 0.5 * (r + r.transpose()).eval();
    const Matrix hr = r.cast<cplx>();
    const EigenSystem es = herm_eig(DenseOperator::hermitian(hr));
    CHECK((propagator(es, 1.5).matrix() - ref::expm_taylor(cplx(0.0, 1.5) * hr)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(herm_eig(DenseOperator::general(hr)), ValidationError);
}

TEST_CASE("swap_pair exchanges one factor between copies") {
    const std::vector<int> dims{2, 3};
    const Matrix s0 = swap_pair(0, dims).matrix();
    CHECK((s0 * s0 - Matrix::Identity(36, 36)).norm() < 1e-14);
    SeededGenerator g(6);
    const Matrix a = random_matrix(2, 2, g), b = random_matrix(3, 3, g);
    const Matrix c = random_matrix(2, 2, g), e = random_matrix(3, 3, g);
    // S_00' (a (x) b (x) c (x) e) S_00' = c (x) b (x) a (x) e
    const Matrix lhs = s0 * ref::kron_chain({a, b, c, e}) * s0;
    CHECK((lhs - ref::kron_chain({c, b, a, e})).norm() < 1e-13);
    CHECK_THROWS_AS(swap_pair(0, std::vector<int>{4, 4, 5}), SizeError);
}

TEST_CASE("permutation operator relabels site digits") {
    const std::vector<int> dims{2, 2, 2};
    const int perm[] = {1, 2, 0};
    const Matrix l = permutation_operator(perm, dims).matrix();
    // |a0 a1 a2> -> |a1 a2 a0>
    for (Index x = 0; x < 8; ++x) {
        const auto d = ref::digits_of(x, dims);
        const Index y = d[1] * 4 + d[2] * 2 + d[0];
        CHECK(std::abs(l(y, x) - 1.0) < 1e-15);
    }
    CHECK(unitarity_residual(l) < 1e-15);
    const int bad[] = {0, 0, 1};
    CHECK_THROWS_AS(permutation_operator(bad, dims), InvalidPermutationError);
    const int swap01[] = {1, 0};
    CHECK_THROWS_AS(permutation_operator(swap01, std::vector<int>{2, 3}), InvalidPermutationError);
}

TEST_CASE("hs_inner is conjugate-linear in the first argument") {
    SeededGenerator g(7);
    const Matrix a = random_matrix(3, 3, g), b = random_matrix(3, 3, g);
    CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-13);
    CHECK(std::abs(hs_inner(cplx(0, 2) * a, b) - cplx(0, -2) * hs_inner(a, b)) < 1e-12);
}
