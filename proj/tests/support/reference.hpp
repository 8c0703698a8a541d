#pragma once

// Brute-force constructions used only as test oracles.

#include "tpsd/linalg.hpp"

#include <cmath>
#include <vector>

namespace ref {

using tpsd::cplx;
using tpsd::Index;
using tpsd::Matrix;

inline Matrix expm_taylor(const Matrix& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
    const Matrix scaled = a / std::ldexp(1.0, squarings);
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    Matrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline std::vector<int> digits_of(Index x, const std::vector<int>& dims) {
    std::vector<int> out(dims.size());
    for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
        out[s] = static_cast<int>(x % dims[s]);
        x /= dims[s];
    }
    return out;
}

/// Sum over all matrix entries whose traced-out digits agree.
inline Matrix partial_trace_sum(const Matrix& a, const std::vector<int>& dims, const std::vector<bool>& keep) {
    Index kd = 1;
    for (std::size_t s = 0; s < dims.size(); ++s)
        if (keep[s]) kd *= dims[s];
    Matrix out = Matrix::Zero(kd, kd);
    for (Index x = 0; x < a.rows(); ++x) {
        const auto dx = digits_of(x, dims);
        for (Index y = 0; y < a.cols(); ++y) {
            const auto dy = digits_of(y, dims);
            bool match = true;
            Index kx = 0, ky = 0;
            for (std::size_t s = 0; s < dims.size(); ++s) {
                if (keep[s]) {
                    kx = kx * dims[s] + dx[s];
                    ky = ky * dims[s] + dy[s];
                } else if (dx[s] != dy[s]) {
                    match = false;
                }
            }
            if (match) out(kx, ky) += a(x, y);
        }
    }
    return out;
}

inline Matrix kron_chain(const std::vector<Matrix>& factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const Matrix& f : factors) {
        Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
        for (Index i = 0; i < out.rows(); ++i)
            for (Index j = 0; j < out.cols(); ++j) next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
        out = next;
    }
    return out;
}

inline Matrix site_op(const Matrix& op, int site, int n, int q) {
    std::vector<Matrix> f(static_cast<std::size_t>(n), Matrix::Identity(q, q));
    f[static_cast<std::size_t>(site)] = op;
    return kron_chain(f);
}

inline Matrix pauli(char which) {
    Matrix m(2, 2);
    if (which == 'x') m << 0, 1, 1, 0;
    if (which == 'y') m << 0, cplx(0, -1), cplx(0, 1), 0;
    if (which == 'z') m << 1, 0, 0, -1;
    return m;
}

inline Matrix tfim_kron_sum(int n, double h, const std::vector<double>& g, bool coupling = true) {
    const Index d = Index{1} << n;
    Matrix hm = Matrix::Zero(d, d);
    if (coupling)
        for (int i = 0; i + 1 < n; ++i) hm -= site_op(pauli('z'), i, n, 2) * site_op(pauli('z'), i + 1, n, 2);
    for (int i = 0; i < n; ++i) {
        hm -= h * site_op(pauli('z'), i, n, 2);
        hm -= g[static_cast<std::size_t>(i)] * site_op(pauli('x'), i, n, 2);
    }
    return hm;
}

/// Annihilator of mode m on 2n modes via Jordan-Wigner strings; |1> is occupied.
inline Matrix jw_annihilator(int mode, int modes) {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    std::vector<Matrix> f(static_cast<std::size_t>(modes), Matrix::Identity(2, 2));
    for (int k = 0; k < mode; ++k) f[static_cast<std::size_t>(k)] = pauli('z');
    f[static_cast<std::size_t>(mode)] = a;
    return kron_chain(f);
}

struct FockTjz {
    Matrix constrained;   // P H P in the (empty, up, down)^n basis
    double leakage = 0.0; // ||(1 - P) H P||_F
};

/// t-Jz chain on the full 4^n Fock space, modes ordered (1 up, 1 down, 2 up, ...).
inline FockTjz tjz_dense(int n, const std::vector<double>& t, const std::vector<double>& jz, const std::vector<double>& hz,
                         const std::vector<double>& gz) {
    const int modes = 2 * n;
    std::vector<Matrix> c, cd, num;
    for (int m = 0; m < modes; ++m) {
        c.push_back(jw_annihilator(m, modes));
        cd.push_back(c.back().adjoint());
        num.push_back(cd.back() * c.back());
    }
    const Index dim = Index{1} << modes;
    Matrix h = Matrix::Zero(dim, dim);
    std::vector<Matrix> sz;
    for (int j = 0; j < n; ++j) sz.push_back(num[2 * j] - num[2 * j + 1]);
    for (int j = 0; j < n; ++j) {
        h += hz[j] * sz[j] + gz[j] * sz[j] * sz[j];
        if (j + 1 < n) {
            h += jz[j] * sz[j] * sz[j + 1];
            for (int s = 0; s < 2; ++s) {
                const Matrix hop = c[2 * j + s] * cd[2 * (j + 1) + s];
                h -= t[j] * (hop + hop.adjoint());
            }
        }
    }
    // embedding of the constrained basis: digit 0 empty, 1 up, 2 down
    Index cdim = 1;
    for (int j = 0; j < n; ++j) cdim *= 3;
    Matrix p = Matrix::Zero(dim, cdim);
    for (Index x = 0; x < cdim; ++x) {
        const auto dg = digits_of(x, std::vector<int>(static_cast<std::size_t>(n), 3));
        Index f = 0;
        for (int j = 0; j < n; ++j) {
            const int up = dg[j] == 1, down = dg[j] == 2;
            f = (f << 2) | (up << 1) | down;
        }
        p(f, x) = 1.0;
    }
    FockTjz out;
    out.constrained = p.adjoint() * h * p;
    const Matrix hp = h * p;
    out.leakage = (hp - p * out.constrained).norm();
    return out;
}

} // namespace ref
