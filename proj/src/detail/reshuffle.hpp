#pragma once

#include "tpsd/linalg.hpp"

#include <span>
#include <vector>

namespace tpsd::detail {

/// Digit of one site and the compressed index of the remaining sites, for every full index.
struct SiteDigits {
    std::vector<Index> digit;
    std::vector<Index> rest;
    Index local = 1;
    Index rest_dim = 1;

    SiteDigits(std::span<const int> dims, int site) {
        Index d = 1;
        for (int q : dims) d *= q;
        Index stride = 1;
        for (int k = static_cast<int>(dims.size()) - 1; k > site; --k) stride *= dims[k];
        local = dims[site];
        rest_dim = d / local;
        digit.resize(static_cast<std::size_t>(d));
        rest.resize(static_cast<std::size_t>(d));
        for (Index x = 0; x < d; ++x) {
            const Index hi = x / (stride * local);
            const Index lo = x % stride;
            digit[static_cast<std::size_t>(x)] = (x / stride) % local;
            rest[static_cast<std::size_t>(x)] = hi * stride + lo;
        }
    }
};

/// Y[(x_row, y_col), (x_rest, y_rest)] = U[x, y], rows split at `row_site`, columns at `col_site`.
inline Matrix reshuffle(const Matrix& u, std::span<const int> dims, int row_site, int col_site) {
    const SiteDigits rows(dims, row_site);
    const SiteDigits cols(dims, col_site);
    const Index d = u.rows();
    Matrix y(rows.local * cols.local, rows.rest_dim * cols.rest_dim);
    for (Index c = 0; c < d; ++c) {
        const Index kc = cols.digit[static_cast<std::size_t>(c)];
        const Index rc = cols.rest[static_cast<std::size_t>(c)];
        for (Index r = 0; r < d; ++r) {
            y(rows.digit[static_cast<std::size_t>(r)] * cols.local + kc,
              rows.rest[static_cast<std::size_t>(r)] * cols.rest_dim + rc) = u(r, c);
        }
    }
    return y;
}

/// Y Y^dagger for the reshuffle above; indexed [(a_row, b_col), (a_row', b_col')].
inline Matrix reshuffled_gram(const Matrix& u, std::span<const int> dims, int row_site, int col_site) {
    const Matrix y = reshuffle(u, dims, row_site, col_site);
    return y * y.adjoint();
}

/// ||Y Y^dagger||_F^2, evaluated on the lower triangle only.
inline double reshuffled_gram_frobenius_sq(const Matrix& u, std::span<const int> dims, int row_site,
                                           int col_site) {
    const Matrix y = reshuffle(u, dims, row_site, col_site);
    const Index n = y.rows();
    Matrix g = Matrix::Zero(n, n);
    g.selfadjointView<Eigen::Lower>().rankUpdate(y);
    double total = 0.0;
    for (Index c = 0; c < n; ++c) {
        total += std::norm(g(c, c));
        for (Index r = c + 1; r < n; ++r) total += 2.0 * std::norm(g(r, c));
    }
    return total;
}

} // namespace tpsd::detail
