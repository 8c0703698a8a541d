#include "tpsd/verify.hpp"

#include "tpsd/errors.hpp"
#include "tpsd/geometry.hpp"
#include "tpsd/oracles.hpp"
#include "tpsd/randomness.hpp"
#include "tpsd/scrambling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tpsd {

namespace {

constexpr double kMaxZ = 4.0;

VerifyResult finish(std::string suite, double residual, double tolerance, std::string detail) {
    return {std::move(suite), residual, tolerance, residual < tolerance, std::move(detail)};
}

VerifyResult route_agreement(std::uint64_t seed) {
    const std::vector<Dims> cases{{2, 2}, {2, 3}, {2, 2, 2}, {3, 3}};
    SeededGenerator root(seed, 1);
    double man_gap = 0.0, proj_gap = 0.0;
    for (int k = 0; k < 50; ++k) {
        const TensorFactorization tf(cases[static_cast<std::size_t>(k) % cases.size()]);
        SeededGenerator g = root.fork(static_cast<std::uint64_t>(k));
        const DenseOperator u = haar_unitary(tf.dim(), g);
        const AlgebraSet aset = AlgebraSet::full(tf);
        const double c = phi_correlator(aset, u).value;
        man_gap = std::max(man_gap, std::abs(c - phi_man(aset, u).value));
        proj_gap = std::max(proj_gap, std::abs(c - phi_projection(aset, u).value));
    }
    std::ostringstream os;
    os << "max |correlator - man| = " << man_gap << ", max |correlator - projection| = " << proj_gap;
    VerifyResult r = finish("route-agreement", std::max(man_gap, proj_gap), 1e-9, os.str());
    r.passed = man_gap < 1e-10 && proj_gap < 1e-9;
    return r;
}

VerifyResult bridge_identity(std::uint64_t seed) {
    const std::vector<Dims> cases{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 4}, {4, 4}, {2, 2, 2, 2}, {2, 2, 3}};
    SeededGenerator root(seed, 2);
    double gap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const TensorFactorization tf(cases[static_cast<std::size_t>(k) % cases.size()]);
        SeededGenerator g = root.fork(static_cast<std::uint64_t>(k));
        const DenseOperator u = haar_unitary(tf.dim(), g);
        for (int i = 0; i < tf.sites(); ++i)
            for (int j = 0; j < tf.sites(); ++j)
                gap = std::max(gap, std::abs(man(tf, u, i, j).value - oracle::man_swap_trace(tf, u, i, j)));
    }
    return finish("bridge-identity", gap, 1e-10, "max |man - swap trace| over all pairs, 20 unitaries, d <= 16");
}

VerifyResult swap_moment(std::uint64_t seed) {
    // S(U(A_i):A_j') = (q+1)/q E_psi S_lin(Lambda^{i->j}(psi)), checked per pair by Monte Carlo
    const int samples = 2000;
    SeededGenerator root(seed, 3);
    double worst = 0.0;
    std::ostringstream os;
    for (int q : {2, 3}) {
        const TensorFactorization tf({q, q});
        SeededGenerator g = root.fork(static_cast<std::uint64_t>(q));
        const DenseOperator u = haar_unitary(tf.dim(), g);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                std::vector<double> values(samples);
                for (int s = 0; s < samples; ++s) {
                    SeededGenerator gs = g.fork(static_cast<std::uint64_t>(1000 * (2 * i + j) + s));
                    const Vector psi = haar_state(q, gs);
                    const Matrix out = reduced_map(tf, u, i, j, psi * psi.adjoint());
                    values[static_cast<std::size_t>(s)] = (q + 1.0) / q * linear_entropy(out);
                }
                const Estimate e = summarize(values);
                const double exact = man(tf, u, i, j).value;
                const double z = std::abs(e.mean - exact) / std::max(e.std_error, 1e-15);
                worst = std::max(worst, z);
            }
        }
    }
    os << "max z-score over (i, j) on [2,2] and [3,3], " << samples << " states each";
    return finish("swap-moment", worst, kMaxZ, os.str());
}

VerifyResult ep_symmetric(std::uint64_t seed) {
    SeededGenerator root(seed, 4);
    double gap = 0.0;
    for (int q : {2, 3}) {
        const TensorFactorization tf({q, q});
        const AlgebraSet aset = AlgebraSet::full(tf);
        for (int k = 0; k < 20; ++k) {
            SeededGenerator g = root.fork(static_cast<std::uint64_t>(100 * q + k));
            const DenseOperator u = haar_unitary(tf.dim(), g);
            gap = std::max(gap, std::abs(phi_correlator(aset, u).value - entangling_power(u, q, q)));
        }
    }
    return finish("ep-symmetric", gap, 1e-10, "max |phi - e_p| on [2,2] and [3,3], 20 unitaries each");
}

VerifyResult ep_identity(std::uint64_t seed) {
    const std::vector<std::pair<int, int>> cuts{{2, 2}, {2, 3}, {2, 4}, {3, 4}, {3, 5}};
    SeededGenerator root(seed, 5);
    double bip = 0.0, formula = 0.0, oe = 0.0;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
        const auto [d1, d2] = cuts[c];
        const TensorFactorization tf({d1, d2});
        for (int k = 0; k < 10; ++k) {
            SeededGenerator g = root.fork(static_cast<std::uint64_t>(100 * c + k));
            const DenseOperator u = haar_unitary(tf.dim(), g);
            const double s11 = man(tf, u, 0, 1).value;
            const double s22 = man(tf, u, 1, 0).value;
            const double ratio = static_cast<double>(d1 * d1) / (d2 * d2);
            bip = std::max(bip, std::abs(s22 - (1.0 - ratio * (1.0 - s11))));
            formula = std::max(formula, std::abs(entangling_power(u, d1, d2) -
                                                 oracle::entangling_power_swap_trace(u, d1, d2)));
            oe = std::max(oe, std::abs(operator_entanglement(u, d1, d2) -
                                       oracle::operator_entanglement_swap_trace(u, d1, d2)));
        }
    }
    std::ostringstream os;
    os << "bipartite MAN identity " << bip << ", e_p vs swap-trace formula " << formula
       << ", operator entanglement SVD vs swap trace " << oe;
    return finish("ep-identity", std::max({bip, formula, oe}), 1e-10, os.str());
}

} // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"route-agreement", "bridge-identity", "swap-moment", "ep-symmetric",
                                                "ep-identity"};
    return names;
}

VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed) {
    if (suite == "route-agreement") return route_agreement(seed);
    if (suite == "bridge-identity") return bridge_identity(seed);
    if (suite == "swap-moment") return swap_moment(seed);
    if (suite == "ep-symmetric") return ep_symmetric(seed);
    if (suite == "ep-identity") return ep_identity(seed);
    throw ValidationError("unknown verify suite '" + suite + "'");
}

} // namespace tpsd
