#include "tpsd/dynamics.hpp"
#include "tpsd/geometry.hpp"
#include "tpsd/oracles.hpp"
#include "tpsd/randomness.hpp"
#include "tpsd/scrambling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

using namespace tpsd;

namespace {

// Tolerances and budgets, fixed here so a run cannot loosen them.
constexpr double kRouteManTol = 1e-10;
constexpr double kRouteProjTol = 1e-9;
constexpr double kRouteSeconds = 30.0;
constexpr double kBridgeTol = 1e-10;
constexpr double kBridgeSeconds = 60.0;
constexpr double kFreeTol = 1e-10;
constexpr double kMaximizerTol = 1e-10;
constexpr double kMaximizerSeconds = 5.0;
constexpr double kEpTol = 1e-10;
constexpr double kHaarTarget = 0.952941;
constexpr double kHaarSigmas = 3.0;
constexpr double kHaarSeconds = 120.0;
constexpr double kShortRelTol = 1e-3;
constexpr double kShortMinSlope = 2.8;
constexpr double kEntropySigmas = 3.0;
constexpr double kCgpTol = 1e-12;
constexpr double kPearsonMin = 0.99;
constexpr double kMinGap = 1e-3;
constexpr double kFig1Seconds = 300.0;
constexpr double kLocalizedRatio = 2.0;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Matrix local_product(const TensorFactorization& tf, SeededGenerator& g) {
    Matrix u = Matrix::Identity(1, 1);
    for (int q : tf.dims()) u = kron(u, haar_unitary(q, g).matrix());
    return u;
}

double phi_of(const AlgebraSet& aset, const Matrix& u) {
    return phi_correlator(aset, DenseOperator::unitary_unchecked(u)).value;
}

Outcome route_agreement() {
    const Dims shapes[] = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 3}};
    const SeededGenerator root(kSeed);
    double man_gap = 0.0;
    double proj_gap = 0.0;
    for (int k = 0; k < 50; ++k) {
        const AlgebraSet aset = AlgebraSet::full(TensorFactorization(shapes[k % 4]));
        SeededGenerator g = root.fork(static_cast<std::uint64_t>(k));
        const DenseOperator u = haar_unitary(aset.dim(), g);
        const double c = phi_correlator(aset, u).value;
        man_gap = std::max(man_gap, std::abs(c - phi_man(aset, u).value));
        proj_gap = std::max(proj_gap, std::abs(c - phi_projection(aset, u).value));
    }
    return {man_gap < kRouteManTol && proj_gap < kRouteProjTol,
            fmt("max |corr-man| = %.2e, max |corr-proj| = %.2e", man_gap, proj_gap)};
}

Outcome bridge_identity() {
    const Dims shapes[] = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 3}, {4, 4}, {2, 2, 2, 2}, {2, 4}, {3, 5}, {2, 2, 4}};
    const SeededGenerator root(kSeed + 1);
    double gap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const TensorFactorization tf(shapes[k % 10]);
        SeededGenerator g = root.fork(static_cast<std::uint64_t>(k));
        const DenseOperator u = haar_unitary(tf.dim(), g);
        for (int i = 0; i < tf.sites(); ++i)
            for (int j = 0; j < tf.sites(); ++j)
                gap = std::max(gap, std::abs(man(tf, u, i, j).value - oracle::man_swap_trace(tf, u, i, j)));
    }
    return {gap < kBridgeTol, fmt("max |bridge - swap trace| = %.2e over 20 unitaries, d <= 16", gap)};
}

Outcome faithfulness() {
    const TensorFactorization tf({2, 2, 2});
    const AlgebraSet aset = AlgebraSet::full(tf);
    const int perms[][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    SeededGenerator g(kSeed + 2);
    double free_max = 0.0;
    double sandwich_gap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Matrix l = permutation_operator(perms[k % 6], tf.dims()).matrix();
        free_max = std::max(free_max, phi_of(aset, l * local_product(tf, g)));
        const DenseOperator u = haar_unitary(8, g);
        const Matrix sandwiched = local_product(tf, g) * u.matrix() * local_product(tf, g);
        sandwich_gap = std::max(sandwich_gap, std::abs(phi_of(aset, sandwiched) - phi_correlator(aset, u).value));
    }
    return {free_max < kFreeTol && sandwich_gap < kFreeTol,
            fmt("max Phi(free) = %.2e, max |Phi(V1 U V2) - Phi(U)| = %.2e", free_max, sandwich_gap)};
}

Outcome maximizer() {
    const TensorFactorization tf({3, 3});
    const DenseOperator u = two_unitary_example(3);
    const double phi = phi_correlator(AlgebraSet::full(tf), u).value;
    const double residual = check_max_condition(u, tf, Matrix::Identity(9, 9)).maxCoeff();
    return {std::abs(phi - 1.0) < kMaximizerTol && residual < kMaximizerTol,
            fmt("Phi = %.15f, max condition residual = %.2e", phi, residual)};
}

Outcome symmetric_ep() {
    SeededGenerator g(kSeed + 3);
    double gap = 0.0;
    for (int q : {2, 3}) {
        const AlgebraSet aset = AlgebraSet::full(TensorFactorization({q, q}));
        for (int k = 0; k < 20; ++k) {
            const DenseOperator u = haar_unitary(q * q, g);
            gap = std::max(gap, std::abs(phi_correlator(aset, u).value - entangling_power(u, q, q)));
        }
    }
    return {gap < kEpTol, fmt("max |Phi - e_p| = %.2e on [2,2] and [3,3]", gap)};
}

Outcome haar_typical() {
    const AlgebraSet aset = AlgebraSet::full(TensorFactorization({2, 2, 2, 2}));
    std::vector<double> values(500);
    const SeededGenerator root(kSeed + 4);
    parallel_for(values.size(), default_threads(), [&](std::size_t k) {
        SeededGenerator g = root.fork(k);
        values[k] = phi_correlator(aset, haar_unitary(16, g)).value;
    });
    const Estimate e = summarize(values);
    const double z = std::abs(e.mean - kHaarTarget) / e.std_error;
    return {z < kHaarSigmas, fmt("mean = %.6f +- %.6f, |z| = %.2f", e.mean, e.std_error, z)};
}

Outcome short_time() {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const DenseOperator h = DenseOperator::hermitian(kron(z, z));
    const TensorFactorization tf({2, 2});
    const AlgebraSet aset = AlgebraSet::full(tf);
    const EigenSystem es = herm_eig(h);
    const double exact = 8.0 / 3.0;
    double s24 = 0.0;
    double s4 = 0.0;
    std::vector<double> lt;
    std::vector<double> lr;
    for (int k = 0; k < 11; ++k) {
        const double t = 1e-3 * std::pow(10.0, k / 10.0);
        const double phi = phi_correlator(aset, propagator(es, t)).value;
        s24 += phi * t * t;
        s4 += t * t * t * t;
        lt.push_back(std::log(t));
        lr.push_back(std::log(std::abs(phi - exact * t * t)));
    }
    const double fit = s24 / s4;
    const double mt = std::accumulate(lt.begin(), lt.end(), 0.0) / lt.size();
    const double mr = std::accumulate(lr.begin(), lr.end(), 0.0) / lr.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < lt.size(); ++k) {
        num += (lt[k] - mt) * (lr[k] - mr);
        den += (lt[k] - mt) * (lt[k] - mt);
    }
    const double slope = num / den;
    const double rel = std::abs(fit - exact) / exact;
    const double coeff_rel = std::abs(short_time_coefficient(h, tf) - exact) / exact;
    return {rel < kShortRelTol && coeff_rel < kShortRelTol && slope >= kShortMinSlope,
            fmt("fit = %.8f (rel err %.2e), residual slope = %.3f", fit, rel, slope)};
}

Outcome entropy_route() {
    SeededGenerator g(kSeed + 5);
    const SeededGenerator mc(kSeed + 6);
    double worst = 0.0;
    for (int q : {2, 3}) {
        const TensorFactorization tf({q, q});
        const DenseOperator u = haar_unitary(q * q, g);
        const Estimate e = phi_entropy_mc(tf, u, 2000, mc.fork(static_cast<std::uint64_t>(q)));
        worst = std::max(worst, std::abs(e.mean - phi_correlator(AlgebraSet::full(tf), u).value) / e.std_error);
    }
    return {worst < kEntropySigmas, fmt("max |z| = %.2f at 2000 samples on [2,2] and [3,3]", worst)};
}

Outcome coherence() {
    SeededGenerator g(kSeed + 7);
    const Matrix basis = haar_unitary(8, g).matrix();
    const AlgebraSet mas = AlgebraSet::max_abelian(basis);
    double gap = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Matrix u = haar_unitary(8, g).matrix();
        const Matrix ub = basis.adjoint() * u * basis;
        double sum = 0.0;
        for (Index r = 0; r < 8; ++r)
            for (Index c = 0; c < 8; ++c) sum += std::pow(std::norm(ub(r, c)), 2);
        const double explicit_cgp = (1.0 - sum / 8.0) / (1.0 - 1.0 / 8.0);
        gap = std::max(gap, std::abs(generalized_phi(mas, DenseOperator::unitary_unchecked(u)).value - explicit_cgp));
    }
    return {gap < kCgpTol, fmt("max |Phi_MaxAbelian - C_B/(1-1/d)| = %.2e", gap)};
}

Outcome fig1() {
    Fig1Options opt;
    opt.threads = default_threads();
    bool ok = true;
    std::string detail;
    for (const auto& r : fig1_pipeline(opt)) {
        const double p = r.aggregate("pearson");
        const double gap = r.aggregate("max_gap");
        ok = ok && p > kPearsonMin && gap > kMinGap;
        detail += (detail.empty() ? "" : "; ") + r.name + fmt(": r = %.6f, max gap = %.4f", p, gap);
    }
    return {ok, detail};
}

Outcome fig2() {
    Fig2Options opt;
    opt.clusters = {2, 4, 8};
    opt.threads = default_threads();
    std::map<int, std::map<std::string, double>> dev;
    for (const auto& row : fig2_pipeline(opt)) dev[row.clusters][row.regime] = std::abs(row.average.value - row.haar);
    bool ok = true;
    std::string detail;
    for (const auto& [m, d] : dev) {
        ok = ok && d.at("nonintegrable") < d.at("integrable");
        detail += (detail.empty() ? "" : "; ") + fmt("M=%.0f: %.4f vs %.4f", m, d.at("nonintegrable"), d.at("integrable"));
    }
    return {ok, detail};
}

Outcome fig3() {
    Fig3Options opt;
    opt.threads = default_threads();
    std::map<std::string, std::map<int, Fig3Row>> rows;
    for (const auto& r : fig3_pipeline(opt))
        if (r.family == "tfim") rows[r.regime][r.n] = r;
    bool ordering = true;
    for (int n : opt.tfim_sizes) {
        const double localized = std::max(rows["anderson"][n].phi_bar, rows["mbl"][n].phi_bar);
        ordering = ordering && rows["nonintegrable"][n].phi_bar > rows["integrable"][n].phi_bar &&
                   rows["integrable"][n].phi_bar > localized;
    }
    double worst_ratio = 1.0;
    for (const char* regime : {"anderson", "mbl"}) {
        double lo = 1e300;
        double hi = 0.0;
        for (int n : opt.tfim_sizes) {
            lo = std::min(lo, rows[regime][n].deviation());
            hi = std::max(hi, rows[regime][n].deviation());
        }
        worst_ratio = std::max(worst_ratio, hi / lo);
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < opt.tfim_sizes.size(); ++k)
        decreasing = decreasing && rows["nonintegrable"][opt.tfim_sizes[k]].deviation() <
                                       rows["nonintegrable"][opt.tfim_sizes[k - 1]].deviation();
    return {ordering && worst_ratio < kLocalizedRatio && decreasing,
            fmt("ordering %.0f, localized max/min deviation %.3f, nonintegrable decreasing %.0f", ordering ? 1.0 : 0.0,
                worst_ratio, decreasing ? 1.0 : 0.0)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"route agreement", route_agreement, kRouteSeconds},
        {"bridge identity", bridge_identity, kBridgeSeconds},
        {"faithfulness and invariance", faithfulness, 0.0},
        {"2-unitary maximizer", maximizer, kMaximizerSeconds},
        {"symmetric entangling power", symmetric_ep, 0.0},
        {"Haar typical value", haar_typical, kHaarSeconds},
        {"short-time law", short_time, 0.0},
        {"entropy route", entropy_route, 0.0},
        {"coherence generating power", coherence, 0.0},
        {"fig1 correlation", fig1, kFig1Seconds},
        {"fig2 cluster deviations", fig2, 0.0},
        {"fig3 ergodic hierarchy", fig3, 0.0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            o.passed = false;
            o.detail += fmt(" [over budget %.0f s]", c.budget_seconds);
        }
        if (!o.passed) ++failed;
        std::printf("%s  %-30s %6.2fs  %s\n", o.passed ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
