#include <doctest.h>

#include "tpsd/errors.hpp"
#include "tpsd/dynamics.hpp"
#include "tpsd/oracles.hpp"
#include "tpsd/scrambling.hpp"

#include <atomic>
#include <cmath>

using namespace tpsd;

namespace {

BuiltModel tfim_nonintegrable(int n) { return build_tfim(n, 0.5, std::vector<double>(static_cast<std::size_t>(n), 1.05)); }

Matrix local_product(const TensorFactorization& tf, SeededGenerator& g) {
    Matrix u = Matrix::Identity(1, 1);
    for (int q : tf.dims()) u = kron(u, haar_unitary(q, g).matrix());
    return u;
}

} // namespace

TEST_CASE("Phi time series basics") {
    const BuiltModel m = tfim_nonintegrable(4);
    const AlgebraSet aset = AlgebraSet::full(m.tf);
    const std::vector<double> times = parse_times("0:0.5:20");
    const ExperimentRecord r = phi_time_series(m, aset, times);
    const auto& phi = r.column("phi");
    CHECK(r.times.size() == times.size());
    CHECK(phi.size() == times.size());
    CHECK(phi[0] == 0.0);
    for (double v : phi) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
    }

    const BuiltModel local = build_tfim(4, 0.5, {1.0, 0.7, 1.3, 0.2}, {false});
    for (double v : phi_time_series(local, AlgebraSet::full(local.tf), times).column("phi")) CHECK(v < 1e-12);
}

TEST_CASE("short-time law on the nonintegrable chain") {
    const BuiltModel m = tfim_nonintegrable(4);
    const double coeff = short_time_coefficient(m.hamiltonian, m.tf);
    const ExperimentRecord r = phi_time_series(m, AlgebraSet::full(m.tf), {1e-3, 3e-3, 1e-2});
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        const double t = r.times[k];
        CHECK(std::abs(r.column("phi")[k] - coeff * t * t) / (coeff * t * t) < 1e-2);
    }
}

TEST_CASE("time series are deterministic and thread-count independent") {
    const BuiltModel m = tfim_nonintegrable(5);
    const AlgebraSet aset = AlgebraSet::full(m.tf);
    const auto times = parse_times("0:0.25:10");
    const std::string a = to_csv(to_table(phi_time_series(m, aset, times, 1)));
    const std::string b = to_csv(to_table(phi_time_series(m, aset, times, 1)));
    const std::string c = to_csv(to_table(phi_time_series(m, aset, times, 3)));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.rfind("t,phi\n", 0) == 0);
}

TEST_CASE("conjugating the Hamiltonian by local unitaries leaves the series unchanged") {
    const BuiltModel m = tfim_nonintegrable(4);
    SeededGenerator g(51);
    const Matrix v = local_product(m.tf, g);
    BuiltModel rotated = m;
    rotated.hamiltonian = DenseOperator::hermitian(v * m.hamiltonian.matrix() * v.adjoint());
    const AlgebraSet aset = AlgebraSet::full(m.tf);
    const auto times = parse_times("0:0.7:14");
    const auto& a = phi_time_series(m, aset, times).column("phi");
    const auto& b = phi_time_series(rotated, aset, times).column("phi");
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-10);
}

TEST_CASE("long-time averages") {
    const BuiltModel local = build_tfim(4, 0.5, {1.0, 0.7, 1.3, 0.2}, {false});
    const LongTimeAverage zero = long_time_average(local, AlgebraSet::full(local.tf), {50.0, 550.0}, 32);
    CHECK(zero.value < 1e-12);
    CHECK(zero.converged);
    CHECK(zero.samples == 32);

    for (int n : {4, 6}) {
        const BuiltModel m = tfim_nonintegrable(n);
        const AlgebraSet aset = AlgebraSet::full(m.tf);
        const LongTimeAverage lta = long_time_average(m, aset, {50.0, 500.0}, 256);
        const double exact = oracle::long_time_phi_resonance(m.hamiltonian, m.tf);
        CHECK(std::abs(lta.value - exact) < 0.02);
        CHECK(lta.converged);
    }
    CHECK_THROWS(long_time_average(local, AlgebraSet::full(local.tf), {50.0, 550.0}, 8));
    CHECK_THROWS(long_time_average(local, AlgebraSet::full(local.tf), {60.0, 50.0}, 32));
}

TEST_CASE("time grids") {
    CHECK(parse_times("0:0.1:10").size() == 101);
    CHECK(parse_times("0:0.1:10").back() == doctest::Approx(10.0));
    CHECK(parse_times("0.5,1,2.5") == std::vector<double>{0.5, 1.0, 2.5});
    CHECK_THROWS(parse_times("-1,2"));
    CHECK_THROWS(parse_times("0:0:1"));
    CHECK_THROWS(parse_times("x"));
    const auto grid = default_time_grid();
    CHECK(grid.front() == 0.0);
    CHECK(grid[1] == doctest::Approx(1e-3));
    CHECK(grid.back() == doctest::Approx(100.0));
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t k) { hits[k]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS(parallel_for(10, 2, [](std::size_t k) {
        if (k == 7) throw NumericError("boom");
    }));
}

TEST_CASE("Pearson correlation") {
    CHECK(pearson({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
    CHECK(pearson({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));
    CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
}

TEST_CASE("figure pipelines on small chains") {
    Fig1Options f1;
    f1.n = 5;
    f1.times = parse_times("0:0.5:10");
    const auto records = fig1_pipeline(f1);
    REQUIRE(records.size() == 2);
    for (const auto& r : records) {
        CHECK(r.column("phi")[0] == 0.0);
        CHECK(std::abs(r.column("ep")[0]) < 1e-12);
        CHECK(r.aggregate("pearson") > 0.99);
        CHECK(r.aggregate("max_gap") > 0.0);
    }

    Fig2Options f2;
    f2.n = 4;
    f2.clusters = {1, 2, 4};
    f2.samples = 16;
    f2.window = {10.0, 60.0};
    const auto rows = fig2_pipeline(f2);
    for (const auto& row : rows) {
        if (row.clusters == 1) {
            CHECK(row.average.value == 0.0);
            CHECK(row.haar == 0.0);
        } else {
            CHECK(row.haar == doctest::Approx(typical_phi_clustered(16, row.clusters)));
        }
    }
    const Table t = fig2_table(rows, 2);
    CHECK(t.rows.size() == 2);
    f2.clusters = {3};
    CHECK_THROWS_AS(fig2_pipeline(f2), InvalidClusteringError);

    Fig3Options f3;
    f3.tfim_sizes = {4};
    f3.fragmented_sizes = {3};
    f3.samples = 16;
    f3.realizations = 2;
    f3.window = {10.0, 60.0};
    const auto scaling = fig3_pipeline(f3);
    CHECK(scaling.size() == 6);
    const Table st = fig3_table(scaling);
    CHECK(st.header.front() == "family");
    CHECK(st.rows.size() == scaling.size());
    for (const auto& row : scaling) {
        CHECK(row.phi_bar >= 0.0);
        CHECK(row.deviation() == doctest::Approx(std::abs(row.phi_bar - row.typical)));
    }
}
