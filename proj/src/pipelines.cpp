#include "tpsd/dynamics.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"
#include "tpsd/scrambling.hpp"

#include <algorithm>
#include <cmath>

namespace tpsd {

namespace {

BuiltModel tfim_for(TfimRegime regime, int n, std::uint64_t seed, std::uint64_t realization) {
    ModelConfig c;
    c.family = ModelFamily::tfim;
    c.n = n;
    c.regime = regime;
    c.disorder_seed = seed;
    return build_model(c, realization);
}

AlgebraSet site_algebras(const TensorFactorization& tf) { return AlgebraSet::full(tf); }

AlgebraSet clustered(int n_qubits, int clusters) {
    if (clusters < 1 || n_qubits % clusters != 0)
        throw InvalidClusteringError("cluster count " + std::to_string(clusters) + " does not divide N = " +
                              std::to_string(n_qubits));
    return AlgebraSet::full(TensorFactorization(Dims(static_cast<std::size_t>(clusters), 1 << (n_qubits / clusters))));
}

} // namespace

std::vector<ExperimentRecord> fig1_pipeline(const Fig1Options& o) {
    if (o.n1 < 1 || o.n1 >= o.n) throw ValidationError("fig1: need 1 <= n1 < N");
    if (2 * o.n1 > o.n) throw ValidationError("fig1: the first block must be the smaller one (n1 <= N / 2)");
    const int d1 = 1 << o.n1;
    const int d2 = 1 << (o.n - o.n1);
    const TensorFactorization cut({d1, d2});
    std::vector<ExperimentRecord> out;
    for (TfimRegime regime : {TfimRegime::integrable, TfimRegime::nonintegrable}) {
        const BuiltModel model = tfim_for(regime, o.n, 0, 0);
        auto eval = [&](const DenseOperator& u) {
            const double s12 = man_from_correlator_norm(d1, correlator_norm_sq(cut, u.matrix(), 0, 0));
            const double s11 = man_from_correlator_norm(d1, correlator_norm_sq(cut, u.matrix(), 0, 1));
            return std::vector<double>{phi_bipartite_from_man(d1, d2, s12, s11),
                                       entangling_power_from_man(d1, d2, s12, s11)};
        };
        ExperimentRecord r = evolve_columns(model.hamiltonian, o.times, {"phi", "ep"}, eval, o.threads);
        r.name = std::string("fig1_") + to_string(regime);
        r.config = model.provenance;
        r.config.emplace_back("n1", std::to_string(o.n1));
        const auto& phi = r.column("phi");
        const auto& ep = r.column("ep");
        double gap = 0.0;
        for (std::size_t k = 0; k < phi.size(); ++k) gap = std::max(gap, std::abs(phi[k] - ep[k]));
        r.aggregates.emplace_back("pearson", pearson(phi, ep));
        r.aggregates.emplace_back("max_gap", gap);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Fig2Row> fig2_pipeline(const Fig2Options& o) {
    for (int m : o.clusters) clustered(o.n, m); // validate before any heavy work
    const double d = std::ldexp(1.0, o.n);
    std::vector<Fig2Row> rows;
    for (TfimRegime regime : {TfimRegime::integrable, TfimRegime::nonintegrable}) {
        const EigenSystem es = herm_eig(tfim_for(regime, o.n, 0, 0).hamiltonian);
        for (int m : o.clusters) {
            Fig2Row row;
            row.regime = to_string(regime);
            row.clusters = m;
            row.average = long_time_average(es, clustered(o.n, m), o.window, o.samples, o.threads);
            row.haar = m == 1 ? 0.0 : typical_phi_clustered(static_cast<std::int64_t>(d), m);
            rows.push_back(row);
        }
    }
    return rows;
}

Table fig2_table(const std::vector<Fig2Row>& rows, int clusters) {
    Table t;
    t.header = {"regime", "M", "phi_bar", "std_error", "haar", "deviation", "first_half", "second_half", "converged"};
    for (const Fig2Row& r : rows) {
        if (r.clusters != clusters) continue;
        t.rows.push_back({r.regime, std::to_string(r.clusters), format_number(r.average.value),
                          format_number(r.average.std_error), format_number(r.haar),
                          format_number(std::abs(r.average.value - r.haar)), format_number(r.average.first_half),
                          format_number(r.average.second_half), r.average.converged ? "1" : "0"});
    }
    return t;
}

double Fig3Row::deviation() const { return std::abs(phi_bar - typical); }

std::vector<Fig3Row> fig3_pipeline(const Fig3Options& o) {
    std::vector<Fig3Row> rows;
    auto realizations_for = [&](int n) { return o.realizations > 0 ? o.realizations : disorder_repetitions(n); };

    auto average_over = [&](Fig3Row row, int count, const std::function<BuiltModel(std::uint64_t)>& make) {
        std::vector<double> values;
        double single_error = 0.0;
        double first = 0.0, second = 0.0;
        for (int r = 0; r < count; ++r) {
            const BuiltModel model = make(static_cast<std::uint64_t>(r));
            const LongTimeAverage lta =
                long_time_average(model, site_algebras(model.tf), o.window, o.samples, o.threads);
            values.push_back(lta.value);
            single_error = lta.std_error;
            first += lta.first_half / count;
            second += lta.second_half / count;
            row.dim = model.tf.dim();
            row.typical = typical_phi(site_algebras(model.tf));
        }
        const Estimate e = summarize(values);
        row.phi_bar = e.mean;
        row.std_error = count > 1 ? e.std_error : single_error;
        row.realizations = count;
        row.converged = std::abs(first - second) < kTol.convergence;
        rows.push_back(row);
    };

    for (int n : o.tfim_sizes) {
        for (TfimRegime regime :
             {TfimRegime::nonintegrable, TfimRegime::integrable, TfimRegime::anderson, TfimRegime::mbl}) {
            Fig3Row row;
            row.family = "tfim";
            row.regime = to_string(regime);
            row.n = n;
            const bool disordered = regime == TfimRegime::anderson || regime == TfimRegime::mbl;
            average_over(row, disordered ? realizations_for(n) : 1,
                         [&](std::uint64_t r) { return tfim_for(regime, n, o.seed, r); });
        }
    }
    for (int n : o.fragmented_sizes) {
        for (ModelFamily family : {ModelFamily::temperley_lieb, ModelFamily::tjz}) {
            Fig3Row row;
            row.family = to_string(family);
            row.regime = "fragmented";
            row.n = n;
            ModelConfig c;
            c.family = family;
            c.n = n;
            c.disorder_seed = o.seed;
            average_over(row, o.average_fragmented ? realizations_for(n) : 1,
                         [&](std::uint64_t r) { return build_model(c, r); });
        }
    }
    return rows;
}

Table fig3_table(const std::vector<Fig3Row>& rows) {
    Table t;
    t.header = {"family", "regime",    "N",          "d",           "log_d",        "phi_bar",
                "std_error", "typical", "deviation", "log_deviation", "realizations", "converged"};
    for (const Fig3Row& r : rows) {
        const double dev = r.deviation();
        t.rows.push_back({r.family, r.regime, std::to_string(r.n), std::to_string(r.dim),
                          format_number(std::log(static_cast<double>(r.dim))), format_number(r.phi_bar),
                          format_number(r.std_error), format_number(r.typical), format_number(dev),
                          format_number(std::log(dev)), std::to_string(r.realizations), r.converged ? "1" : "0"});
    }
    return t;
}

} // namespace tpsd
