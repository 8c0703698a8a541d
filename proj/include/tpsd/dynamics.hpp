#pragma once

#include "tpsd/geometry.hpp"
#include "tpsd/models.hpp"
#include "tpsd/randomness.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tpsd {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Runs fn(0..count-1) on `threads` workers; fn must write only to its own index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

int default_threads();

/// A time series: `t` plus named columns of equal length.
struct ExperimentRecord {
    std::string name;
    KeyValues config;
    std::vector<double> times;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::vector<std::pair<std::string, double>> aggregates;

    const std::vector<double>& column(const std::string& key) const;
    double aggregate(const std::string& key) const;
};

/// A CSV table with string cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table to_table(const ExperimentRecord& record);
std::string to_csv(const Table& table);
std::string format_number(double x);

struct Sidecar {
    KeyValues config;
    std::vector<std::pair<std::string, std::uint64_t>> seeds;
    std::vector<std::pair<std::string, double>> aggregates;
    double wall_clock_seconds = 0.0;
};

/// JSON text of a sidecar (config, seeds, version, generator, columns, aggregates, timestamps).
std::string sidecar_json(const Sidecar& meta, const Table& table);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json; returns the CSV path.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const Table& table,
                                  const Sidecar& meta);

/// "a:step:b" (inclusive, endpoint snapped) or a comma-separated list.
std::vector<double> parse_times(const std::string& text);

/// 0, geometric points on [1e-3, 1), then steps of `linear_step` on [1, t_max].
std::vector<double> default_time_grid(double t_max = 100.0, int geometric_points = 31, double linear_step = 0.5);

/// One eigendecomposition, then Phi(exp(iHt)) per time point.
ExperimentRecord phi_time_series(const BuiltModel& model, const AlgebraSet& aset, const std::vector<double>& times,
                                 int threads = 1);

/// Per-time evaluation of arbitrary columns on exp(iHt).
ExperimentRecord evolve_columns(const DenseOperator& h, const std::vector<double>& times,
                                const std::vector<std::string>& names,
                                const std::function<std::vector<double>(const DenseOperator&)>& eval, int threads);

struct TimeWindow {
    double t0 = 50.0;
    double t1 = 550.0;
};

struct LongTimeAverage {
    double value = 0.0;
    double std_error = 0.0;
    double first_half = 0.0;
    double second_half = 0.0;
    bool converged = false;
    int samples = 0;
};

/// Midpoint-grid average of Phi over the window; converged iff the half-window means agree
/// within the configured tolerance.
LongTimeAverage long_time_average(const BuiltModel& model, const AlgebraSet& aset, TimeWindow window,
                                  int n_samples, int threads = 1);

LongTimeAverage long_time_average(const EigenSystem& es, const AlgebraSet& aset, TimeWindow window, int n_samples,
                                  int threads = 1);

/// Pearson correlation coefficient.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct Fig1Options {
    int n = 8;
    int n1 = 2;
    std::vector<double> times = default_time_grid();
    int threads = 1;
};

/// Phi (bipartite weights) and e_p on the first-n1-qubits cut, integrable and nonintegrable TFIM.
/// Records carry aggregates "pearson" and "max_gap".
std::vector<ExperimentRecord> fig1_pipeline(const Fig1Options& options);

struct Fig2Options {
    int n = 8;
    std::vector<int> clusters{1, 2, 4, 8};
    TimeWindow window{};
    int samples = 64;
    int threads = 1;
};

struct Fig2Row {
    std::string regime;
    int clusters = 1;
    LongTimeAverage average;
    double haar = 0.0;
};

std::vector<Fig2Row> fig2_pipeline(const Fig2Options& options);

/// One table per cluster count M (rows: regimes).
Table fig2_table(const std::vector<Fig2Row>& rows, int clusters);

struct Fig3Options {
    std::vector<int> tfim_sizes{4, 6, 8};
    std::vector<int> fragmented_sizes{3, 4, 5};
    TimeWindow window{};
    int samples = 64;
    /// Disorder realizations per disordered model; 0 means floor(200 / N).
    int realizations = 4;
    /// Average the fragmented models over realizations instead of a single draw.
    bool average_fragmented = false;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct Fig3Row {
    std::string family;
    std::string regime;
    int n = 0;
    Index dim = 0;
    double phi_bar = 0.0;
    double std_error = 0.0;
    double typical = 0.0;
    int realizations = 1;
    bool converged = true;
    double deviation() const;
};

std::vector<Fig3Row> fig3_pipeline(const Fig3Options& options);

Table fig3_table(const std::vector<Fig3Row>& rows);

} // namespace tpsd
