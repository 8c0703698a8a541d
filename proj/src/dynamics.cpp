#include "tpsd/dynamics.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace tpsd {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), count);
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                fn(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

int default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

const std::vector<double>& ExperimentRecord::column(const std::string& key) const {
    for (const auto& [name, values] : series)
        if (name == key) return values;
    throw ValidationError("record has no column '" + key + "'");
}

double ExperimentRecord::aggregate(const std::string& key) const {
    for (const auto& [name, value] : aggregates)
        if (name == key) return value;
    throw ValidationError("record has no aggregate '" + key + "'");
}

std::vector<double> parse_times(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(x) || x < 0.0)
            throw ValidationError("times: '" + s + "' is not a finite nonnegative number");
        return x;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw ValidationError("times: expected start:step:stop");
        const double a = number(parts[0]), step = number(parts[1]), b = number(parts[2]);
        if (!(step > 0.0) || b < a) throw ValidationError("times: need step > 0 and stop >= start");
        const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
        for (long long k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
    if (out.empty()) throw ValidationError("times: empty list");
    return out;
}

std::vector<double> default_time_grid(double t_max, int geometric_points, double linear_step) {
    std::vector<double> out{0.0};
    for (int k = 0; k < geometric_points; ++k)
        out.push_back(std::pow(10.0, -3.0 + 3.0 * k / geometric_points));
    for (double t = 1.0; t <= t_max + 1e-12; t += linear_step) out.push_back(t);
    return out;
}

ExperimentRecord evolve_columns(const DenseOperator& h, const std::vector<double>& times,
                                const std::vector<std::string>& names,
                                const std::function<std::vector<double>(const DenseOperator&)>& eval, int threads) {
    for (double t : times)
        if (!std::isfinite(t) || t < 0.0) throw ValidationError("times must be finite and nonnegative");
    const EigenSystem es = herm_eig(h);
    std::vector<std::vector<double>> rows(times.size());
    parallel_for(times.size(), threads, [&](std::size_t k) {
        rows[k] = eval(propagator(es, times[k]));
        if (rows[k].size() != names.size()) throw ShapeError("evolve_columns: column count mismatch");
    });
    ExperimentRecord r;
    r.times = times;
    for (std::size_t c = 0; c < names.size(); ++c) {
        std::vector<double> col(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) col[k] = rows[k][c];
        r.series.emplace_back(names[c], std::move(col));
    }
    return r;
}

ExperimentRecord phi_time_series(const BuiltModel& model, const AlgebraSet& aset, const std::vector<double>& times,
                                 int threads) {
    if (aset.dim() != model.tf.dim()) throw ShapeError("phi_time_series: algebra set does not match the model");
    ExperimentRecord r = evolve_columns(
        model.hamiltonian, times, {"phi"},
        [&](const DenseOperator& u) { return std::vector<double>{phi_correlator(aset, u).value}; }, threads);
    r.config = model.provenance;
    return r;
}

LongTimeAverage long_time_average(const EigenSystem& es, const AlgebraSet& aset, TimeWindow window, int n_samples,
                                  int threads) {
    if (!(window.t1 > window.t0) || window.t0 < 0.0) throw ValidationError("long_time_average: need t1 > t0 >= 0");
    if (n_samples < 16) throw ValidationError("long_time_average: need at least 16 samples");
    if (n_samples % 2) ++n_samples;
    const double dt = (window.t1 - window.t0) / n_samples;
    std::vector<double> values(static_cast<std::size_t>(n_samples));
    parallel_for(values.size(), threads, [&](std::size_t k) {
        const double t = window.t0 + (static_cast<double>(k) + 0.5) * dt;
        values[k] = phi_correlator(aset, propagator(es, t)).value;
    });
    LongTimeAverage out;
    const Estimate all = summarize(values);
    const std::size_t half = values.size() / 2;
    out.value = all.mean;
    out.std_error = all.std_error;
    out.first_half = summarize({values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half)}).mean;
    out.second_half = summarize({values.begin() + static_cast<std::ptrdiff_t>(half), values.end()}).mean;
    out.converged = std::abs(out.first_half - out.second_half) < kTol.convergence;
    out.samples = n_samples;
    return out;
}

LongTimeAverage long_time_average(const BuiltModel& model, const AlgebraSet& aset, TimeWindow window, int n_samples,
                                  int threads) {
    if (aset.dim() != model.tf.dim()) throw ShapeError("long_time_average: algebra set does not match the model");
    return long_time_average(herm_eig(model.hamiltonian), aset, window, n_samples, threads);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ShapeError("pearson: need two equal-length series");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace tpsd
