#include "tpsd/cli.hpp"

#include "tpsd/dynamics.hpp"
#include "tpsd/errors.hpp"
#include "tpsd/geometry.hpp"
#include "tpsd/models.hpp"
#include "tpsd/randomness.hpp"
#include "tpsd/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace tpsd {

namespace {

struct Common {
    std::uint64_t seed = 0;
    int threads = default_threads();
    std::string output;
};

struct PhiArgs {
    std::string model;
    int n = 4;
    std::string regime = "nonintegrable";
    std::optional<double> h;
    std::string g, j, t, jz, hz, gz;
    std::optional<std::uint64_t> disorder_seed;
    int clusters = 0;
    std::string times = "0:0.1:10";
    std::string unitary;
    std::string dims;
    int q = 3;
    std::string name = "phi";
};

struct FigureArgs {
    std::string which = "all";
    int n = 0;
    bool large = false;
    int samples = 64;
    double t0 = 50.0;
    double t1 = 550.0;
    int realizations = -1;
    std::vector<int> clusters;
    bool average_fragmented = false;
};

struct TypicalArgs {
    std::string dims;
    std::string qubits;
    std::int64_t d = 0;
    int clusters = 0;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<int> parse_ints(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ValidationError(std::string(what) + ": bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

std::filesystem::path output_dir(const Common& c) {
    if (!c.output.empty()) return c.output;
    if (const char* env = std::getenv("TPSD_OUTPUT_DIR"); env && *env) return env;
    return "tpsd-output";
}

KeyValues echo_options(const CLI::App& app) {
    KeyValues kv;
    kv.emplace_back("subcommand", app.get_name());
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) continue;
        std::string value;
        for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        kv.emplace_back(opt->get_single_name(), value);
    }
    return kv;
}

KeyValues concat(KeyValues a, const KeyValues& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (int x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

KeyValues window_values(const TimeWindow& w, int samples) {
    return {{"t0", format_number(w.t0)}, {"t1", format_number(w.t1)}, {"samples", std::to_string(samples)}};
}

DenseOperator named_unitary(const PhiArgs& a, const TensorFactorization& tf, std::uint64_t seed) {
    const Index d = tf.dim();
    if (a.unitary == "identity") return DenseOperator::identity(d);
    if (a.unitary == "haar") {
        SeededGenerator g(seed);
        return haar_unitary(d, g);
    }
    if (a.unitary == "swap") {
        if (tf.sites() != 2) throw ValidationError("swap needs two sites");
        const int perm[] = {1, 0};
        return permutation_operator(perm, tf.dims());
    }
    if (a.unitary == "cnot") {
        if (tf.dims() != Dims{2, 2}) throw ValidationError("cnot needs --dims 2,2");
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        return DenseOperator::unitary(m);
    }
    throw ValidationError("unknown unitary '" + a.unitary + "'");
}

int cmd_phi(const CLI::App& app, const PhiArgs& a, const Common& c, std::ostream& out) {
    const Stopwatch clock;
    const std::filesystem::path dir = output_dir(c);
    if (!a.unitary.empty()) {
        if (!a.model.empty()) throw ValidationError("--unitary and --model are mutually exclusive");
        const TensorFactorization tf = a.unitary == "two-unitary"
                                           ? TensorFactorization({a.q, a.q})
                                           : TensorFactorization(parse_ints(a.dims.empty() ? "2,2" : a.dims, "--dims"));
        const DenseOperator u = a.unitary == "two-unitary" ? two_unitary_example(a.q) : named_unitary(a, tf, c.seed);
        const double phi = phi_correlator(AlgebraSet::full(tf), u).value;
        ExperimentRecord r;
        r.times = {0.0};
        r.series.emplace_back("phi", std::vector<double>{phi});
        const Table table = to_table(r);
        const auto path =
            write_table(dir, a.name, table, {echo_options(app), {{"seed", c.seed}}, {}, clock.seconds()});
        out << "phi = " << format_number(phi) << "\nwrote " << path.string() << "\n";
        return 0;
    }
    if (a.model.empty()) throw ValidationError("phi needs --model or --unitary");
    ModelConfig mc;
    mc.family = parse_family(a.model);
    mc.n = a.n;
    mc.regime = parse_regime(a.regime);
    mc.h = a.h;
    KeyValues list_kv;
    for (const auto& [key, text] : {std::pair<const char*, const std::string&>{"g", a.g}, {"J", a.j}, {"t", a.t},
                                    {"Jz", a.jz}, {"hz", a.hz}, {"gz", a.gz}})
        if (!text.empty()) list_kv.emplace_back(key, text);
    const ModelConfig lists = ModelConfig::from_key_values(concat(list_kv, {{"N", std::to_string(a.n)}}));
    mc.g = lists.g;
    mc.j = lists.j;
    mc.t = lists.t;
    mc.jz = lists.jz;
    mc.hz = lists.hz;
    mc.gz = lists.gz;
    mc.disorder_seed = a.disorder_seed.value_or(c.seed);
    const BuiltModel model = build_model(mc);
    const int m = a.clusters == 0 ? model.tf.sites() : a.clusters;
    if (m < 1 || model.tf.sites() % m != 0) throw InvalidClusteringError("--clusters must divide N");
    const int per = model.tf.sites() / m;
    int q = 1;
    for (int k = 0; k < per; ++k) q *= model.tf.local_dim(0);
    const AlgebraSet aset = AlgebraSet::full(TensorFactorization(Dims(static_cast<std::size_t>(m), q)));
    const ExperimentRecord r = phi_time_series(model, aset, parse_times(a.times), c.threads);
    const Table table = to_table(r);
    std::vector<std::pair<std::string, double>> aggregates;
    if (model.leakage > 0.0) aggregates.emplace_back("constraint_leakage", model.leakage);
    const auto path = write_table(dir, a.name, table,
                                  {concat(echo_options(app), concat(mc.to_key_values(), model.provenance)),
                                   {{"seed", c.seed}, {"disorder_seed", *mc.disorder_seed}},
                                   aggregates,
                                   clock.seconds()});
    out << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& requested, const Common& c, std::ostream& out) {
    const std::vector<std::string>& suites = requested.empty() ? verify_suites() : requested;
    bool ok = true;
    for (const std::string& s : suites) {
        const VerifyResult r = run_verify_suite(s, c.seed);
        out << (r.passed ? "PASS " : "FAIL ") << r.suite << "  residual=" << format_number(r.residual)
            << "  tolerance=" << format_number(r.tolerance) << "  (" << r.detail << ")\n";
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

int cmd_figures(const CLI::App& app, const FigureArgs& a, const Common& c, std::ostream& out) {
    const std::filesystem::path dir = output_dir(c);
    const bool all = a.which == "all";
    if (!all && a.which != "1" && a.which != "2" && a.which != "3")
        throw ValidationError("--which must be 1, 2, 3 or all");
    const TimeWindow window{a.t0, a.t1};
    const KeyValues echo = echo_options(app);
    if (all || a.which == "1") {
        const Stopwatch clock;
        Fig1Options o;
        o.n = a.n > 0 ? a.n : (a.large ? 10 : 8);
        o.threads = c.threads;
        for (const ExperimentRecord& r : fig1_pipeline(o)) {
            const auto path = write_table(dir, r.name, to_table(r),
                                          {concat(echo, r.config), {{"seed", c.seed}}, r.aggregates, clock.seconds()});
            out << "wrote " << path.string() << "  pearson=" << format_number(r.aggregate("pearson"))
                << "  max_gap=" << format_number(r.aggregate("max_gap")) << "\n";
        }
    }
    if (all || a.which == "2") {
        const Stopwatch clock;
        Fig2Options o;
        o.n = a.n > 0 ? a.n : (a.large ? 12 : 8);
        o.clusters = a.clusters;
        if (o.clusters.empty())
            for (int m = 1; m <= o.n; ++m)
                if (o.n % m == 0) o.clusters.push_back(m);
        o.window = window;
        o.samples = a.samples;
        o.threads = c.threads;
        const auto rows = fig2_pipeline(o);
        for (int m : o.clusters) {
            const auto path = write_table(dir, "fig2_M" + std::to_string(m), fig2_table(rows, m),
                                          {concat(concat(echo, window_values(o.window, o.samples)),
                                                  {{"N", std::to_string(o.n)},
                                                   {"M", std::to_string(m)},
                                                   {"nonintegrable", "h=0.5,g=1.05"},
                                                   {"integrable", "h=0,g=1"}}),
                                           {{"seed", c.seed}},
                                           {},
                                           clock.seconds()});
            out << "wrote " << path.string() << "\n";
        }
    }
    if (all || a.which == "3") {
        const Stopwatch clock;
        Fig3Options o;
        if (a.large) {
            o.tfim_sizes = {4, 6, 8, 10, 11};
            o.fragmented_sizes = {3, 4, 5, 6, 7};
            o.realizations = 0;
        }
        if (a.realizations >= 0) o.realizations = a.realizations;
        o.average_fragmented = a.average_fragmented;
        o.window = window;
        o.samples = a.samples;
        o.seed = c.seed;
        o.threads = c.threads;
        const auto path = write_table(dir, "fig3_scaling", fig3_table(fig3_pipeline(o)),
                                      {concat(concat(echo, window_values(o.window, o.samples)),
                                              {{"tfim_sizes", join_ints(o.tfim_sizes)},
                                               {"fragmented_sizes", join_ints(o.fragmented_sizes)},
                                               {"realizations", std::to_string(o.realizations)},
                                               {"average_fragmented", o.average_fragmented ? "1" : "0"}}),
                                       {{"seed", c.seed}},
                                       {},
                                       clock.seconds()});
        out << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_typical(const TypicalArgs& a, std::ostream& out) {
    int given = 0;
    given += !a.dims.empty();
    given += !a.qubits.empty();
    given += a.d > 0 || a.clusters > 0;
    if (given != 1) throw ValidationError("typical needs exactly one of --dims, --qubits, or --d with --clusters");
    if (!a.dims.empty()) {
        out << format_number(typical_phi(AlgebraSet::full(TensorFactorization(parse_ints(a.dims, "--dims"))))) << "\n";
    } else if (!a.qubits.empty()) {
        const QubitTypical t = typical_phi_qubit(parse_ints(a.qubits, "--qubits"));
        out << format_number(t.value) << "\nmax over clusterings: " << format_number(t.max_value) << "\n";
    } else {
        out << format_number(typical_phi_clustered(a.d, a.clusters)) << "\n";
    }
    return 0;
}

void add_common(CLI::App* sub, Common& c) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--seed", c.seed, "Root seed for every random draw");
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", c.output, "Output directory (default: $TPSD_OUTPUT_DIR or ./tpsd-output)");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"TPS distance toolkit", "tpsd"};
    app.set_config("--config", "", "Read options from a key = value file; explicit flags win");
    app.require_subcommand(1);

    Common common;
    PhiArgs phi;
    CLI::App* phi_cmd = app.add_subcommand("phi", "Phi time series of a model, or Phi of a named unitary");
    add_common(phi_cmd, common);
    phi_cmd->add_option("--model", phi.model, "tfim | tl | tjz");
    phi_cmd->add_option("--N", phi.n, "Number of sites");
    phi_cmd->add_option("--regime", phi.regime, "TFIM regime: nonintegrable | integrable | anderson | mbl");
    phi_cmd->add_option("--h", phi.h, "TFIM longitudinal field (overrides the regime)");
    phi_cmd->add_option("--g", phi.g, "TFIM transverse fields, comma separated");
    phi_cmd->add_option("--J", phi.j, "Temperley-Lieb couplings");
    phi_cmd->add_option("--t", phi.t, "t-Jz hoppings");
    phi_cmd->add_option("--Jz", phi.jz, "t-Jz Sz Sz couplings");
    phi_cmd->add_option("--hz", phi.hz, "t-Jz Sz fields");
    phi_cmd->add_option("--gz", phi.gz, "t-Jz (Sz)^2 fields");
    phi_cmd->add_option("--disorder-seed", phi.disorder_seed, "Seed for drawn couplings (default: --seed)");
    phi_cmd->add_option("--clusters", phi.clusters, "Equal clusters of sites forming the TPS (default: one per site)");
    phi_cmd->add_option("--times", phi.times, "start:step:stop (inclusive) or a comma-separated list");
    phi_cmd->add_option("--unitary", phi.unitary, "identity | swap | cnot | two-unitary | haar");
    phi_cmd->add_option("--dims", phi.dims, "Local dimensions for --unitary, e.g. 2,2");
    phi_cmd->add_option("--q", phi.q, "Local dimension for two-unitary (odd prime)");
    phi_cmd->add_option("--name", phi.name, "Output file stem");

    std::vector<std::string> identities;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the oracle cross-check suites");
    add_common(verify_cmd, common);
    verify_cmd->add_option("--identity", identities, "Suite name (repeatable); default runs all")
        ->check(CLI::IsMember(verify_suites()));

    FigureArgs fig;
    CLI::App* fig_cmd = app.add_subcommand("figures", "Emit the figure data sets");
    add_common(fig_cmd, common);
    fig_cmd->add_option("--which", fig.which, "1 | 2 | 3 | all");
    fig_cmd->add_option("--N", fig.n, "System size for figures 1 and 2");
    fig_cmd->add_flag("--large", fig.large,
                      "Large sizes: fig1 N=10, fig2 N=12, fig3 up to N=11 and N=7 with floor(200/N) draws (slow)");
    fig_cmd->add_option("--samples", fig.samples, "Time samples per long-time average")->check(CLI::Range(16, 1 << 20));
    fig_cmd->add_option("--t0", fig.t0, "Averaging window start");
    fig_cmd->add_option("--t1", fig.t1, "Averaging window end");
    fig_cmd->add_option("--realizations", fig.realizations, "Disorder realizations (0: floor(200/N))");
    fig_cmd->add_option("--clusters", fig.clusters, "Cluster counts M for figure 2")->delimiter(',');
    fig_cmd->add_flag("--average-fragmented", fig.average_fragmented, "Disorder-average the TL and t-Jz couplings");

    TypicalArgs typ;
    CLI::App* typ_cmd = app.add_subcommand("typical", "Haar-typical Phi");
    add_common(typ_cmd, common);
    typ_cmd->add_option("--dims", typ.dims, "Local dimensions, e.g. 2,2,2,2");
    typ_cmd->add_option("--qubits", typ.qubits, "Qubits per cluster, e.g. 1,2,3");
    typ_cmd->add_option("--d", typ.d, "Total dimension (with --clusters)");
    typ_cmd->add_option("--clusters", typ.clusters, "Number of equal clusters (with --d)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (phi_cmd->parsed()) return cmd_phi(*phi_cmd, phi, common, out);
        if (verify_cmd->parsed()) return cmd_verify(identities, common, out);
        if (fig_cmd->parsed()) return cmd_figures(*fig_cmd, fig, common, out);
        if (typ_cmd->parsed()) return cmd_typical(typ, out);
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const SizeError& e) {
        err << "size limit: " << e.what() << "\n(use smaller N or clusters; the largest sizes need --large and time)\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace tpsd
