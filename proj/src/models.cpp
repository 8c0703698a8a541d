#include "tpsd/models.hpp"

#include "tpsd/config.hpp"
#include "tpsd/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace tpsd {

namespace {

constexpr double kTfimDisorder = 10.0;
constexpr double kTfimNonintegrableH = 0.5;
constexpr double kTfimNonintegrableG = 1.05;
constexpr double kTfimMblH = 0.5;

void require_length(const std::vector<double>& v, int n, const char* what) {
    if (static_cast<int>(v.size()) != n)
        throw ValidationError(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                              std::to_string(v.size()));
}

void require_sites(int n) {
    if (n < 2) throw ValidationError("models need N >= 2 sites");
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        out += format_double(v[k]);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(x))
        throw ValidationError("config key '" + key + "': not a finite number: '" + text + "'");
    return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    return out;
}

std::int64_t power_of(int base, int n) {
    std::int64_t d = 1;
    for (int k = 0; k < n; ++k) {
        d *= base;
        if (d > kLimits.max_hamiltonian_dim) throw SizeError("model dimension above the dense limit");
    }
    return d;
}

// Fermionic modes (site j, spin s) at position 2j + s; bit m of the occupation word.
struct FockAction {
    std::uint64_t state = 0;
    double sign = 0.0; // 0 when annihilated
};

FockAction annihilate(FockAction a, int mode) {
    if (a.sign == 0.0 || !((a.state >> mode) & 1u)) return {0, 0.0};
    const std::uint64_t below = a.state & ((std::uint64_t{1} << mode) - 1);
    const double parity = (std::popcount(below) % 2) ? -1.0 : 1.0;
    return {a.state & ~(std::uint64_t{1} << mode), a.sign * parity};
}

FockAction create(FockAction a, int mode) {
    if (a.sign == 0.0 || ((a.state >> mode) & 1u)) return {0, 0.0};
    const std::uint64_t below = a.state & ((std::uint64_t{1} << mode) - 1);
    const double parity = (std::popcount(below) % 2) ? -1.0 : 1.0;
    return {a.state | (std::uint64_t{1} << mode), a.sign * parity};
}

} // namespace

const char* to_string(ModelFamily family) {
    switch (family) {
    case ModelFamily::tfim: return "tfim";
    case ModelFamily::temperley_lieb: return "tl";
    case ModelFamily::tjz: return "tjz";
    }
    return "unknown";
}

const char* to_string(TfimRegime regime) {
    switch (regime) {
    case TfimRegime::nonintegrable: return "nonintegrable";
    case TfimRegime::integrable: return "integrable";
    case TfimRegime::anderson: return "anderson";
    case TfimRegime::mbl: return "mbl";
    }
    return "unknown";
}

ModelFamily parse_family(const std::string& text) {
    if (text == "tfim") return ModelFamily::tfim;
    if (text == "tl" || text == "temperley-lieb") return ModelFamily::temperley_lieb;
    if (text == "tjz" || text == "t-jz") return ModelFamily::tjz;
    throw ValidationError("unknown model family '" + text + "'");
}

TfimRegime parse_regime(const std::string& text) {
    if (text == "nonintegrable") return TfimRegime::nonintegrable;
    if (text == "integrable") return TfimRegime::integrable;
    if (text == "anderson") return TfimRegime::anderson;
    if (text == "mbl") return TfimRegime::mbl;
    throw ValidationError("unknown TFIM regime '" + text + "'");
}

std::vector<std::pair<std::string, std::string>> ModelConfig::to_key_values() const {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("family", to_string(family));
    kv.emplace_back("N", std::to_string(n));
    if (family == ModelFamily::tfim) kv.emplace_back("regime", to_string(regime));
    if (h) kv.emplace_back("h", format_double(*h));
    if (!g.empty()) kv.emplace_back("g", format_list(g));
    if (!j.empty()) kv.emplace_back("J", format_list(j));
    if (!t.empty()) kv.emplace_back("t", format_list(t));
    if (!jz.empty()) kv.emplace_back("Jz", format_list(jz));
    if (!hz.empty()) kv.emplace_back("hz", format_list(hz));
    if (!gz.empty()) kv.emplace_back("gz", format_list(gz));
    if (disorder_seed) kv.emplace_back("disorder_seed", std::to_string(*disorder_seed));
    return kv;
}

ModelConfig ModelConfig::from_key_values(const std::vector<std::pair<std::string, std::string>>& kv) {
    ModelConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "family") c.family = parse_family(value);
        else if (key == "N") c.n = static_cast<int>(parse_double(key, value));
        else if (key == "regime") c.regime = parse_regime(value);
        else if (key == "h") c.h = parse_double(key, value);
        else if (key == "g") c.g = parse_list(key, value);
        else if (key == "J") c.j = parse_list(key, value);
        else if (key == "t") c.t = parse_list(key, value);
        else if (key == "Jz") c.jz = parse_list(key, value);
        else if (key == "hz") c.hz = parse_list(key, value);
        else if (key == "gz") c.gz = parse_list(key, value);
        else if (key == "disorder_seed") c.disorder_seed = static_cast<std::uint64_t>(std::stoull(value));
        else throw ValidationError("unknown model config key '" + key + "'");
    }
    require_sites(c.n);
    return c;
}

BuiltModel build_tfim(int n, double h, const std::vector<double>& g, TfimOptions options) {
    require_sites(n);
    require_length(g, n, "build_tfim g");
    const std::int64_t d = power_of(2, n);
    RealMatrix m = RealMatrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) {
        // site 0 is the most significant bit; bit value 0 is sigma^z = +1
        auto z = [&](int site) { return ((x >> (n - 1 - site)) & 1) ? -1.0 : 1.0; };
        double diag = 0.0;
        if (options.include_coupling)
            for (int i = 0; i + 1 < n; ++i) diag -= z(i) * z(i + 1);
        for (int i = 0; i < n; ++i) {
            diag -= h * z(i);
            m(x ^ (std::int64_t{1} << (n - 1 - i)), x) -= g[static_cast<std::size_t>(i)];
        }
        m(x, x) = diag;
    }
    BuiltModel out;
    out.hamiltonian = DenseOperator::hermitian(m.cast<cplx>());
    out.tf = TensorFactorization(Dims(static_cast<std::size_t>(n), 2));
    out.provenance = {{"family", "tfim"}, {"N", std::to_string(n)}, {"h", format_double(h)}, {"g", format_list(g)}};
    if (!options.include_coupling) out.provenance.emplace_back("coupling", "off");
    return out;
}

BuiltModel build_temperley_lieb(int n, const std::vector<double>& j) {
    require_sites(n);
    require_length(j, n - 1, "build_temperley_lieb J");
    const std::int64_t d = power_of(3, n);
    std::vector<std::int64_t> stride(static_cast<std::size_t>(n), 1);
    for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * 3;
    RealMatrix m = RealMatrix::Zero(d, d);
    for (std::int64_t x = 0; x < d; ++x) {
        for (int b = 0; b + 1 < n; ++b) {
            const std::int64_t a1 = (x / stride[b]) % 3;
            const std::int64_t a2 = (x / stride[b + 1]) % 3;
            if (a1 != a2) continue;
            const std::int64_t base = x - a1 * stride[b] - a2 * stride[b + 1];
            for (std::int64_t alpha = 0; alpha < 3; ++alpha)
                m(base + alpha * (stride[b] + stride[b + 1]), x) += j[static_cast<std::size_t>(b)];
        }
    }
    BuiltModel out;
    out.hamiltonian = DenseOperator::hermitian(m.cast<cplx>());
    out.tf = TensorFactorization(Dims(static_cast<std::size_t>(n), 3));
    out.provenance = {{"family", "tl"}, {"N", std::to_string(n)}, {"J", format_list(j)}};
    return out;
}

BuiltModel build_tjz(int n, const std::vector<double>& t, const std::vector<double>& jz,
                     const std::vector<double>& hz, const std::vector<double>& gz) {
    require_sites(n);
    if (n > kLimits.max_tjz_sites)
        throw SizeError("build_tjz: N = " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(kLimits.max_tjz_sites) + " sites");
    require_length(t, n - 1, "build_tjz t");
    require_length(jz, n - 1, "build_tjz Jz");
    require_length(hz, n, "build_tjz hz");
    require_length(gz, n, "build_tjz gz");
    const std::int64_t d = power_of(3, n);

    // constrained basis: digit 0 empty, 1 up, 2 down; site 0 most significant
    std::vector<std::uint64_t> fock(static_cast<std::size_t>(d));
    std::map<std::uint64_t, std::int64_t> index_of;
    for (std::int64_t x = 0; x < d; ++x) {
        std::uint64_t word = 0;
        std::int64_t rest = x;
        for (int s = n - 1; s >= 0; --s) {
            const int dg = static_cast<int>(rest % 3);
            rest /= 3;
            if (dg == 1) word |= std::uint64_t{1} << (2 * s);
            if (dg == 2) word |= std::uint64_t{1} << (2 * s + 1);
        }
        fock[static_cast<std::size_t>(x)] = word;
        index_of[word] = x;
    }
    auto sz = [](std::uint64_t word, int site) {
        return static_cast<double>((word >> (2 * site)) & 1u) - static_cast<double>((word >> (2 * site + 1)) & 1u);
    };

    RealMatrix m = RealMatrix::Zero(d, d);
    double leak_sq = 0.0;
    for (std::int64_t x = 0; x < d; ++x) {
        const std::uint64_t word = fock[static_cast<std::size_t>(x)];
        double diag = 0.0;
        for (int s = 0; s < n; ++s) {
            const double z = sz(word, s);
            diag += hz[static_cast<std::size_t>(s)] * z + gz[static_cast<std::size_t>(s)] * z * z;
            if (s + 1 < n) diag += jz[static_cast<std::size_t>(s)] * z * sz(word, s + 1);
        }
        m(x, x) = diag;

        std::map<std::uint64_t, double> leaked;
        for (int s = 0; s + 1 < n; ++s) {
            const double amp = -t[static_cast<std::size_t>(s)];
            for (int spin = 0; spin < 2; ++spin) {
                const int here = 2 * s + spin;
                const int next = 2 * (s + 1) + spin;
                // c_{j} c^dagger_{j+1} and its adjoint c_{j+1} c^dagger_{j}
                const FockAction terms[] = {annihilate(create({word, 1.0}, next), here),
                                            annihilate(create({word, 1.0}, here), next)};
                for (const FockAction& r : terms) {
                    if (r.sign == 0.0) continue;
                    const auto it = index_of.find(r.state);
                    if (it != index_of.end())
                        m(it->second, x) += amp * r.sign;
                    else
                        leaked[r.state] += amp * r.sign;
                }
            }
        }
        for (const auto& [state, a] : leaked) leak_sq += a * a;
    }
    BuiltModel out;
    out.hamiltonian = DenseOperator::hermitian(m.cast<cplx>());
    out.tf = TensorFactorization(Dims(static_cast<std::size_t>(n), 3));
    out.provenance = {{"family", "tjz"},         {"N", std::to_string(n)},   {"t", format_list(t)},
                      {"Jz", format_list(jz)},   {"hz", format_list(hz)},    {"gz", format_list(gz)}};
    out.leakage = std::sqrt(leak_sq);
    return out;
}

int disorder_repetitions(int n) {
    if (n < 1) throw ValidationError("disorder_repetitions: N must be positive");
    return 200 / n;
}

DisorderSample sample_disorder(ModelFamily family, int n, SeededGenerator& gen) {
    require_sites(n);
    DisorderSample s;
    auto draw = [&](std::vector<double>& v, int count, double lo, double hi) {
        v.resize(static_cast<std::size_t>(count));
        for (double& x : v) x = gen.uniform(lo, hi);
    };
    switch (family) {
    case ModelFamily::tfim:
        draw(s.g, n, -kTfimDisorder, kTfimDisorder);
        break;
    case ModelFamily::temperley_lieb:
        draw(s.j, n - 1, 0.0, 1.0);
        break;
    case ModelFamily::tjz:
        draw(s.t, n - 1, 0.0, 1.0);
        draw(s.jz, n - 1, 0.0, 1.0);
        draw(s.hz, n, 0.0, 1.0);
        draw(s.gz, n, 0.0, 1.0);
        break;
    }
    return s;
}

std::pair<double, std::vector<double>> tfim_regime_couplings(TfimRegime regime, int n, SeededGenerator& gen) {
    require_sites(n);
    const auto sn = static_cast<std::size_t>(n);
    switch (regime) {
    case TfimRegime::nonintegrable: return {kTfimNonintegrableH, std::vector<double>(sn, kTfimNonintegrableG)};
    case TfimRegime::integrable: return {0.0, std::vector<double>(sn, 1.0)};
    case TfimRegime::anderson: return {0.0, sample_disorder(ModelFamily::tfim, n, gen).g};
    case TfimRegime::mbl: return {kTfimMblH, sample_disorder(ModelFamily::tfim, n, gen).g};
    }
    throw ValidationError("unknown TFIM regime");
}

bool is_disordered(const ModelConfig& c) {
    switch (c.family) {
    case ModelFamily::tfim:
        return c.g.empty() && (c.regime == TfimRegime::anderson || c.regime == TfimRegime::mbl);
    case ModelFamily::temperley_lieb: return c.j.empty();
    case ModelFamily::tjz: return c.t.empty() || c.jz.empty() || c.hz.empty() || c.gz.empty();
    }
    return false;
}

BuiltModel build_model(const ModelConfig& config) { return build_model(config, 0); }

BuiltModel build_model(const ModelConfig& c, std::uint64_t realization) {
    SeededGenerator gen = SeededGenerator(c.disorder_seed.value_or(0)).fork(realization);
    BuiltModel out;
    switch (c.family) {
    case ModelFamily::tfim: {
        auto [h, g] = tfim_regime_couplings(c.regime, c.n, gen);
        if (c.h) h = *c.h;
        if (!c.g.empty()) g = c.g;
        out = build_tfim(c.n, h, g);
        out.provenance.emplace_back("regime", to_string(c.regime));
        break;
    }
    case ModelFamily::temperley_lieb: {
        const DisorderSample s = sample_disorder(c.family, c.n, gen);
        out = build_temperley_lieb(c.n, c.j.empty() ? s.j : c.j);
        break;
    }
    case ModelFamily::tjz: {
        const DisorderSample s = sample_disorder(c.family, c.n, gen);
        out = build_tjz(c.n, c.t.empty() ? s.t : c.t, c.jz.empty() ? s.jz : c.jz, c.hz.empty() ? s.hz : c.hz,
                        c.gz.empty() ? s.gz : c.gz);
        break;
    }
    }
    if (is_disordered(c)) {
        out.provenance.emplace_back("disorder_seed", std::to_string(c.disorder_seed.value_or(0)));
        out.provenance.emplace_back("realization", std::to_string(realization));
    }
    return out;
}

} // namespace tpsd
