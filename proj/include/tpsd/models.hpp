#pragma once

#include "tpsd/linalg.hpp"
#include "tpsd/randomness.hpp"
#include "tpsd/structure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tpsd {

enum class ModelFamily { tfim, temperley_lieb, tjz };

enum class TfimRegime { nonintegrable, integrable, anderson, mbl };

const char* to_string(ModelFamily family);
const char* to_string(TfimRegime regime);
ModelFamily parse_family(const std::string& text);
TfimRegime parse_regime(const std::string& text);

/// Unset coupling lists are filled from the regime (TFIM) or drawn from `disorder_seed`.
struct ModelConfig {
    ModelFamily family = ModelFamily::tfim;
    int n = 4;
    TfimRegime regime = TfimRegime::nonintegrable;
    std::optional<double> h;
    std::vector<double> g;
    std::vector<double> j;
    std::vector<double> t;
    std::vector<double> jz;
    std::vector<double> hz;
    std::vector<double> gz;
    std::optional<std::uint64_t> disorder_seed;

    std::vector<std::pair<std::string, std::string>> to_key_values() const;
    static ModelConfig from_key_values(const std::vector<std::pair<std::string, std::string>>& kv);
};

struct BuiltModel {
    DenseOperator hamiltonian;
    TensorFactorization tf{Dims{2}};
    /// Resolved couplings, as key/value pairs.
    std::vector<std::pair<std::string, std::string>> provenance;
    /// ||(1 - P) H_Fock P||_F for the constrained fermion chain; 0 otherwise.
    double leakage = 0.0;
};

struct TfimOptions {
    bool include_coupling = true; // false drops the sigma^z sigma^z bonds
};

/// H = -sum sz_i sz_{i+1} - sum (h sz_i + g_i sx_i), open chain.
BuiltModel build_tfim(int n, double h, const std::vector<double>& g, TfimOptions options = {});

/// H = sum J_j e_{j,j+1}, e = sum_{a,b} |aa><bb| on qutrits.
BuiltModel build_temperley_lieb(int n, const std::vector<double>& j);

/// Spin-1/2 fermions without double occupancy, local basis (empty, up, down).
BuiltModel build_tjz(int n, const std::vector<double>& t, const std::vector<double>& jz,
                     const std::vector<double>& hz, const std::vector<double>& gz);

struct DisorderSample {
    std::vector<double> g;  // TFIM fields, U[-10, 10]
    std::vector<double> j;  // TL couplings, U[0, 1]
    std::vector<double> t;  // t-Jz couplings, U[0, 1]
    std::vector<double> jz;
    std::vector<double> hz;
    std::vector<double> gz;
};

DisorderSample sample_disorder(ModelFamily family, int n, SeededGenerator& gen);

/// floor(200 / N)
int disorder_repetitions(int n);

/// Couplings for the TFIM regime; disorder drawn from `gen` when the regime is disordered.
std::pair<double, std::vector<double>> tfim_regime_couplings(TfimRegime regime, int n, SeededGenerator& gen);

BuiltModel build_model(const ModelConfig& config);

/// Same model with disorder drawn from realization `index` of the configured seed.
BuiltModel build_model(const ModelConfig& config, std::uint64_t realization);

bool is_disordered(const ModelConfig& config);

} // namespace tpsd
