#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <krl/errors.hpp>
#include <krl/grid.hpp>
#include <krl/instances.hpp>
#include <krl/operator.hpp>
#include <krl/solver.hpp>

namespace krl::cli {

/// Configuration error anchored to a line of the config file (0 when not tied to a line).
class ConfigFileError : public ConfigError {
public:
    ConfigFileError(const std::string& source, int line, const std::string& message);
    int line;
};

/// Sectioned key = value text, as written by hand:
///
///     [operator]
///     kind = plaplace
///     p = 3
///     [grid]
///     n = 199
///
/// '#' and ';' start comments at the beginning of a line.
struct ConfigDocument {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string source = "<config>";
    /// Keys are "section.key".
    std::map<std::string, Entry> entries;
    std::filesystem::path base_dir;

    [[nodiscard]] const Entry* find(const std::string& key) const;
    /// Resolves "p" or "operator.p" to the qualified key of an existing or known entry.
    [[nodiscard]] std::string qualify(std::string_view key) const;
};

[[nodiscard]] ConfigDocument parse_document(std::string_view text, std::string source = "<config>",
                                            std::filesystem::path base_dir = {});
[[nodiscard]] ConfigDocument load_document(const std::filesystem::path& path);

enum class OperatorKind { Matrix, PLaplace, HardySobolev, Pucci };

[[nodiscard]] std::string_view to_string(OperatorKind kind);

struct RunConfig {
    OperatorKind kind = OperatorKind::Matrix;
    double p = 2.0;
    double mu = 0.0;
    int n_dim = 3;
    double lambda_p = 1.0;
    double big_lambda = 1.0;
    PucciVariant variant = PucciVariant::Plus;
    Matrix matrix;
    double cone_tolerance = kDefaultConeTolerance;

    Grid grid{0.0, 1.0, 99};
    ContinuationConfig solver;

    std::string trace_path = "trace.csv";
    std::string eigenpair_path = "eigenpair.json";
    std::string report_path = "report.json";
    std::string sweep_path = "sweep.csv";

    friend bool operator==(const RunConfig&, const RunConfig&);
};

/// Interprets and validates a document; every error names the offending line.
[[nodiscard]] RunConfig interpret(const ConfigDocument& doc);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_document + interpret reproduce the same RunConfig.
[[nodiscard]] std::string serialize(const RunConfig& cfg);

/// KRL_SEED, when set, replaces the solver seed.
void apply_environment(RunConfig& cfg);

[[nodiscard]] MonotoneOperator build_operator(const RunConfig& cfg);

/// Exponent of homogeneity of the underlying problem (p for p-type, 2 otherwise).
[[nodiscard]] double problem_exponent(const RunConfig& cfg);

}  // namespace krl::cli
