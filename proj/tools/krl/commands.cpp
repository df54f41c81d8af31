#include "krl/commands.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <sstream>

#include <krl/io.hpp>

namespace krl::cli {
namespace {

struct Loaded {
    RunConfig cfg;
    ConfigDocument doc;
};

Loaded load(const std::filesystem::path& path) {
    Loaded l;
    l.doc = load_document(path);
    l.cfg = interpret(l.doc);
    apply_environment(l.cfg);
    return l;
}

std::string status_of(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const ConfigError&) {
        return "config_error";
    } catch (const NoHConstant&) {
        return "no_h_constant";
    } catch (const PolicyCycle&) {
        return "policy_cycle";
    } catch (const EvaluationFailure&) {
        return "evaluation_failure";
    } catch (const NoConvergence&) {
        return "no_convergence";
    } catch (const ZeroImage&) {
        return "zero_image";
    } catch (const ResidualTooLarge&) {
        return "residual_too_large";
    } catch (const std::exception&) {
        return "error";
    }
}

int total_iterations(const ContinuationTrace& trace) {
    int total = 0;
    for (const auto& r : trace.records) total += r.iterations;
    return total;
}

PropertyReport h_constant_report(const MonotoneOperator& T, const Vector& u, std::uint64_t seed,
                                 std::optional<HConstant>& H) {
    PropertyReport r;
    r.property = "h_constant";
    r.samples = 1;
    r.seed = seed;
    try {
        H = find_h_constant(T, u);
        r.witness = nlohmann::json{{"M", H->M}};
    } catch (const NoHConstant& e) {
        r.pass = false;
        r.worst_violation = 1.0;
        r.witness = nlohmann::json{{"error", e.what()}};
    }
    return r;
}

void report_failure(std::ostream& err, const std::exception& e) { err << "error: " << e.what() << "\n"; }

}  // namespace

bool counts_for_exit(const PropertyReport& r) { return r.property != "strong_positivity"; }

std::vector<PropertyReport> verify_reports(const RunConfig& cfg) {
    const auto T = build_operator(cfg);
    const auto seed = cfg.solver.seed;
    std::vector<PropertyReport> reports;
    reports.push_back(check_homogeneity(T, 20, kDefaultScales, 1e-6, seed));
    reports.push_back(check_monotonicity(T, 50, 1e-8, seed));

    const Vector u = default_u(T);
    std::optional<HConstant> H;
    reports.push_back(h_constant_report(T, u, seed, H));

    if ((cfg.kind == OperatorKind::PLaplace || cfg.kind == OperatorKind::HardySobolev) && cfg.p != 2.0)
        reports.push_back(check_nonlinearity(T, 50, 1e-3, seed));

    std::optional<EigenPair> pair;
    if (H) {
        try {
            auto result = continuation(T, u, cfg.solver);
            reports.push_back(verify_branch_bounds(T, u, *H, result.trace, 8, 1e-8));
            pair = result.pair;
        } catch (const SolverError& e) {
            PropertyReport r;
            r.property = "continuation";
            r.pass = false;
            r.worst_violation = 1.0;
            r.samples = e.partial_trace.size();
            r.seed = seed;
            r.witness = nlohmann::json{{"error", e.what()}, {"status", status_of(std::current_exception())}};
            reports.push_back(std::move(r));
            if (!e.partial_trace.empty())
                reports.push_back(verify_branch_bounds(T, u, *H, e.partial_trace, 8, 1e-8));
        }
    }
    if (pair) {
        PropertyReport r;
        r.property = "residual";
        r.worst_violation = pair->residual;
        r.pass = pair->residual <= kEigenResidualThreshold;
        r.samples = 1;
        r.seed = seed;
        r.witness = nlohmann::json{{"lambda0", pair->lambda}, {"threshold", kEigenResidualThreshold}};
        reports.push_back(std::move(r));
    }

    auto positivity = check_strong_positivity(T, 20, T.cone().tolerance, seed);
    const bool strongly_positive = positivity.pass;
    reports.push_back(std::move(positivity));
    if (strongly_positive) reports.push_back(uniqueness_probe(T, cfg.solver, 4).report);

    if (cfg.kind == OperatorKind::Matrix && pair) {
        const double tol = std::max(1e-8, 100.0 * cfg.solver.eps_min);
        reports.push_back(minimality_check(T, pair->lambda, tol));
        if (strongly_positive) reports.push_back(simplicity_check(T, pair->lambda, tol));
    }
    return reports;
}

int run_solve(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    Loaded l;
    std::optional<MonotoneOperator> T;
    try {
        l = load(config);
        T = build_operator(l.cfg);
    } catch (const ConfigError& e) {
        report_failure(err, e);
        return kExitConfig;
    }
    const auto& cfg = l.cfg;
    try {
        const Vector u = default_u(*T);
        HConstant H;
        try {
            H = find_h_constant(*T, u);
        } catch (const NoHConstant& e) {
            write_file_atomic(cfg.trace_path, trace_to_csv({}));
            report_failure(err, e);
            return kExitSolver;
        }
        try {
            const auto result = continuation(*T, u, cfg.solver);
            write_file_atomic(cfg.trace_path, trace_to_csv(result.trace));
            write_file_atomic(cfg.eigenpair_path, eigenpair_to_json(result.pair).dump(2) + "\n");
            out << T->label() << "\n";
            out << "M = " << format_double(H.M) << "\n";
            out << "lambda0 = " << format_double(result.pair.lambda) << "\n";
            const double p = problem_exponent(cfg);
            if (cfg.kind != OperatorKind::Matrix)
                out << "pde eigenvalue = " << format_double(pde_eigenvalue(result.pair.lambda, p)) << "\n";
            out << "residual = " << format_double(result.pair.residual) << "\n";
            out << "levels = " << result.trace.size() << ", iterations = " << total_iterations(result.trace) << "\n";
            return kExitOk;
        } catch (const SolverError& e) {
            write_file_atomic(cfg.trace_path, trace_to_csv(e.partial_trace));
            report_failure(err, e);
            err << "partial trace (" << e.partial_trace.size() << " levels) written to " << cfg.trace_path << "\n";
            return kExitSolver;
        }
    } catch (const std::exception& e) {
        report_failure(err, e);
        return kExitIo;
    }
}

int run_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    Loaded l;
    try {
        l = load(config);
        (void)build_operator(l.cfg);
    } catch (const ConfigError& e) {
        report_failure(err, e);
        return kExitConfig;
    }
    try {
        const auto reports = verify_reports(l.cfg);
        write_file_atomic(l.cfg.report_path, reports_to_json(reports).dump(2) + "\n");
        std::vector<std::string> failed;
        for (const auto& r : reports) {
            out << (r.pass ? "pass " : "FAIL ") << r.property << " (worst_violation = " << format_double(r.worst_violation)
                << ", samples = " << r.samples << ")" << (counts_for_exit(r) ? "" : " [informational]") << "\n";
            if (!r.pass && counts_for_exit(r)) failed.push_back(r.property);
        }
        if (failed.empty()) return kExitOk;
        err << "verify failed:";
        for (const auto& name : failed) err << ' ' << name;
        err << "\n";
        return kExitVerify;
    } catch (const ConfigError& e) {
        report_failure(err, e);
        return kExitConfig;
    } catch (const std::exception& e) {
        report_failure(err, e);
        return kExitIo;
    }
}

int run_sweep(const std::filesystem::path& config, const std::string& key, const std::vector<std::string>& values,
              std::ostream& out, std::ostream& err) {
    static constexpr std::string_view kSweepable[] = {
        "operator.p",      "operator.mu",     "operator.n_dim", "operator.lambda_p",
        "operator.big_lambda", "operator.cone_tolerance", "grid.n", "solver.eps0",
        "solver.ratio",    "solver.eps_min",  "solver.tol",     "solver.max_iters",
        "solver.seed"};
    Loaded base;
    std::string qualified;
    std::vector<std::string> tokens;
    try {
        base = load(config);
        qualified = base.doc.qualify(key);
        if (std::find(std::begin(kSweepable), std::end(kSweepable), qualified) == std::end(kSweepable))
            throw ConfigError("sweep key '" + key + "' is not a scalar numeric field");
        for (const auto& v : values) {
            std::string t = v;
            t.erase(0, t.find_first_not_of(" \t"));
            t.erase(t.find_last_not_of(" \t") + 1);
            if (t.empty()) throw ConfigError("sweep values contain an empty entry");
            tokens.push_back(t);
        }
        if (tokens.empty()) throw ConfigError("sweep needs at least one value");
    } catch (const ConfigError& e) {
        report_failure(err, e);
        return kExitConfig;
    }

    struct Row {
        std::string value;
        std::optional<double> lambda;
        std::optional<double> residual;
        int iters = 0;
        std::string status;
        std::string message;
    };

    auto run_one = [&](const std::string& value) {
        Row row;
        row.value = value;
        try {
            auto doc = base.doc;
            const int line = doc.find(qualified) ? doc.find(qualified)->line : 0;
            doc.entries[qualified] = {value, line};
            auto cfg = interpret(doc);
            apply_environment(cfg);
            const auto T = build_operator(cfg);
            const Vector u = default_u(T);
            (void)find_h_constant(T, u);
            const auto result = continuation(T, u, cfg.solver);
            row.lambda = result.pair.lambda;
            row.residual = result.pair.residual;
            row.iters = total_iterations(result.trace);
            row.status = "ok";
        } catch (const ResidualTooLarge& e) {
            row.lambda = e.lambda;
            row.residual = e.residual;
            row.iters = total_iterations(e.partial_trace);
            row.status = status_of(std::current_exception());
            row.message = e.what();
        } catch (const SolverError& e) {
            row.iters = total_iterations(e.partial_trace);
            row.status = status_of(std::current_exception());
            row.message = e.what();
        } catch (const std::exception& e) {
            row.status = status_of(std::current_exception());
            row.message = e.what();
        }
        return row;
    };

    std::vector<std::future<Row>> futures;
    futures.reserve(tokens.size());
    for (const auto& t : tokens) futures.push_back(std::async(std::launch::async, run_one, t));

    std::ostringstream csv;
    csv << kSweepCsvHeader << "\n";
    std::size_t succeeded = 0;
    for (auto& f : futures) {
        const auto row = f.get();
        csv << row.value << ',' << (row.lambda ? format_double(*row.lambda) : "") << ','
            << (row.residual ? format_double(*row.residual) : "") << ',' << row.iters << ',' << row.status << "\n";
        if (row.status == "ok") {
            ++succeeded;
            out << qualified << " = " << row.value << ": lambda0 = " << format_double(*row.lambda) << "\n";
        } else {
            err << qualified << " = " << row.value << ": " << row.status << ": " << row.message << "\n";
        }
    }
    try {
        write_file_atomic(base.cfg.sweep_path, csv.str());
    } catch (const std::exception& e) {
        report_failure(err, e);
        return kExitIo;
    }
    return succeeded > 0 ? kExitOk : kExitSolver;
}

}  // namespace krl::cli
