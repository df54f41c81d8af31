#include "krl/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <krl/io.hpp>

namespace krl::cli {
namespace {

struct KnownKey {
    std::string_view section;
    std::string_view key;
};

constexpr std::array kKnownKeys = {
    KnownKey{"operator", "kind"},         KnownKey{"operator", "p"},
    KnownKey{"operator", "mu"},           KnownKey{"operator", "n_dim"},
    KnownKey{"operator", "lambda_p"},     KnownKey{"operator", "big_lambda"},
    KnownKey{"operator", "variant"},      KnownKey{"operator", "matrix"},
    KnownKey{"operator", "matrix_file"},  KnownKey{"operator", "cone_tolerance"},
    KnownKey{"grid", "n"},                KnownKey{"grid", "interval"},
    KnownKey{"solver", "eps0"},           KnownKey{"solver", "ratio"},
    KnownKey{"solver", "eps_min"},        KnownKey{"solver", "tol"},
    KnownKey{"solver", "max_iters"},      KnownKey{"solver", "seed"},
    KnownKey{"output", "trace"},          KnownKey{"output", "eigenpair"},
    KnownKey{"output", "report"},         KnownKey{"output", "sweep"},
};

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool known_section(std::string_view section) {
    return std::any_of(kKnownKeys.begin(), kKnownKeys.end(),
                       [&](const KnownKey& k) { return k.section == section; });
}

bool known_key(std::string_view section, std::string_view key) {
    return std::any_of(kKnownKeys.begin(), kKnownKeys.end(),
                       [&](const KnownKey& k) { return k.section == section && k.key == key; });
}

std::string format_message(const std::string& source, int line, const std::string& message) {
    if (line > 0) return source + ":" + std::to_string(line) + ": " + message;
    return source + ": " + message;
}

class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        const auto* e = doc_.find(key);
        throw ConfigFileError(doc_.source, e ? e->line : 0, message);
    }

    bool has(const std::string& key) const { return doc_.find(key) != nullptr; }

    std::string text(const std::string& key, std::string fallback) const {
        const auto* e = doc_.find(key);
        return e ? e->value : fallback;
    }

    double number(const std::string& key, double fallback) const {
        const auto* e = doc_.find(key);
        if (!e) return fallback;
        return parse_double(key, e->value);
    }

    double parse_double(const std::string& key, std::string_view text) const {
        text = trim(text);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            fail(key, key + ": expected a number, got '" + std::string(text) + "'");
        return v;
    }

    template <class Int>
    Int integer(const std::string& key, Int fallback) const {
        const auto* e = doc_.find(key);
        if (!e) return fallback;
        const std::string_view text = trim(e->value);
        Int v{};
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            fail(key, key + ": expected an integer, got '" + std::string(text) + "'");
        return v;
    }

private:
    const ConfigDocument& doc_;
};

Matrix parse_matrix(const Reader& r, const std::string& key, std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find_first_of(";\n", start);
        if (end == std::string_view::npos) end = text.size();
        const auto row_text = trim(text.substr(start, end - start));
        if (!row_text.empty()) {
            std::vector<double> row;
            std::istringstream in{std::string(row_text)};
            std::string token;
            while (in >> token) {
                if (token.back() == ',') token.pop_back();
                if (!token.empty()) row.push_back(r.parse_double(key, token));
            }
            rows.push_back(std::move(row));
        }
        start = end + 1;
    }
    if (rows.empty()) r.fail(key, key + ": matrix has no entries");
    const auto n = rows.size();
    for (const auto& row : rows)
        if (row.size() != n)
            r.fail(key, key + ": matrix must be square, got " + std::to_string(n) + " rows and a row of " +
                            std::to_string(row.size()) + " entries");
    Matrix A(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = rows[i][j];
            if (!std::isfinite(v)) r.fail(key, key + ": matrix entries must be finite");
            if (v < 0.0)
                r.fail(key, key + ": entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " +
                                format_double(v) + " is negative; the operator must map the orthant into itself");
            A(static_cast<Index>(i), static_cast<Index>(j)) = v;
        }
    return A;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ConfigFileError::ConfigFileError(const std::string& source, int line_, const std::string& message)
    : ConfigError(format_message(source, line_, message)), line(line_) {}

const ConfigDocument::Entry* ConfigDocument::find(const std::string& key) const {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
}

std::string ConfigDocument::qualify(std::string_view key) const {
    key = trim(key);
    const auto dot = key.find('.');
    if (dot != std::string_view::npos) {
        if (!known_key(key.substr(0, dot), key.substr(dot + 1)))
            throw ConfigFileError(source, 0, "unknown key '" + std::string(key) + "'");
        return std::string(key);
    }
    for (const auto& k : kKnownKeys)
        if (k.key == key) return std::string(k.section) + "." + std::string(k.key);
    throw ConfigFileError(source, 0, "unknown key '" + std::string(key) + "'");
}

ConfigDocument parse_document(std::string_view text, std::string source, std::filesystem::path base_dir) {
    ConfigDocument doc;
    doc.source = std::move(source);
    doc.base_dir = std::move(base_dir);
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigFileError(doc.source, line_no, "malformed section header '" + std::string(line) + "'");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section))
                throw ConfigFileError(doc.source, line_no,
                                      "unknown section [" + section + "]; expected operator, grid, solver or output");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigFileError(doc.source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
        const std::string key(trim(line.substr(0, eq)));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (section.empty())
            throw ConfigFileError(doc.source, line_no, "key '" + key + "' appears before any section header");
        if (!known_key(section, key))
            throw ConfigFileError(doc.source, line_no, "unknown key '" + key + "' in [" + section + "]");
        const auto qualified = section + "." + key;
        if (doc.entries.contains(qualified))
            throw ConfigFileError(doc.source, line_no,
                                  "duplicate key '" + key + "' (first set on line " +
                                      std::to_string(doc.entries[qualified].line) + ")");
        doc.entries[qualified] = {std::string(value), line_no};
    }
    return doc;
}

ConfigDocument load_document(const std::filesystem::path& path) {
    return parse_document(read_text_file(path), path.string(), path.parent_path());
}

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Matrix: return "matrix";
        case OperatorKind::PLaplace: return "plaplace";
        case OperatorKind::HardySobolev: return "hardy_sobolev";
        case OperatorKind::Pucci: return "pucci";
    }
    return "?";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.kind == b.kind && a.p == b.p && a.mu == b.mu && a.n_dim == b.n_dim && a.lambda_p == b.lambda_p &&
           a.big_lambda == b.big_lambda && a.variant == b.variant && a.matrix.rows() == b.matrix.rows() &&
           a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix && a.cone_tolerance == b.cone_tolerance &&
           a.grid == b.grid && a.solver == b.solver && a.trace_path == b.trace_path &&
           a.eigenpair_path == b.eigenpair_path && a.report_path == b.report_path && a.sweep_path == b.sweep_path;
}

RunConfig interpret(const ConfigDocument& doc) {
    const Reader r(doc);
    RunConfig cfg;

    if (!r.has("operator.kind")) throw ConfigFileError(doc.source, 0, "missing [operator] kind");
    const auto kind = r.text("operator.kind", "");
    if (kind == "matrix") cfg.kind = OperatorKind::Matrix;
    else if (kind == "plaplace") cfg.kind = OperatorKind::PLaplace;
    else if (kind == "hardy_sobolev") cfg.kind = OperatorKind::HardySobolev;
    else if (kind == "pucci") cfg.kind = OperatorKind::Pucci;
    else r.fail("operator.kind", "kind = '" + kind + "' is not one of matrix, plaplace, hardy_sobolev, pucci");

    std::vector<std::string> allowed = {"operator.kind", "operator.cone_tolerance"};
    switch (cfg.kind) {
        case OperatorKind::Matrix: allowed.insert(allowed.end(), {"operator.matrix", "operator.matrix_file"}); break;
        case OperatorKind::PLaplace: allowed.insert(allowed.end(), {"operator.p"}); break;
        case OperatorKind::HardySobolev:
            allowed.insert(allowed.end(), {"operator.p", "operator.mu", "operator.n_dim"});
            break;
        case OperatorKind::Pucci:
            allowed.insert(allowed.end(), {"operator.lambda_p", "operator.big_lambda", "operator.variant"});
            break;
    }
    for (const auto& [key, entry] : doc.entries) {
        const bool is_operator = key.starts_with("operator.");
        const bool is_grid = key.starts_with("grid.");
        if (is_operator && std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigFileError(doc.source, entry.line,
                                  key.substr(9) + " does not apply to kind = " + std::string(to_string(cfg.kind)));
        if (is_grid && cfg.kind == OperatorKind::Matrix)
            throw ConfigFileError(doc.source, entry.line, "[grid] does not apply to kind = matrix");
    }

    cfg.cone_tolerance = r.number("operator.cone_tolerance", kDefaultConeTolerance);
    if (!(cfg.cone_tolerance >= 0.0 && cfg.cone_tolerance < 1.0))
        r.fail("operator.cone_tolerance", "cone_tolerance must lie in [0, 1)");

    // grid
    cfg.grid.n = r.integer<Index>("grid.n", 199);
    if (r.has("grid.interval")) {
        const auto text = r.text("grid.interval", "");
        const auto comma = text.find(',');
        if (comma == std::string::npos) r.fail("grid.interval", "interval must be 'a, b'");
        cfg.grid.a = r.parse_double("grid.interval", std::string_view(text).substr(0, comma));
        cfg.grid.b = r.parse_double("grid.interval", std::string_view(text).substr(comma + 1));
    }
    if (cfg.kind != OperatorKind::Matrix) {
        if (cfg.grid.n < 3) r.fail("grid.n", "n = " + std::to_string(cfg.grid.n) + " must be at least 3");
        if (!(cfg.grid.a < cfg.grid.b) || !std::isfinite(cfg.grid.a) || !std::isfinite(cfg.grid.b))
            r.fail("grid.interval", "interval (a, b) needs finite a < b");
    }

    switch (cfg.kind) {
        case OperatorKind::Matrix: {
            const bool inline_matrix = r.has("operator.matrix");
            const bool file_matrix = r.has("operator.matrix_file");
            if (inline_matrix == file_matrix) {
                throw ConfigFileError(doc.source, doc.find("operator.kind")->line,
                                      "kind = matrix needs exactly one of matrix or matrix_file");
            }
            if (inline_matrix) {
                cfg.matrix = parse_matrix(r, "operator.matrix", r.text("operator.matrix", ""));
            } else {
                std::filesystem::path path = r.text("operator.matrix_file", "");
                if (path.is_relative()) path = doc.base_dir / path;
                std::string contents;
                try {
                    contents = read_text_file(path);
                } catch (const ConfigError& e) {
                    r.fail("operator.matrix_file", e.what());
                }
                cfg.matrix = parse_matrix(r, "operator.matrix_file", contents);
            }
            break;
        }
        case OperatorKind::PLaplace: {
            cfg.p = r.number("operator.p", 2.0);
            if (!(cfg.p > 1.0) || !std::isfinite(cfg.p))
                r.fail("operator.p", "p = " + format_double(cfg.p) + " must be a finite number greater than 1");
            break;
        }
        case OperatorKind::HardySobolev: {
            cfg.p = r.number("operator.p", 2.0);
            cfg.n_dim = r.integer<int>("operator.n_dim", 3);
            cfg.mu = r.number("operator.mu", 0.0);
            if (!(cfg.p > 1.0) || !std::isfinite(cfg.p))
                r.fail("operator.p", "p = " + format_double(cfg.p) + " must be a finite number greater than 1");
            if (!(cfg.n_dim > cfg.p))
                r.fail(r.has("operator.n_dim") ? "operator.n_dim" : "operator.p",
                       "n_dim = " + std::to_string(cfg.n_dim) + " must exceed p = " + format_double(cfg.p));
            if (cfg.grid.a != 0.0) r.fail("grid.interval", "hardy_sobolev needs a radial interval starting at 0");
            HardySobolevSpec spec;
            spec.p = cfg.p;
            spec.n_dim = cfg.n_dim;
            spec.mu = cfg.mu;
            spec.grid = cfg.grid;
            try {
                spec.validate();
            } catch (const ConfigError& e) {
                r.fail("operator.mu", e.what());
            }
            break;
        }
        case OperatorKind::Pucci: {
            cfg.lambda_p = r.number("operator.lambda_p", 1.0);
            cfg.big_lambda = r.number("operator.big_lambda", 1.0);
            const auto variant = r.text("operator.variant", "plus");
            if (variant == "plus") cfg.variant = PucciVariant::Plus;
            else if (variant == "minus") cfg.variant = PucciVariant::Minus;
            else r.fail("operator.variant", "variant = '" + variant + "' is not one of plus, minus");
            if (!(cfg.lambda_p > 0.0) || !std::isfinite(cfg.lambda_p))
                r.fail("operator.lambda_p", "lambda_p = " + format_double(cfg.lambda_p) + " must be positive");
            if (!(cfg.big_lambda >= cfg.lambda_p) || !std::isfinite(cfg.big_lambda))
                r.fail(r.has("operator.big_lambda") ? "operator.big_lambda" : "operator.lambda_p",
                       "need 0 < lambda_p <= big_lambda, got lambda_p = " + format_double(cfg.lambda_p) +
                           ", big_lambda = " + format_double(cfg.big_lambda));
            break;
        }
    }

    // solver
    auto& s = cfg.solver;
    s.eps0 = r.number("solver.eps0", s.eps0);
    s.ratio = r.number("solver.ratio", s.ratio);
    s.eps_min = r.number("solver.eps_min", s.eps_min);
    s.inner_tol = r.number("solver.tol", s.inner_tol);
    s.max_inner_iters = r.integer<int>("solver.max_iters", s.max_inner_iters);
    s.seed = r.integer<std::uint64_t>("solver.seed", s.seed);
    if (!(s.eps0 > 0.0) || !std::isfinite(s.eps0)) r.fail("solver.eps0", "eps0 must be positive");
    if (!(s.ratio > 0.0 && s.ratio < 1.0)) r.fail("solver.ratio", "ratio = " + format_double(s.ratio) + " must lie in (0, 1)");
    if (!(s.eps_min > 0.0)) r.fail("solver.eps_min", "eps_min must be positive");
    if (!(s.eps_min < s.eps0))
        r.fail(r.has("solver.eps_min") ? "solver.eps_min" : "solver.eps0",
               "eps_min = " + format_double(s.eps_min) + " must be below eps0 = " + format_double(s.eps0));
    if (!(s.inner_tol > 0.0)) r.fail("solver.tol", "tol must be positive");
    if (s.max_inner_iters < 1) r.fail("solver.max_iters", "max_iters must be at least 1");

    // output
    cfg.trace_path = r.text("output.trace", cfg.trace_path);
    cfg.eigenpair_path = r.text("output.eigenpair", cfg.eigenpair_path);
    cfg.report_path = r.text("output.report", cfg.report_path);
    cfg.sweep_path = r.text("output.sweep", cfg.sweep_path);
    for (const auto* key : {"output.trace", "output.eigenpair", "output.report", "output.sweep"})
        if (r.has(key) && r.text(key, "").empty()) r.fail(key, std::string(key).substr(7) + " path is empty");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) { return interpret(load_document(path)); }

std::string serialize(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[operator]\n";
    out << "kind = " << to_string(cfg.kind) << "\n";
    switch (cfg.kind) {
        case OperatorKind::Matrix: {
            out << "matrix = ";
            for (Index i = 0; i < cfg.matrix.rows(); ++i) {
                if (i > 0) out << "; ";
                for (Index j = 0; j < cfg.matrix.cols(); ++j) {
                    if (j > 0) out << ' ';
                    out << format_double(cfg.matrix(i, j));
                }
            }
            out << "\n";
            break;
        }
        case OperatorKind::PLaplace: out << "p = " << format_double(cfg.p) << "\n"; break;
        case OperatorKind::HardySobolev:
            out << "p = " << format_double(cfg.p) << "\n";
            out << "n_dim = " << cfg.n_dim << "\n";
            out << "mu = " << format_double(cfg.mu) << "\n";
            break;
        case OperatorKind::Pucci:
            out << "lambda_p = " << format_double(cfg.lambda_p) << "\n";
            out << "big_lambda = " << format_double(cfg.big_lambda) << "\n";
            out << "variant = " << (cfg.variant == PucciVariant::Plus ? "plus" : "minus") << "\n";
            break;
    }
    out << "cone_tolerance = " << format_double(cfg.cone_tolerance) << "\n";
    if (cfg.kind != OperatorKind::Matrix) {
        out << "\n[grid]\n";
        out << "n = " << cfg.grid.n << "\n";
        out << "interval = " << format_double(cfg.grid.a) << ", " << format_double(cfg.grid.b) << "\n";
    }
    out << "\n[solver]\n";
    out << "eps0 = " << format_double(cfg.solver.eps0) << "\n";
    out << "ratio = " << format_double(cfg.solver.ratio) << "\n";
    out << "eps_min = " << format_double(cfg.solver.eps_min) << "\n";
    out << "tol = " << format_double(cfg.solver.inner_tol) << "\n";
    out << "max_iters = " << cfg.solver.max_inner_iters << "\n";
    out << "seed = " << cfg.solver.seed << "\n";
    out << "\n[output]\n";
    out << "trace = " << cfg.trace_path << "\n";
    out << "eigenpair = " << cfg.eigenpair_path << "\n";
    out << "report = " << cfg.report_path << "\n";
    out << "sweep = " << cfg.sweep_path << "\n";
    return out.str();
}

void apply_environment(RunConfig& cfg) {
    const char* env = std::getenv("KRL_SEED");
    if (env == nullptr) return;
    const std::string_view text = trim(env);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("KRL_SEED = '" + std::string(env) + "' is not an unsigned integer");
    cfg.solver.seed = seed;
}

MonotoneOperator build_operator(const RunConfig& cfg) {
    switch (cfg.kind) {
        case OperatorKind::Matrix: return build_matrix_operator(cfg.matrix, cfg.cone_tolerance);
        case OperatorKind::PLaplace: {
            PLaplaceSpec spec;
            spec.p = cfg.p;
            spec.grid = cfg.grid;
            return build_inverse_operator(spec, cfg.cone_tolerance);
        }
        case OperatorKind::HardySobolev: {
            HardySobolevSpec spec;
            spec.p = cfg.p;
            spec.n_dim = cfg.n_dim;
            spec.mu = cfg.mu;
            spec.grid = cfg.grid;
            return build_inverse_operator(spec, cfg.cone_tolerance);
        }
        case OperatorKind::Pucci: {
            PucciSpec spec;
            spec.lambda_p = cfg.lambda_p;
            spec.big_lambda = cfg.big_lambda;
            spec.variant = cfg.variant;
            spec.grid = cfg.grid;
            return build_inverse_operator(spec, cfg.cone_tolerance);
        }
    }
    throw ConfigError("unknown operator kind");
}

double problem_exponent(const RunConfig& cfg) {
    return cfg.kind == OperatorKind::PLaplace || cfg.kind == OperatorKind::HardySobolev ? cfg.p : 2.0;
}

}  // namespace krl::cli
