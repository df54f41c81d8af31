#include "krl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "krl/errors.hpp"

namespace krl {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trace_to_csv(const ContinuationTrace& trace) {
    std::ostringstream os;
    os << kTraceCsvHeader << '\n';
    for (const TraceRecord& r : trace.records) {
        os << format_double(r.eps) << ',' << format_double(r.lambda) << ',' << r.iterations << ','
           << format_double(r.residual) << ',' << format_double(r.step_delta) << '\n';
    }
    return os.str();
}

nlohmann::json eigenpair_to_json(const EigenPair& pair) {
    return nlohmann::json{{"lambda0", pair.lambda},
                          {"residual", pair.residual},
                          {"norm", "sup"},
                          {"x", std::vector<double>(pair.x.data(), pair.x.data() + pair.x.size())}};
}

EigenPair eigenpair_from_json(const nlohmann::json& j) {
    if (j.at("norm").get<std::string>() != "sup") throw ConfigError("eigenpair JSON: only the sup norm is supported");
    EigenPair pair;
    pair.lambda = j.at("lambda0").get<double>();
    pair.residual = j.at("residual").get<double>();
    const auto x = j.at("x").get<std::vector<double>>();
    pair.x = Eigen::Map<const Vector>(x.data(), static_cast<Index>(x.size()));
    pair.in_cone = (pair.x.array() >= 0.0).all();
    return pair;
}

nlohmann::json reports_to_json(const std::vector<PropertyReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r);
    return arr;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot rename temporary file onto " + path.string());
    }
}

}  // namespace krl
