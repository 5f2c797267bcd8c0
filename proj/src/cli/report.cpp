#include "rnmw/cli.hpp"
#include "rnmw/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rnmw::cli {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void dump_into(const Json& j, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(it.key()).dump() + ": ";
                dump_into(it.value(), out, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                dump_into(j[i], out, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_real(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_into(j, out, 0);
    out += "\n";
    return out;
}

Json read_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open report '" + path + "'");
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("report '" + path + "' is not valid JSON: " + e.what());
    }
}

namespace {

Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json model_report_json(const ModelReport& m) {
    const auto& fit = m.fit;
    Json j;
    j["model"] = model_name(fit.model);
    Json est = Json::object(), se = Json::object();
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
        est[fit.names[i]] = real_or_null(fit.estimates[static_cast<int>(i)]);
        se[fit.names[i]] = real_or_null(fit.std_errors[static_cast<int>(i)]);
    }
    j["estimates"] = est;
    j["std_errors"] = se;
    if (fit.covariance) {
        Json rows = Json::array();
        for (int r = 0; r < fit.covariance->rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < fit.covariance->cols(); ++c) row.push_back((*fit.covariance)(r, c));
            rows.push_back(row);
        }
        j["covariance"] = rows;
    } else {
        j["covariance"] = nullptr;
    }
    j["loglik"] = real_or_null(fit.loglik);

    const auto& c = m.criteria;
    j["criteria"] = {{"k", c.k},
                     {"n", c.n},
                     {"aic", real_or_null(c.aic)},
                     {"bic", real_or_null(c.bic)},
                     {"aicc", c.aicc ? real_or_null(*c.aicc) : Json(nullptr)},
                     {"caic_bozdogan", real_or_null(c.caic_bozdogan)}};
    j["ks"] = real_or_null(m.ks);

    Json wald = Json::array();
    for (const auto& w : m.intervals)
        wald.push_back({{"parameter", w.parameter},
                        {"level", w.level},
                        {"lower", real_or_null(w.lower)},
                        {"upper", real_or_null(w.upper)}});
    j["wald_intervals"] = wald;

    j["diagnostics"] = {{"converged", fit.converged},
                        {"gradient_norm", real_or_null(fit.gradient_norm)},
                        {"iterations", fit.iterations},
                        {"starts_tried", fit.starts_tried},
                        {"best_start", fit.best_start},
                        {"condition_number", real_or_null(fit.condition_number)},
                        {"delta_method_discrepancy", real_or_null(fit.delta_method_discrepancy)},
                        {"warnings", fit.warnings}};
    return j;
}

std::string report_table(const Dataset& ds, const std::vector<ModelReport>& models,
                         const std::optional<LrtResult>& lrt) {
    std::ostringstream os;
    os << "Dataset " << ds.name() << ": n = " << ds.size() << ", failures = " << ds.failures()
       << ", censored = " << ds.censored() << "\n\n";
    os << std::left << std::setw(8) << "Model" << std::setw(10) << "param" << std::setw(16)
       << "estimate" << std::setw(16) << "std.error" << "Wald interval\n";
    for (const auto& m : models) {
        const auto& f = m.fit;
        for (std::size_t i = 0; i < f.names.size(); ++i) {
            const int ii = static_cast<int>(i);
            os << std::setw(8) << (i == 0 ? model_name(f.model) : "") << std::setw(10) << f.names[i]
               << std::setw(16) << std::setprecision(6) << f.estimates[ii] << std::setw(16)
               << f.std_errors[ii];
            if (i < m.intervals.size())
                os << "[" << m.intervals[i].lower << ", " << m.intervals[i].upper << "]";
            os << "\n";
        }
    }
    os << "\n"
       << std::setw(8) << "Model" << std::setw(12) << "loglik" << std::setw(10) << "AIC"
       << std::setw(10) << "BIC" << std::setw(10) << "AICc" << std::setw(10) << "CAIC(B)"
       << std::setw(10) << "K-S" << "converged\n";
    os << std::fixed;
    for (const auto& m : models) {
        const auto& c = m.criteria;
        os << std::setw(8) << model_name(m.fit.model) << std::setprecision(3) << std::setw(12)
           << m.fit.loglik << std::setprecision(2) << std::setw(10) << c.aic << std::setw(10)
           << c.bic << std::setw(10) << (c.aicc ? *c.aicc : std::nan("")) << std::setw(10)
           << c.caic_bozdogan << std::setprecision(4) << std::setw(10) << m.ks
           << (m.fit.converged ? "yes" : "no") << "\n";
    }
    if (lrt)
        os << "\nLikelihood ratio test (gamma = theta = 1/2): omega = " << std::setprecision(3)
           << lrt->omega << ", df = " << lrt->df << ", p = " << lrt->p_value << "\n";
    return os.str();
}

}  // namespace rnmw::cli
