#include "rnmw/cli.hpp"
#include "rnmw/error.hpp"
#include "rnmw/moments.hpp"
#include "rnmw/random.hpp"
#include "rnmw/selection.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rnmw::cli {

namespace {

struct RunConfig {
    std::string input;
    std::string out;
    std::string model = "both";
    double level = 0.95;
    int starts = 20;
    std::uint64_t seed = 12345;
    double tol = 1e-6;
    std::string grid;
    std::string params;
    std::string report;
    std::size_t count = 0;
    int points = 200;
    double xmax = 0.0;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << content;
    if (!f) throw InputError("failed writing '" + path + "'");
}

std::vector<double> parse_real_list(const std::string& s, const char* what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double x = 0.0;
        if (!parse_real(tok, x)) throw InputError(std::string(what) + ": cannot parse '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

GridAxis parse_axis(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        double x = 0.0;
        if (!parse_real(tok, x)) throw InputError("--grid: cannot parse '" + tok + "'");
        v.push_back(x);
    }
    if (v.size() != 3) throw InputError("--grid: each axis is start:stop:step");
    return GridAxis{v[0], v[1], v[2]};
}

// "a0:a1:da,b0:b1:db,l0:l1:dl"; a single axis applies to all three.
GridSpec parse_grid(const std::string& s) {
    if (s.empty()) return GridSpec::standard();
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() == 1) {
        const auto a = parse_axis(parts[0]);
        return GridSpec{a, a, a};
    }
    if (parts.size() != 3) throw InputError("--grid: expected one or three axes");
    return GridSpec{parse_axis(parts[0]), parse_axis(parts[1]), parse_axis(parts[2])};
}

FitOptions fit_options(const RunConfig& cfg) {
    FitOptions o;
    o.starts = cfg.starts;
    o.seed = cfg.seed;
    o.tolerance = cfg.tol;
    return o;
}

ModelReport summarize(const Dataset& ds, FitResult fit, double level) {
    ModelReport m;
    m.criteria = information_criteria(fit.loglik, static_cast<int>(fit.estimates.size()),
                                      static_cast<int>(ds.size()));
    if (fit.model == Model::RNMW) {
        const auto p = fit.rnmw();
        m.ks = ks_statistic(ds, [&](double x) { return cdf(p, x); });
    } else {
        const auto q = fit.nmw();
        m.ks = ks_statistic(ds, [&](double x) { return nmw_cdf(q, x); });
    }
    if (fit.covariance) m.intervals = wald_intervals(fit, level);
    m.fit = std::move(fit);
    return m;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Dataset ds = read_dataset(cfg.input);
    const auto opts = fit_options(cfg);

    std::vector<ModelReport> models;
    const FitResult reduced = fit_mle(ds, Model::RNMW, opts);
    if (cfg.model != "nmw") models.push_back(summarize(ds, reduced, cfg.level));
    if (cfg.model != "rnmw")
        models.push_back(summarize(ds, fit_nmw_from(ds, reduced.rnmw(), opts), cfg.level));

    bool all_converged = true;
    for (const auto& m : models) all_converged = all_converged && m.fit.converged;

    Json doc;
    doc["dataset"] = {{"name", ds.name()},
                      {"n", ds.size()},
                      {"failures", ds.failures()},
                      {"censored", ds.censored()}};
    doc["options"] = {{"starts", opts.starts},
                      {"seed", opts.seed},
                      {"tolerance", opts.tolerance},
                      {"level", cfg.level}};
    Json jm = Json::object();
    for (const auto& m : models) {
        Json entry = model_report_json(m);
        if (m.fit.model == Model::RNMW) {
            const auto shape = hazard_shape(m.fit.rnmw());
            if (shape.kind == HazardKind::Bathtub)
                entry["hazard_shape"] = {{"kind", "bathtub"},
                                         {"minimum_location", *shape.minimum_location},
                                         {"minimum_value", *shape.minimum_value}};
            else
                entry["hazard_shape"] = {{"kind", "decreasing"}};
        }
        jm[model_name(m.fit.model)] = entry;
    }
    doc["models"] = jm;

    std::optional<LrtResult> lrt;
    if (cfg.model == "both") {
        try {
            lrt = likelihood_ratio_test(models[1].fit.loglik, models[0].fit.loglik);
            doc["lrt"] = {{"omega", lrt->omega}, {"df", lrt->df}, {"p_value", lrt->p_value}};
        } catch (const NumericError& e) {
            doc["lrt"] = {{"error", e.what()}};
            err << "warning: " << e.what() << "\n";
            all_converged = false;
        }
    }

    out << report_table(ds, models, lrt);
    if (!cfg.out.empty()) write_file(cfg.out, dump_json(doc));
    for (const auto& m : models)
        for (const auto& w : m.fit.warnings) err << model_name(m.fit.model) << ": " << w << "\n";
    return all_converged ? kOk : kConvergenceFailure;
}

// A fitted or user-specified model used by the curves command.
struct CurveModel {
    std::string label;
    std::optional<RnmwParams> reduced;
    NmwParams full;

    double pdf(double x) const { return reduced ? rnmw::pdf(*reduced, x) : nmw_pdf(full, x); }
    double survival(double x) const {
        return reduced ? rnmw::survival(*reduced, x) : nmw_survival(full, x);
    }
    double hazard(double x) const { return reduced ? rnmw::hazard(*reduced, x) : nmw_hazard(full, x); }
    double quantile(double u) const {
        return reduced ? rnmw::quantile(*reduced, u) : nmw_quantile(full, u);
    }
    TttCurve ttt(std::span<const double> u) const {
        return reduced ? fitted_ttt(*reduced, u) : fitted_ttt(full, u);
    }
    std::string describe() const {
        std::ostringstream os;
        os << label << " alpha=" << format_real(full.alpha) << " beta=" << format_real(full.beta);
        if (!reduced) os << " gamma=" << format_real(full.gamma) << " theta=" << format_real(full.theta);
        os << " lambda=" << format_real(full.lambda);
        return os.str();
    }
};

CurveModel make_model(Model m, const std::vector<double>& v) {
    CurveModel c;
    c.label = model_name(m);
    if (m == Model::RNMW) {
        if (v.size() != 3) throw InputError("RNMW needs alpha,beta,lambda");
        c.reduced = RnmwParams{v[0], v[1], v[2]};
        validate(*c.reduced);
        c.full = to_nmw(*c.reduced);
    } else {
        if (v.size() != 5) throw InputError("NMW needs alpha,beta,gamma,theta,lambda");
        c.full = NmwParams{v[0], v[1], v[2], v[3], v[4]};
        validate(c.full);
    }
    return c;
}

std::vector<CurveModel> curve_models(const RunConfig& cfg) {
    std::vector<CurveModel> models;
    if (!cfg.report.empty()) {
        const Json doc = read_json(cfg.report);
        if (!doc.contains("models")) throw InputError("report has no 'models' section");
        for (auto m : {Model::RNMW, Model::NMW}) {
            const std::string name = model_name(m);
            if (!doc["models"].contains(name)) continue;
            if (cfg.model != "both" && cfg.model != (m == Model::RNMW ? "rnmw" : "nmw")) continue;
            std::vector<double> v;
            for (const auto& [key, val] : doc["models"][name]["estimates"].items()) {
                if (!val.is_number()) throw InputError("report estimate '" + key + "' is not a number");
                v.push_back(val.get<double>());
            }
            models.push_back(make_model(m, v));
        }
    } else if (!cfg.params.empty()) {
        const auto v = parse_real_list(cfg.params, "--params");
        models.push_back(make_model(v.size() == 5 ? Model::NMW : Model::RNMW, v));
    } else {
        throw InputError("curves: supply --report or --params");
    }
    if (models.empty()) throw InputError("curves: no model selected");
    return models;
}

std::string curve_header(const char* curve, const std::vector<CurveModel>& models) {
    std::string h = std::string("# curve: ") + curve + "\n";
    for (const auto& m : models) h += "# model: " + m.describe() + "\n";
    return h;
}

int cmd_curves(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto models = curve_models(cfg);
    std::optional<Dataset> ds;
    if (!cfg.input.empty()) ds = read_dataset(cfg.input);
    if (cfg.points < 2) throw InputError("--points must be at least 2");
    if (cfg.out.empty()) throw InputError("curves: --out prefix is required");

    double xmax = cfg.xmax;
    if (!(xmax > 0.0)) {
        xmax = ds ? ds->max_time() : 0.0;
        for (const auto& m : models) xmax = std::max(xmax, m.quantile(0.999));
    }
    const int np = cfg.points;
    std::vector<double> xs;
    for (int i = 1; i <= np; ++i) xs.push_back(xmax * i / np);

    std::string cols;
    for (const auto& m : models) cols += "," + m.label;

    {  // density
        std::string s = curve_header("pdf", models) + "x" + cols + "\n";
        for (double x : xs) {
            s += format_real(x);
            for (const auto& m : models) s += "," + format_real(m.pdf(x));
            s += "\n";
        }
        write_file(cfg.out + "pdf.csv", s);
    }
    {  // survival, fitted and Kaplan-Meier
        std::optional<KmCurve> km;
        if (ds) km = kaplan_meier(*ds);
        std::string s = curve_header("survival", models) + "x" + cols + (km ? ",kaplan_meier" : "") + "\n";
        std::vector<double> grid{0.0};
        grid.insert(grid.end(), xs.begin(), xs.end());
        for (double x : grid) {
            s += format_real(x);
            for (const auto& m : models) s += "," + format_real(m.survival(x));
            if (km) s += "," + format_real(km->at(x));
            s += "\n";
        }
        write_file(cfg.out + "survival.csv", s);
    }
    {  // hazard with the bathtub minimum of the first RNMW model marked
        std::optional<double> x0;
        for (const auto& m : models)
            if (m.reduced) {
                const auto shape = hazard_shape(*m.reduced);
                if (shape.minimum_location) x0 = shape.minimum_location;
                break;
            }
        std::vector<double> grid = xs;
        if (x0) {
            grid.push_back(*x0);
            std::sort(grid.begin(), grid.end());
        }
        std::string s = curve_header("hazard", models);
        if (x0) s += "# minimum: x0=" + format_real(*x0) + "\n";
        s += "x" + cols + ",is_minimum\n";
        for (double x : grid) {
            s += format_real(x);
            for (const auto& m : models) s += "," + format_real(m.hazard(x));
            s += (x0 && x == *x0) ? ",1\n" : ",0\n";
        }
        write_file(cfg.out + "hazard.csv", s);
    }
    {  // TTT
        std::vector<double> us;
        for (int i = 1; i < np; ++i) us.push_back(static_cast<double>(i) / np);
        std::vector<TttCurve> curves;
        for (const auto& m : models) curves.push_back(m.ttt(us));
        std::string s = curve_header("ttt", models) + "u" + cols + "\n";
        for (std::size_t i = 0; i < us.size(); ++i) {
            s += format_real(us[i]);
            for (const auto& c : curves) s += "," + format_real(c.points[i].value);
            s += "\n";
        }
        write_file(cfg.out + "ttt.csv", s);

        if (ds) {
            if (ds->has_censoring()) {
                err << "notice: empirical TTT is not defined for censored data; "
                       "ttt_empirical.csv not written\n";
            } else {
                const auto e = empirical_ttt(*ds);
                std::string se = "# curve: ttt_empirical\n# dataset: " + ds->name() + "\nu,ttt\n";
                for (const auto& p : e.points) se += format_real(p.u) + "," + format_real(p.value) + "\n";
                write_file(cfg.out + "ttt_empirical.csv", se);
            }
        }
    }
    out << "wrote " << cfg.out << "{pdf,survival,hazard,ttt}.csv\n";
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const GridSpec grid = parse_grid(cfg.grid);
    const auto rows = skew_kurt_grid(grid);
    std::string s = "# curve: skewness-kurtosis sweep\nalpha,beta,lambda,skewness,kurtosis,status\n";
    std::size_t failed = 0;
    for (const auto& r : rows) {
        s += format_real(r.params.alpha) + "," + format_real(r.params.beta) + "," +
             format_real(r.params.lambda) + ",";
        if (r.ok) {
            s += format_real(r.skewness) + "," + format_real(r.kurtosis) + ",ok\n";
        } else {
            ++failed;
            s += "nan,nan,failed\n";
            err << "sweep point (" << r.params.alpha << ", " << r.params.beta << ", "
                << r.params.lambda << "): " << r.error << "\n";
        }
    }
    if (cfg.out.empty()) out << s;
    else write_file(cfg.out, s);
    return failed == 0 ? kOk : kNumericError;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto v = parse_real_list(cfg.params, "--params");
    if (v.size() != 3) throw InputError("sample: --params alpha,beta,lambda");
    const RnmwParams p{v[0], v[1], v[2]};
    try {
        validate(p);
    } catch (const DomainError& e) {
        throw InputError(std::string("sample: ") + e.what());
    }
    UniformStream stream(cfg.seed);
    const auto u = stream.take(cfg.count);
    const auto draws = sample(p, u);
    std::string s = "time\n";
    for (double x : draws) s += format_real(x) + "\n";
    if (cfg.out.empty()) out << s;
    else write_file(cfg.out, s);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reduced new modified Weibull toolkit: fitting, curves, sweeps and sampling"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* fit = app.add_subcommand("fit", "Fit RNMW and/or NMW by maximum likelihood");
    fit->add_option("--input", cfg.input, "Data file (time[,status])")->required();
    fit->add_option("--out", cfg.out, "JSON report path");
    fit->add_option("--model", cfg.model, "rnmw, nmw or both")
        ->check(CLI::IsMember({"rnmw", "nmw", "both"}));
    fit->add_option("--level", cfg.level, "Wald interval level")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    fit->add_option("--starts", cfg.starts, "Multistart count")->check(CLI::PositiveNumber);
    fit->add_option("--seed", cfg.seed, "Seed for start perturbations");
    fit->add_option("--tol", cfg.tol, "Gradient tolerance")->check(CLI::PositiveNumber);

    auto* curves = app.add_subcommand("curves", "Emit plot data for fitted curves");
    curves->add_option("--report", cfg.report, "JSON report from `fit`");
    curves->add_option("--params", cfg.params, "alpha,beta,lambda or alpha,beta,gamma,theta,lambda");
    curves->add_option("--model", cfg.model, "Models to take from the report")
        ->check(CLI::IsMember({"rnmw", "nmw", "both"}));
    curves->add_option("--input", cfg.input, "Data file for Kaplan-Meier and empirical TTT");
    curves->add_option("--out", cfg.out, "Output path prefix")->required();
    curves->add_option("--points", cfg.points, "Grid size");
    curves->add_option("--xmax", cfg.xmax, "Right end of the time grid");

    auto* sweep = app.add_subcommand("sweep", "Skewness-kurtosis sweep over an RNMW grid");
    sweep->add_option("--grid", cfg.grid, "start:stop:step[,start:stop:step,start:stop:step]");
    sweep->add_option("--out", cfg.out, "Output CSV (stdout if omitted)");

    auto* smp = app.add_subcommand("sample", "Draw RNMW lifetimes by inverse transform");
    smp->add_option("--params", cfg.params, "alpha,beta,lambda")->required();
    smp->add_option("--n", cfg.count, "Number of draws")->required();
    smp->add_option("--seed", cfg.seed, "Generator seed");
    smp->add_option("--out", cfg.out, "Output file (stdout if omitted)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (fit->parsed()) return cmd_fit(cfg, out, err);
        if (curves->parsed()) return cmd_curves(cfg, out, err);
        if (sweep->parsed()) return cmd_sweep(cfg, out, err);
        return cmd_sample(cfg, out, err);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kNumericError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kNumericError;
    }
}

}  // namespace rnmw::cli
