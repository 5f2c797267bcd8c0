#pragma once

#include "rnmw/fit.hpp"
#include "rnmw/selection.hpp"
#include "rnmw/likelihood.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rnmw::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kConvergenceFailure = 3, kNumericError = 4 };

/// Delimited text with columns `time[,status]`; status 1 = failure,
/// 0 = censored. Separators may be commas, semicolons, tabs or spaces.
/// A non-numeric first row is a header; '#' starts a comment.
Dataset parse_dataset(std::string_view text, std::string name);
Dataset read_dataset(const std::string& path);

/// Locale-independent real parsing; the whole token must be consumed.
bool parse_real(std::string_view token, double& out);

/// Reals with 17 significant digits, enough to read back the same double.
std::string format_real(double v);

using Json = nlohmann::ordered_json;

/// Pretty JSON with every real printed via format_real, so reading a dump
/// back and dumping again reproduces the bytes.
std::string dump_json(const Json& j);
Json read_json(const std::string& path);

struct ModelReport {
    FitResult fit;
    CriteriaReport criteria;
    double ks = 0.0;
    std::vector<WaldInterval> intervals;
};

Json model_report_json(const ModelReport& m);
std::string report_table(const Dataset& ds, const std::vector<ModelReport>& models,
                         const std::optional<LrtResult>& lrt);

/// Entry point for the `rnmw` tool. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rnmw::cli
