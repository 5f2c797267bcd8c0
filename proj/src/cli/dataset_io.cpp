#include "rnmw/cli.hpp"
#include "rnmw/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rnmw::cli {

bool parse_real(std::string_view token, double& out) {
    if (token.empty()) return false;
    if (token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ',' || c == ';' || c == '\t' || c == ' ' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_sep(line[j])) ++j;
        fields.push_back(line.substr(i, j - i));
        while (j < line.size() && (line[j] == ' ' || line[j] == '\t' || line[j] == '\r')) ++j;
        if (j < line.size() && (line[j] == ',' || line[j] == ';')) ++j;
        i = j;
    }
    return fields;
}

}  // namespace

Dataset parse_dataset(std::string_view text, std::string name) {
    std::vector<Observation> obs;
    std::size_t line_no = 0;
    bool seen_row = false;
    int columns = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;

        auto where = [&] { return name + ":" + std::to_string(line_no) + ": "; };
        double t = 0.0;
        if (!parse_real(fields[0], t)) {
            if (!seen_row) {  // header
                seen_row = true;
                continue;
            }
            throw InputError(where() + "cannot parse time '" + std::string(fields[0]) + "'");
        }
        seen_row = true;
        if (fields.size() > 2) throw InputError(where() + "expected one or two columns");
        if (columns == 0) columns = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != columns)
            throw InputError(where() + "inconsistent number of columns");
        if (!(t > 0.0) || !std::isfinite(t))
            throw InputError(where() + "times must be finite and strictly positive");

        Event ev = Event::Failure;
        if (fields.size() == 2) {
            if (fields[1] == "1") ev = Event::Failure;
            else if (fields[1] == "0") ev = Event::Censored;
            else throw InputError(where() + "status must be 1 (failure) or 0 (censored)");
        }
        obs.push_back({t, ev});
    }
    if (obs.empty()) throw InputError(name + ": no observations");
    return Dataset(std::move(name), std::move(obs));
}

Dataset read_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_dataset(buf.str(), path);
}

}  // namespace rnmw::cli
