#include "csslr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "csslr/errors.hpp"

namespace csslr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, std::size_t row, const std::string& col) {
    std::string s = strip(raw);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError("non-numeric cell '" + raw + "' in column '" + col +
                              "', row " + std::to_string(row));
    }
    return value;
}

}  // namespace

Dataset::Dataset(std::vector<int> response, std::vector<Column> variables)
    : response_(std::move(response)), variables_(std::move(variables)) {
    const std::size_t n = response_.size();
    if (n == 0) throw ValidationError("empty dataset");
    bool any0 = false, any1 = false;
    for (int v : response_) {
        if (v == 0) any0 = true;
        else if (v == 1) any1 = true;
        else throw ValidationError("non-binary response value");
    }
    if (!any0 || !any1) throw ValidationError("single-class response");
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        const Column& c = variables_[j];
        if (c.name.empty()) throw ValidationError("empty variable name");
        if (c.values.size() != n) {
            throw ValidationError("column '" + c.name + "' has length " +
                                  std::to_string(c.values.size()) + ", expected " +
                                  std::to_string(n));
        }
        for (double x : c.values) {
            if (!std::isfinite(x)) {
                throw ValidationError("non-finite value in column '" + c.name + "'");
            }
        }
        if (!index_.emplace(c.name, j).second) {
            throw ValidationError("duplicate variable name '" + c.name + "'");
        }
    }
}

bool Dataset::has_variable(std::string_view name) const {
    return index_.find(name) != index_.end();
}

const Column& Dataset::variable(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw ValidationError("unknown variable '" + std::string(name) + "'");
    }
    return variables_[it->second];
}

Dataset load_dataset(std::istream& in, const std::string& response_column) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = strip(h);
    if (header.empty()) throw ValidationError("missing header row");

    std::ptrdiff_t resp_idx = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == response_column) {
            resp_idx = static_cast<std::ptrdiff_t>(j);
            break;
        }
    }
    if (resp_idx < 0) {
        throw ValidationError("response column '" + response_column + "' not found");
    }

    std::vector<int> response;
    std::vector<Column> variables;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (static_cast<std::ptrdiff_t>(j) != resp_idx) {
            variables.push_back(Column{header[j], {}});
        }
    }

    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;
        ++row;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ValidationError("ragged row " + std::to_string(row) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        std::size_t vj = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (static_cast<std::ptrdiff_t>(j) == resp_idx) {
                double y = parse_number(fields[j], row, response_column);
                if (y != 0.0 && y != 1.0) {
                    throw ValidationError("non-binary response value in row " +
                                          std::to_string(row));
                }
                response.push_back(static_cast<int>(y));
            } else {
                variables[vj].values.push_back(parse_number(fields[j], row, variables[vj].name));
                ++vj;
            }
        }
    }
    return Dataset(std::move(response), std::move(variables));
}

Dataset load_dataset(const std::filesystem::path& path, const std::string& response_column) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return load_dataset(in, response_column);
}

void write_dataset(const Dataset& data, std::ostream& out, const std::string& response_column) {
    out << response_column;
    for (const Column& c : data.variables()) out << ',' << c.name;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        out << data.response()[i];
        for (const Column& c : data.variables()) {
            std::snprintf(buf, sizeof(buf), "%.17g", c.values[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

void write_dataset(const Dataset& data, const std::filesystem::path& path,
                   const std::string& response_column) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    write_dataset(data, out, response_column);
}

Sign SignExpectation::expectation(std::string_view name) const {
    auto it = expectations_.find(name);
    return it == expectations_.end() ? Sign::NoExpectation : it->second;
}

void SignExpectation::validate_against(const Dataset& data) const {
    for (const auto& [name, sign] : expectations_) {
        (void)sign;
        if (!data.has_variable(name)) {
            throw ValidationError("sign expectation references unknown variable '" + name + "'");
        }
    }
}

SignExpectation load_signs(std::istream& in) {
    SignExpectation::Map map;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++row;
        std::string stripped = strip(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::vector<std::string> fields = split_csv_line(stripped);
        if (fields.size() != 2) {
            throw ValidationError("signs file row " + std::to_string(row) +
                                  ": expected 'name,sign'");
        }
        std::string name = strip(fields[0]);
        std::string sign = strip(fields[1]);
        if (row == 1 && (sign == "sign" || sign == "expected_sign")) continue;  // header
        Sign s;
        if (sign == "Positive" || sign == "+") s = Sign::Positive;
        else if (sign == "Negative" || sign == "-") s = Sign::Negative;
        else if (sign == "NoExpectation") s = Sign::NoExpectation;
        else throw ValidationError("unknown sign '" + sign + "' for variable '" + name + "'");
        map[name] = s;
    }
    return SignExpectation(std::move(map));
}

SignExpectation load_signs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return load_signs(in);
}

}  // namespace csslr
