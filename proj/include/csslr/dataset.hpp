#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace csslr {

struct Column {
    std::string name;
    std::vector<double> values;
};

// Binary-response dataset: response I_i in {0,1} (1 = bad) plus named
// numeric predictor columns, all of common length. Immutable after
// construction; safe to share across threads.
class Dataset {
public:
    Dataset(std::vector<int> response, std::vector<Column> variables);

    std::size_t n_obs() const { return response_.size(); }
    const std::vector<int>& response() const { return response_; }
    const std::vector<Column>& variables() const { return variables_; }

    bool has_variable(std::string_view name) const;
    const Column& variable(std::string_view name) const;

private:
    std::vector<int> response_;
    std::vector<Column> variables_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

Dataset load_dataset(std::istream& in, const std::string& response_column);
Dataset load_dataset(const std::filesystem::path& path, const std::string& response_column);

// Symmetric writer: response column first, values at 17 significant digits
// so that load_dataset(write_dataset(d)) reproduces d.
void write_dataset(const Dataset& data, std::ostream& out,
                   const std::string& response_column = "response");
void write_dataset(const Dataset& data, const std::filesystem::path& path,
                   const std::string& response_column = "response");

enum class Sign { Positive, Negative, NoExpectation };

// Expected coefficient signs keyed by variable name; variables absent from
// the map have no expectation and their sign check is skipped.
class SignExpectation {
public:
    using Map = std::map<std::string, Sign, std::less<>>;

    SignExpectation() = default;
    explicit SignExpectation(Map expectations) : expectations_(std::move(expectations)) {}

    Sign expectation(std::string_view name) const;
    void set(const std::string& name, Sign sign) { expectations_[name] = sign; }

    // every key must name a variable of the dataset
    void validate_against(const Dataset& data) const;

    const Map& entries() const { return expectations_; }

private:
    Map expectations_;
};

// CSV with rows "name,sign", sign one of Positive/Negative/NoExpectation
// (also accepts +/-).
SignExpectation load_signs(std::istream& in);
SignExpectation load_signs(const std::filesystem::path& path);

}  // namespace csslr
