#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "sbpm/data.hpp"
#include "sbpm/error.hpp"
#include "sbpm/io.hpp"

namespace sbpm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

bool is_nonneg_integer_literal(const std::string& cell) {
    if (cell.empty()) return false;
    return std::all_of(cell.begin(), cell.end(),
                       [](unsigned char ch) { return std::isdigit(ch) != 0; });
}

double parse_cell(const std::string& cell, ColumnKind kind, std::size_t data_row,
                  const std::string& column_name) {
    const auto fail = [&](const char* what) {
        throw Error("csv parse error at row " + std::to_string(data_row) + ", column '" +
                    column_name + "': " + what + " ('" + cell + "')");
    };
    if (kind == ColumnKind::discrete) {
        if (!is_nonneg_integer_literal(cell)) fail("expected a non-negative integer code");
        std::uint64_t code = 0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), code);
        if (ec != std::errc{} || ptr != cell.data() + cell.size()) fail("invalid integer");
        return static_cast<double>(code);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        fail("expected a decimal number");
    }
    if (!std::isfinite(value)) fail("non-finite value rejected");
    return value;
}

Dataset read_csv_impl(const std::filesystem::path& path, const std::vector<Column>* declared) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open csv file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error("csv file has no header row: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> names = split_line(line);

    if (declared != nullptr && declared->size() != names.size()) {
        throw Error("csv header of " + path.string() + " has " + std::to_string(names.size()) +
                    " columns, declared schema has " + std::to_string(declared->size()));
    }

    std::vector<std::vector<std::string>> body;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++data_row;
        auto cells = split_line(line);
        if (cells.size() != names.size()) {
            throw Error("csv parse error at row " + std::to_string(data_row) + " of " +
                        path.string() + ": expected " + std::to_string(names.size()) +
                        " cells, got " + std::to_string(cells.size()));
        }
        body.push_back(std::move(cells));
    }

    std::vector<Column> schema;
    if (declared != nullptr) {
        schema = *declared;
        for (std::size_t c = 0; c < schema.size(); ++c) schema[c].name = names[c];
    } else {
        schema.reserve(names.size());
        for (std::size_t c = 0; c < names.size(); ++c) {
            // A column whose every cell is a bare non-negative integer is a
            // discrete code column; the numeric writer always emits '.'/'e'.
            bool discrete = !body.empty();
            for (const auto& row : body) {
                if (!is_nonneg_integer_literal(row[c])) {
                    discrete = false;
                    break;
                }
            }
            schema.push_back(
                Column{names[c], discrete ? ColumnKind::discrete : ColumnKind::numeric, {}});
        }
    }

    Dataset d{schema};
    d.reserve_rows(body.size());
    std::vector<double> row(schema.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        for (std::size_t c = 0; c < schema.size(); ++c) {
            row[c] = parse_cell(body[i][c], schema[c].kind, i + 1, schema[c].name);
        }
        d.append_row(row);
    }
    return d;
}

}  // namespace

std::string render_numeric_cell(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    std::string s(buf, ptr);
    // Keep kind inference unambiguous: a numeric cell always carries '.' or 'e'.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string render_discrete_cell(double code) {
    char buf[32];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), static_cast<std::uint64_t>(code));
    return std::string(buf, ptr);
}

Dataset read_csv(const std::filesystem::path& path) { return read_csv_impl(path, nullptr); }

Dataset read_csv(const std::filesystem::path& path, const std::vector<Column>& schema) {
    return read_csv_impl(path, &schema);
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ostringstream out;
    for (std::size_t c = 0; c < d.cols(); ++c) {
        const std::string& name = d.schema()[c].name;
        if (name.find_first_of(",\n\r") != std::string::npos) {
            throw Error("column name '" + name + "' contains a csv delimiter");
        }
        if (c > 0) out << ',';
        out << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t c = 0; c < d.cols(); ++c) {
            if (c > 0) out << ',';
            out << (d.schema()[c].kind == ColumnKind::discrete
                        ? render_discrete_cell(d.at(i, c))
                        : render_numeric_cell(d.at(i, c)));
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

}  // namespace sbpm
