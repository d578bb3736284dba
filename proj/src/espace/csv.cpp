#include "efluid/espace/csv.hpp"

#include "efluid/errors.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace efluid::espace {

std::string format_number(double x)
{
    return fmt::format("{:.17g}", x);
}

std::string format_optional(const std::optional<double>& x)
{
    return x ? format_number(*x) : std::string{};
}

double parse_number(std::string_view text, std::string_view context)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(fmt::format("{}: '{}' is not a number", context, text));
    }
    return value;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == name) return c;
    }
    throw ValidationError(fmt::format("csv: missing column '{}'", name));
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const
{
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(parse_number(row[c], name));
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
    return os;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError(fmt::format("cannot read '{}'", path.string()));
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw ValidationError(fmt::format("'{}': empty file", path.string()));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto row = split(line);
        if (row.size() != table.header.size()) {
            throw ValidationError(fmt::format("'{}' line {}: expected {} fields, got {}", path.string(), lineno,
                                              table.header.size(), row.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    fmt::memory_buffer buf;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) buf.push_back(',');
            buf.append(cells[c]);
        }
        buf.push_back('\n');
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    auto os = open_out(path);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_field_csv(const std::filesystem::path& path, const SpaceGrid& grid, const std::vector<NamedColumn>& columns)
{
    for (const auto& col : columns) {
        if (col.values.size() != grid.size()) {
            throw ValidationError(fmt::format("column '{}' has {} values, grid has {}", col.name, col.values.size(), grid.size()));
        }
    }
    fmt::memory_buffer buf;
    for (int d = 0; d < grid.dim(); ++d) fmt::format_to(std::back_inserter(buf), "{}x{}", d ? "," : "", d + 1);
    for (const auto& col : columns) fmt::format_to(std::back_inserter(buf), ",{}", col.name);
    buf.push_back('\n');
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const Index3 ijk = grid.unflat(n);
        for (int d = 0; d < grid.dim(); ++d) {
            if (d) buf.push_back(',');
            fmt::format_to(std::back_inserter(buf), "{:.17g}", grid.coord(d, ijk[d]));
        }
        for (const auto& col : columns) fmt::format_to(std::back_inserter(buf), ",{:.17g}", col.values[n]);
        buf.push_back('\n');
    }
    auto os = open_out(path);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f, const std::string& name)
{
    write_field_csv(path, f.grid(), {{name, f.values()}});
}

void write_field_csv(const std::filesystem::path& path, const VectorField& v, const std::string& name)
{
    std::vector<NamedColumn> cols;
    for (int d = 0; d < v.dim(); ++d) cols.push_back({fmt::format("{}_{}", name, d + 1), v.component(d)});
    write_field_csv(path, v.grid(), cols);
}

CsvTable read_field_csv(const std::filesystem::path& path, const SpaceGrid& grid)
{
    CsvTable table = read_csv(path);
    if (table.rows.size() != grid.size()) {
        throw ValidationError(fmt::format("'{}': {} rows, grid has {} points", path.string(), table.rows.size(), grid.size()));
    }
    for (int d = 0; d < grid.dim(); ++d) {
        const auto xs = table.numeric_column(fmt::format("x{}", d + 1));
        for (std::size_t n = 0; n < xs.size(); ++n) {
            const double expect = grid.coord(d, grid.unflat(n)[d]);
            if (std::abs(xs[n] - expect) > 1e-9 * grid.extent(d)) {
                throw ValidationError(fmt::format("'{}' row {}: coordinate x{} = {} does not match grid", path.string(), n + 1, d + 1, xs[n]));
            }
        }
    }
    return table;
}

} // namespace efluid::espace
