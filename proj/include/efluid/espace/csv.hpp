#pragma once

#include "efluid/espace/field.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace efluid::espace {

/// 17 significant digits, '.' decimal point. Enough to round-trip any double.
std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);

/// Parses a full-field decimal number; throws ValidationError mentioning `context`.
double parse_number(std::string_view text, std::string_view context);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by name; throws ValidationError if absent.
    std::size_t column(std::string_view name) const;
    std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

struct NamedColumn {
    std::string name;
    std::span<const double> values;
};

/// Field snapshot: `x1[,x2[,x3]],<columns...>`, one row per node, axis 1 fastest.
void write_field_csv(const std::filesystem::path& path, const SpaceGrid& grid, const std::vector<NamedColumn>& columns);
void write_field_csv(const std::filesystem::path& path, const ScalarField& f, const std::string& name);
void write_field_csv(const std::filesystem::path& path, const VectorField& v, const std::string& name);

/// Reads a snapshot written for `grid`, checking the coordinate columns.
CsvTable read_field_csv(const std::filesystem::path& path, const SpaceGrid& grid);

} // namespace efluid::espace
