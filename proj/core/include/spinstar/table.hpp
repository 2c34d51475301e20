#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spinstar/errors.hpp"

namespace spinstar {

// Plain-text delimiter-separated table: '#'-prefixed comment block, one
// header row, then numeric rows. Values are emitted with 17 significant
// digits so parse(emit(x)) reproduces x exactly and emission is
// byte-deterministic.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return columns.size(); }
    int column_index(const std::string& name) const; // -1 when absent
    void append_row(std::vector<double> row);
};

std::string format_table(const Table& table);
Table parse_table(const std::string& text);

void write_table_file(const Table& table, const std::filesystem::path& path);
Table read_table_file(const std::filesystem::path& path);

// Fixed numeric format shared by all emitters ("%.16e").
std::string format_value(double value);

} // namespace spinstar
