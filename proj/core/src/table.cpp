#include "spinstar/table.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spinstar {

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

void Table::append_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw ValidationError("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

std::string format_value(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

std::string format_table(const Table& table) {
    std::string out;
    for (const auto& comment : table.comments) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += '\t';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += '\t';
            out += format_value(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

Table parse_table(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::size_t skip = 1;
            if (line.size() > 1 && line[1] == ' ') skip = 2;
            table.comments.push_back(line.substr(skip));
            continue;
        }
        if (!have_header) {
            table.columns = split_tabs(line);
            have_header = true;
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != table.columns.size()) {
            throw ValidationError("table line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(table.columns.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            char* end = nullptr;
            row[i] = std::strtod(fields[i].c_str(), &end);
            if (end == fields[i].c_str() || *end != '\0') {
                throw ValidationError("table line " + std::to_string(line_no) +
                                      ", field " + std::to_string(i + 1) +
                                      ": not a number: '" + fields[i] + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw ValidationError("table has no header row");
    }
    return table;
}

void write_table_file(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path.string());
    }
    out << format_table(table);
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

Table read_table_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table(buffer.str());
}

} // namespace spinstar
