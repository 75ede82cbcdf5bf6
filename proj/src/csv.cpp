// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/csv.hpp"
#include "slis/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

namespace slis
{
    void CsvTable::add_row(std::vector<CsvCell> row)
    {
        if (row.size() != columns.size())
            throw domain_error(fmt::format("row has {} cells, table has {} columns", row.size(), columns.size()));
        rows.push_back(std::move(row));
    }

    std::size_t CsvTable::column_index(const std::string &name) const
    {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw domain_error("no column named " + name);
        return static_cast<std::size_t>(it - columns.begin());
    }

    double CsvTable::number(std::size_t row, const std::string &column) const
    {
        const auto &cell = rows.at(row).at(column_index(column));
        if (const auto *d = std::get_if<double>(&cell))
            return *d;
        if (const auto *i = std::get_if<std::int64_t>(&cell))
            return static_cast<double>(*i);
        throw domain_error("column " + column + " is not numeric");
    }

    std::string format_cell(const CsvCell &cell)
    {
        struct Visitor
        {
            std::string operator()(double v) const { return fmt::format("{:.17g}", v); }
            std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
            std::string operator()(const std::string &v) const { return v; }
        };
        return std::visit(Visitor{}, cell);
    }

    std::string to_csv(const CsvTable &table)
    {
        std::string out;
        for (const auto &[key, value] : table.metadata)
            out += fmt::format("# {}={}\n", key, value);
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out += (i ? "," : "") + table.columns[i];
        out += '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out += (i ? "," : "") + format_cell(row[i]);
            out += '\n';
        }
        for (const auto &line : table.footer)
            out += "# " + line + '\n';
        return out;
    }

    void write_csv(const CsvTable &table, const std::string &path)
    {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file)
            throw io_error("cannot open " + path + " for writing");
        file << to_csv(table);
        if (!file)
            throw io_error("failed writing " + path);
    }
}
