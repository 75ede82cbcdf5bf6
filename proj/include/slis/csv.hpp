// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_CSV_HPP
#define SLIS_CSV_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace slis
{
    using CsvCell = std::variant<double, std::int64_t, std::string>;

    // One experiment's output: '#'-prefixed metadata, a header row, data rows and '#'-prefixed footer notes.
    struct CsvTable
    {
        std::vector<std::pair<std::string, std::string>> metadata;
        std::vector<std::string> columns;
        std::vector<std::vector<CsvCell>> rows;
        std::vector<std::string> footer;

        void add_row(std::vector<CsvCell> row); // throws domain_error on a column-count mismatch
        std::size_t column_index(const std::string &name) const;
        double number(std::size_t row, const std::string &column) const;
    };

    // Doubles use 17 significant digits ("%.17g"), so values round-trip exactly.
    std::string format_cell(const CsvCell &cell);
    std::string to_csv(const CsvTable &table);
    void write_csv(const CsvTable &table, const std::string &path);
}

#endif
