#pragma once

#include <string>
#include <type_traits>
#include <vector>

namespace branchstop {

/// One output cell: a number (printed with 15 significant digits), a string,
/// or empty.
struct Cell {
    enum class Kind { number, text, empty } kind = Kind::empty;
    double num = 0.0;
    std::string text;

    Cell() = default;
    Cell(double v) : kind(Kind::number), num(v) {}
    template <typename T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    Cell(T v) : kind(Kind::number), num(static_cast<double>(v)) {}
    Cell(const char* s) : kind(Kind::text), text(s) {}
    Cell(std::string s) : kind(Kind::text), text(std::move(s)) {}
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// A named cross-check outcome carried alongside tabular results.
struct Check {
    std::string name;
    std::string detail;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// %.15g, locale-independent.
std::string format_double(double v);

/// RFC-style CSV: header line first, fields quoted when they contain a
/// comma, quote or newline.
std::string to_csv(const Table& table);

/// Single JSON object with `spec`, `rows` and `checks` keys.
std::string to_json(const std::vector<std::pair<std::string, std::string>>& spec,
                    const Table& table, const std::vector<Check>& checks);

}  // namespace branchstop
