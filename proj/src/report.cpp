#include "branchstop/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace branchstop {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::number: return format_double(c.num);
        case Cell::Kind::text: return csv_escape(c.text);
        case Cell::Kind::empty: return "";
    }
    return "";
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<std::pair<std::string, std::string>>& spec,
                    const Table& table, const std::vector<Check>& checks) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json jspec = nlohmann::ordered_json::object();
    for (const auto& [k, v] : spec) jspec[k] = v;
    doc["spec"] = std::move(jspec);

    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            switch (row[i].kind) {
                case Cell::Kind::number: jrow[table.columns[i]] = row[i].num; break;
                case Cell::Kind::text: jrow[table.columns[i]] = row[i].text; break;
                case Cell::Kind::empty: jrow[table.columns[i]] = nullptr; break;
            }
        }
        jrows.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(jrows);

    nlohmann::ordered_json jchecks = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc = nlohmann::ordered_json::object();
        jc["name"] = c.name;
        jc["detail"] = c.detail;
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["tol"] = c.tol;
        jc["pass"] = c.pass;
        jchecks.push_back(std::move(jc));
    }
    doc["checks"] = std::move(jchecks);
    return doc.dump(2) + "\n";
}

}  // namespace branchstop
