#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "jcengine/cli.hpp"

namespace jcengine::cli {

namespace {

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                out.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    return out;
}

Cell parse_cell(const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return x;
    return s;
}

std::string header_text(const Column& c) { return c.name + " [" + c.unit + "]"; }

Column parse_header(const std::string& s) {
    const auto open = s.rfind(" [");
    if (open == std::string::npos || s.back() != ']') throw IoError("column header '" + s + "' lacks a [unit]");
    return {s.substr(0, open), s.substr(open + 2, s.size() - open - 3)};
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_csv(const Table& t, std::ostream& os) {
    os << "# command: " << t.command << '\n';
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << quote_csv(header_text(t.columns[i]));
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (const double* x = std::get_if<double>(&row[i])) os << format_number(*x);
            else os << quote_csv(std::get<std::string>(row[i]));
        }
        os << '\n';
    }
}

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!have_header && line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon == std::string::npos) throw IoError("malformed metadata line '" + line + "'");
            std::string key = line.substr(2, colon - 2);
            std::string value = line.substr(colon + 2);
            if (key == "command") t.command = std::move(value);
            else t.metadata.emplace_back(std::move(key), std::move(value));
            continue;
        }
        if (!have_header) {
            for (const auto& h : split_csv(line)) t.columns.push_back(parse_header(h));
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& s : split_csv(line)) row.push_back(parse_cell(s));
        if (row.size() != t.columns.size()) throw IoError("row width does not match the header");
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw IoError("CSV input has no header");
    return t;
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json j;
    j["command"] = t.command;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
    j["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : t.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const double* x = std::get_if<double>(&cell)) {
                // JSON has no NaN or infinity; keep them as the CSV spelling.
                if (std::isfinite(*x)) r.push_back(*x);
                else r.push_back(format_number(*x));
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(2) << '\n';
}

Table read_json(std::istream& is) {
    nlohmann::ordered_json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
    Table t;
    t.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("metadata").items()) t.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("columns")) t.columns.push_back({c.at("name"), c.at("unit")});
    for (const auto& r : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& cell : r) {
            if (cell.is_number()) row.emplace_back(cell.get<double>());
            else row.emplace_back(cell.get<std::string>());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void emit(const Table& table, const RunConfig& config, std::ostream& fallback) {
    auto write = [&](std::ostream& os) {
        if (config.format == OutputFormat::csv) write_csv(table, os);
        else write_json(table, os);
    };
    if (!config.out || config.out->empty() || *config.out == "-") {
        write(fallback);
        return;
    }
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) throw IoError("cannot open '" + *config.out + "' for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("write to '" + *config.out + "' failed");
}

}  // namespace jcengine::cli
