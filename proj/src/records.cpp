#include "tpsd/dynamics.hpp"

#include "tpsd/errors.hpp"
#include "tpsd/randomness.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace tpsd {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Table to_table(const ExperimentRecord& record) {
    Table t;
    t.header.push_back("t");
    for (const auto& [name, values] : record.series) {
        if (values.size() != record.times.size())
            throw ShapeError("record column '" + name + "' length differs from the time grid");
        t.header.push_back(name);
    }
    for (std::size_t k = 0; k < record.times.size(); ++k) {
        std::vector<std::string> row{format_number(record.times[k])};
        for (const auto& column : record.series) row.push_back(format_number(column.second[k]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string to_csv(const Table& table) {
    auto line = [](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        return out + '\n';
    };
    std::string out = line(table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw ShapeError("table row width differs from the header");
        out += line(row);
    }
    return out;
}

std::string sidecar_json(const Sidecar& meta, const Table& table) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.config) config[k] = v;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.seeds) seeds[k] = v;
    nlohmann::ordered_json aggregates = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.aggregates) aggregates[k] = v;

    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));

    j["schema"] = "tpsd-record/1";
    j["library_version"] = TPSD_VERSION;
    j["generator"] = SeededGenerator::algorithm;
    j["config"] = config;
    j["seeds"] = seeds;
    j["columns"] = table.header;
    j["rows"] = table.rows.size();
    j["aggregates"] = aggregates;
    j["created_utc"] = stamp;
    j["wall_clock_seconds"] = meta.wall_clock_seconds;
    return j.dump(2) + "\n";
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const Table& table,
                                  const Sidecar& meta) {
    std::filesystem::create_directories(dir);
    const auto csv = dir / (stem + ".csv");
    const auto json = dir / (stem + ".json");
    {
        std::ofstream out(csv, std::ios::binary);
        out << to_csv(table);
        if (!out) throw Error("failed to write " + csv.string());
    }
    {
        std::ofstream out(json, std::ios::binary);
        out << sidecar_json(meta, table);
        if (!out) throw Error("failed to write " + json.string());
    }
    return csv;
}

} // namespace tpsd
