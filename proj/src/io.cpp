#include "topogroup/io.hpp"

#include "topogroup/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace topogroup::io {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

bool parse_double(const std::string& text, double& out)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Io, "cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
    }
    return out;
}

std::string format_17(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace

std::string format_number(double value)
{
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<std::vector<double>> parse_points_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        const auto fields = split_commas(content);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t k = 0; k < fields.size() && numeric; ++k) {
            numeric = parse_double(fields[k], row[k]);
        }
        if (!numeric) {
            if (rows.empty() && line_no == 1) {
                continue; // header
            }
            throw Error(Errc::Parse, "line " + std::to_string(line_no) + " is not a row of numbers");
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(Errc::RaggedDimensions, "line " + std::to_string(line_no) + " has " +
                                                    std::to_string(row.size()) + " columns, expected " +
                                                    std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(Errc::EmptyInput, "no points found");
    }
    return rows;
}

std::vector<std::vector<double>> read_points_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return parse_points_csv(in);
}

void write_points_csv(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows)
{
    auto out = open_out(path);
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << format_17(row[k]);
        }
        out << '\n';
    }
    if (!out) {
        throw Error(Errc::Io, "failed writing " + path.string());
    }
}

GroupLabels read_labels(const std::filesystem::path& path)
{
    auto in = open_in(path);
    GroupLabels labels;
    std::map<std::string, int> ids;
    std::string line;
    while (std::getline(in, line)) {
        const std::string name = trim(line);
        if (name.empty()) {
            continue;
        }
        auto [it, inserted] = ids.emplace(name, static_cast<int>(labels.names.size()));
        if (inserted) {
            labels.names.push_back(name);
        }
        labels.ids.push_back(it->second);
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const GroupLabels& labels)
{
    auto out = open_out(path);
    for (int id : labels.ids) {
        const auto idx = static_cast<std::size_t>(id);
        out << (idx < labels.names.size() ? labels.names[idx] : std::to_string(id)) << '\n';
    }
    if (!out) {
        throw Error(Errc::Io, "failed writing " + path.string());
    }
}

std::filesystem::path labels_path_for(const std::filesystem::path& points_path)
{
    auto out = points_path;
    out.replace_filename(points_path.stem().string() + ".labels.csv");
    return out;
}

std::string trajectory_line(const TrajectoryRecord& record)
{
    nlohmann::json j;
    j["step"] = record.step;
    j["loss"] = record.loss;
    j["rho"] = record.rho;
    j["tau"] = record.tau;
    j["lambda"] = record.lambda;
    if (record.points) {
        j["points"] = *record.points;
    }
    return j.dump();
}

bool record_consistent(const TrajectoryRecord& r)
{
    const double expected = r.rho + r.lambda * r.tau;
    const double scale = std::max({std::abs(r.loss), std::abs(expected), 1e-300});
    return std::abs(r.loss - expected) <= record_consistency_tolerance * scale;
}

std::vector<TrajectoryRecord> read_trajectory(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::vector<TrajectoryRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        TrajectoryRecord r;
        try {
            const auto j = nlohmann::json::parse(line);
            r.step = j.at("step").get<std::size_t>();
            r.loss = j.at("loss").get<double>();
            r.rho = j.at("rho").get<double>();
            r.tau = j.at("tau").get<double>();
            r.lambda = j.at("lambda").get<double>();
            if (j.contains("points")) {
                r.points = j.at("points").get<std::vector<std::vector<double>>>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::Parse, "trajectory line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!record_consistent(r)) {
            throw Error(Errc::Parse, "trajectory line " + std::to_string(line_no) + ": loss != rho + lambda * tau");
        }
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

std::string vertex_list(const Simplex& s)
{
    std::string out;
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
        out += (k ? " " : "") + std::to_string(s.vertices[k]);
    }
    return out;
}

} // namespace

void write_diagrams_csv(std::ostream& out, const Diagrams& diagrams)
{
    out << "dim,birth,death,birth_simplex,death_simplex\n";
    for (const auto& diagram : diagrams) {
        for (const auto& p : diagram.pairs) {
            out << p.dim << ',' << format_number(p.birth) << ',' << format_number(p.death) << ','
                << vertex_list(p.birth_simplex) << ',' << (p.death_simplex ? vertex_list(*p.death_simplex) : "")
                << '\n';
        }
    }
}

std::string format_diagram(const PersistenceDiagram& diagram, bool include_zero_persistence)
{
    std::string out = "dim " + std::to_string(diagram.dim) + ":";
    bool first = true;
    for (const auto& p : diagram.pairs) {
        if (!include_zero_persistence && p.zero_persistence()) {
            continue;
        }
        out += (first ? " (" : ", (") + format_number(p.birth) + ", " + format_number(p.death) + ")";
        first = false;
    }
    return out;
}

} // namespace topogroup::io
