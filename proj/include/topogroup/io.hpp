#pragma once

#include "topogroup/experiments.hpp"
#include "topogroup/optimizer.hpp"
#include "topogroup/persistence.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace topogroup::io {

// Shortest decimal text that parses back to the same double; "inf" for +inf.
std::string format_number(double value);

// One point per row, comma separated. A first row that does not parse as
// numbers is treated as a header. Throws Io, Parse, EmptyInput or
// RaggedDimensions.
std::vector<std::vector<double>> read_points_csv(const std::filesystem::path& path);
std::vector<std::vector<double>> parse_points_csv(std::istream& in);

// 17 significant digits so every value reads back bit-identically.
void write_points_csv(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows);

// Labels file: one group name per row. Ids follow first appearance.
GroupLabels read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const GroupLabels& labels);

// `<stem>.labels.csv` next to a points file.
std::filesystem::path labels_path_for(const std::filesystem::path& points_path);

// One JSON object per line: step, loss, rho, tau, lambda and, at snapshot
// steps, points as a nested array.
std::string trajectory_line(const TrajectoryRecord& record);

// Parses a trajectory file and re-checks loss == rho + lambda * tau on every
// record (relative 1e-12). Throws Parse on malformed or inconsistent records.
std::vector<TrajectoryRecord> read_trajectory(const std::filesystem::path& path);

inline constexpr double record_consistency_tolerance = 1e-12;
bool record_consistent(const TrajectoryRecord& record);

// dim,birth,death,birth_simplex,death_simplex with space-separated vertices.
void write_diagrams_csv(std::ostream& out, const Diagrams& diagrams);

// "dim 0: (0, 5), (0, inf)"
std::string format_diagram(const PersistenceDiagram& diagram, bool include_zero_persistence = false);

} // namespace topogroup::io
