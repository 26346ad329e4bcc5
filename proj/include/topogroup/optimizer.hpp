#pragma once

#include "topogroup/grad_engine.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace topogroup {

struct OptimConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::size_t steps = 500;
    std::size_t snapshot_interval = 0; // 0: no coordinate snapshots
    EvalConfig eval{};
    std::uint64_t seed = 0;

    void validate() const;
};

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::size_t t = 0;

    explicit AdamState(std::size_t coordinates = 0) : first_moment(coordinates, 0.0), second_moment(coordinates, 0.0) {}
};

// One bias-corrected Adam update of the current coordinates. Throws
// NonFiniteGradient before touching anything if the gradient has a NaN/inf.
void adam_step(AdamState& state, const PointGradient& gradient, const OptimConfig& config, PointCloud& cloud);

struct TrajectoryRecord {
    std::size_t step = 0;
    double loss = 0.0;
    double rho = 0.0;
    double tau = 0.0;
    double lambda = 0.0;
    std::optional<std::vector<std::vector<double>>> points;
};

enum class RunStatus { Completed, Degenerate, NonFiniteGradient };

std::string_view run_status_name(RunStatus status);

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    RunStatus status = RunStatus::Completed;
    std::string message;
    std::size_t skipped_edges = 0;
};

struct OptimResult {
    PointCloud cloud;
    Trajectory trajectory;
};

using RecordSink = std::function<void(const TrajectoryRecord&)>;

// Evaluates the regularized loss at step 0 and after each Adam step, so a
// completed run has steps + 1 records. A degenerate critical edge drops only
// that edge's contribution; a collapsed regularizer pair or a non-finite
// gradient ends the run early with the records gathered so far.
OptimResult run_optimization(const PointCloud& cloud, const OptimConfig& config, const RecordSink& sink = {});

} // namespace topogroup
