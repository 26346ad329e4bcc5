#include "topogroup/optimizer.hpp"

#include "topogroup/error.hpp"

#include <cmath>

namespace topogroup {

void OptimConfig::validate() const
{
    if (!(learning_rate > 0.0)) {
        throw Error(Errc::InvalidArgument, "learning rate must be positive");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw Error(Errc::InvalidArgument, "Adam betas must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw Error(Errc::InvalidArgument, "Adam epsilon must be positive");
    }
    if (!(eval.lambda >= 0.0)) {
        throw Error(Errc::InvalidArgument, "lambda must be >= 0");
    }
    if (!(eval.kernel.scale > 0.0)) {
        throw Error(Errc::InvalidArgument, "kernel scale must be positive");
    }
}

std::string_view run_status_name(RunStatus status)
{
    switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Degenerate: return "degenerate";
    case RunStatus::NonFiniteGradient: return "non-finite-gradient";
    }
    return "unknown";
}

void adam_step(AdamState& state, const PointGradient& gradient, const OptimConfig& config, PointCloud& cloud)
{
    const std::size_t count = cloud.size() * cloud.dim();
    if (gradient.values.size() != count || state.first_moment.size() != count || state.second_moment.size() != count) {
        throw Error(Errc::InvalidArgument, "gradient and optimizer state must match the cloud shape");
    }
    for (double g : gradient.values) {
        if (!std::isfinite(g)) {
            throw Error(Errc::NonFiniteGradient, "gradient contains a non-finite entry");
        }
    }
    state.t += 1;
    const double t = static_cast<double>(state.t);
    const double correction1 = 1.0 - std::pow(config.beta1, t);
    const double correction2 = 1.0 - std::pow(config.beta2, t);

    std::vector<double> coords(cloud.current().begin(), cloud.current().end());
    for (std::size_t k = 0; k < count; ++k) {
        const double g = gradient.values[k];
        state.first_moment[k] = config.beta1 * state.first_moment[k] + (1.0 - config.beta1) * g;
        state.second_moment[k] = config.beta2 * state.second_moment[k] + (1.0 - config.beta2) * g * g;
        const double m_hat = state.first_moment[k] / correction1;
        const double v_hat = state.second_moment[k] / correction2;
        coords[k] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
    cloud.assign_current(coords);
}

OptimResult run_optimization(const PointCloud& start, const OptimConfig& config, const RecordSink& sink)
{
    config.validate();
    OptimResult result{start, {}};
    PointCloud& cloud = result.cloud;
    Trajectory& traj = result.trajectory;
    const auto weights = build_weights(cloud, config.eval.kernel);
    AdamState state(cloud.size() * cloud.dim());

    auto evaluate = [&]() -> std::optional<Evaluation> {
        try {
            try {
                return total_loss_and_grad(cloud, config.eval, weights);
            } catch (const Error& e) {
                if (e.code() != Errc::DegenerateEdge) {
                    throw;
                }
                return total_loss_and_grad(cloud, config.eval, weights, DegeneratePolicy::Skip);
            }
        } catch (const Error& e) {
            if (e.code() != Errc::DegeneratePair) {
                throw;
            }
            traj.status = RunStatus::Degenerate;
            traj.message = e.what();
            return std::nullopt;
        }
    };

    auto record = [&](std::size_t step, const CompositeLossReport& report) {
        TrajectoryRecord rec{step, report.total, report.rho, report.tau, report.lambda, std::nullopt};
        if (config.snapshot_interval > 0 && step % config.snapshot_interval == 0) {
            rec.points = cloud.current_rows();
        }
        traj.skipped_edges += report.skipped_edges;
        if (sink) {
            sink(rec);
        }
        traj.records.push_back(std::move(rec));
    };

    auto current = evaluate();
    if (!current) {
        return result;
    }
    record(0, current->report);
    for (std::size_t step = 1; step <= config.steps; ++step) {
        try {
            adam_step(state, current->gradient, config, cloud);
        } catch (const Error& e) {
            if (e.code() != Errc::NonFiniteGradient) {
                throw;
            }
            traj.status = RunStatus::NonFiniteGradient;
            traj.message = e.what();
            return result;
        }
        current = evaluate();
        if (!current) {
            return result;
        }
        record(step, current->report);
    }
    return result;
}

} // namespace topogroup
