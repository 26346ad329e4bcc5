#pragma once

#include "topogroup/gradient.hpp"
#include "topogroup/losses.hpp"
#include "topogroup/persistence.hpp"
#include "topogroup/regularizer.hpp"
#include "topogroup/rips.hpp"

#include <optional>
#include <vector>

namespace topogroup {

// Everything needed to evaluate l = rho + lambda * tau at a configuration.
struct EvalConfig {
    LossSpec loss = LossSpec::rho0();
    KernelSpec kernel{};
    double lambda = 1.0;
    RadiusCap cap = RadiusCap::enclosing();
};

enum class DegeneratePolicy { Throw, Skip };

struct PairContribution {
    PersistencePair pair;
    bool included = false;
    double d_birth = 0.0;
    double d_death = 0.0;
    std::optional<Edge> birth_edge; // absent for vertex births
    std::optional<Edge> death_edge; // absent for essential classes
};

struct CompositeLossReport {
    double total = 0.0;
    double rho = 0.0;
    double tau = 0.0;
    double lambda = 0.0;
    std::vector<PairContribution> pairs; // every visible pair of the target diagram
    std::size_t skipped_edges = 0;       // degenerate critical edges dropped under Skip
};

// Pushes the loss derivatives of each included pair onto the two endpoints of
// the longest edge of its birth and death simplices. Throws DegenerateEdge
// for a critical edge shorter than degenerate_distance unless told to skip.
PointGradient topo_gradient(const PointCloud& cloud, const Diagrams& diagrams, const LossSpec& spec,
                            DegeneratePolicy policy = DegeneratePolicy::Throw, std::size_t* skipped = nullptr);

struct Evaluation {
    CompositeLossReport report;
    PointGradient gradient;
};

// Recomputes the filtration and persistence from the current coordinates and
// returns the regularized loss and its gradient.
Evaluation total_loss_and_grad(const PointCloud& cloud, const EvalConfig& config, const RegularizerWeights& weights,
                               DegeneratePolicy policy = DegeneratePolicy::Throw);

// Loss value only, plus the critical structure it depended on.
struct LossProbe {
    double total = 0.0;
    std::vector<std::vector<std::uint32_t>> signature;
};
LossProbe probe_loss(const PointCloud& cloud, const EvalConfig& config, const RegularizerWeights& weights);

struct CoordinateCheck {
    std::size_t point = 0;
    std::size_t axis = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    double rel_error = 0.0;
    bool unstable = false;
};

struct FiniteDifferenceReport {
    double max_rel_error = 0.0; // over stable coordinates only
    std::vector<CoordinateCheck> coordinates;

    std::size_t unstable_count() const;
};

// |a - f| / max(|a|, |f|, 1): relative for large components, absolute near 0.
double gradient_rel_error(double analytic, double numeric);

// Central differences of the full pipeline. A coordinate is unstable when the
// included pairs or their critical edges differ between the base point and
// either perturbation; those are excluded from max_rel_error.
FiniteDifferenceReport finite_difference_check(const PointCloud& cloud, const EvalConfig& config, double h);

// Central differences of tau alone.
FiniteDifferenceReport tau_finite_difference_check(const PointCloud& cloud, const KernelSpec& kernel, double h);

} // namespace topogroup
