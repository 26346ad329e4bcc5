#pragma once

#include "topogroup/persistence.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace topogroup {

// Sum of squared persistence over the pairs of one diagram whose persistence
// is strictly above `persistence_floor`.
struct LossSpec {
    int target_dim = 0;
    double persistence_floor = 0.0;
    bool exclude_essential = true;

    static LossSpec rho0() { return {0, 0.10, true}; }
    static LossSpec rho1() { return {1, 0.25, false}; }
};

// "rho0" / "rho1"; nullopt for anything else.
std::optional<LossSpec> loss_preset(std::string_view name);

bool loss_includes(const LossSpec& spec, const PersistencePair& pair);

double eval_loss(const LossSpec& spec, const PersistenceDiagram& diagram);

struct PairDerivative {
    std::size_t pair_index = 0; // index into diagram.pairs
    double d_birth = 0.0;
    double d_death = 0.0;
};

// d/dp and d/dq of every included term; excluded pairs are omitted.
std::vector<PairDerivative> loss_pair_derivatives(const LossSpec& spec, const PersistenceDiagram& diagram);

} // namespace topogroup
