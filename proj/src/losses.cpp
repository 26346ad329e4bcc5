#include "topogroup/losses.hpp"

#include "topogroup/error.hpp"

#include <string>

namespace topogroup {

std::optional<LossSpec> loss_preset(std::string_view name)
{
    if (name == "rho0") {
        return LossSpec::rho0();
    }
    if (name == "rho1") {
        return LossSpec::rho1();
    }
    return std::nullopt;
}

namespace {

void validate(const LossSpec& spec, const PersistenceDiagram& diagram)
{
    if (!(spec.persistence_floor >= 0.0)) {
        throw Error(Errc::InvalidArgument, "persistence floor must be >= 0");
    }
    if (diagram.dim != spec.target_dim) {
        throw Error(Errc::DimensionMismatch, "loss targets H" + std::to_string(spec.target_dim) +
                                                 " but diagram is H" + std::to_string(diagram.dim));
    }
}

} // namespace

bool loss_includes(const LossSpec& spec, const PersistencePair& pair)
{
    if (pair.essential()) {
        if (spec.exclude_essential) {
            return false;
        }
        throw Error(Errc::InfiniteLoss, "essential H" + std::to_string(pair.dim) +
                                            " class born at " + std::to_string(pair.birth) +
                                            " would contribute an infinite term");
    }
    return pair.death - pair.birth > spec.persistence_floor;
}

double eval_loss(const LossSpec& spec, const PersistenceDiagram& diagram)
{
    validate(spec, diagram);
    double total = 0.0;
    for (const auto& pair : diagram.pairs) {
        if (loss_includes(spec, pair)) {
            const double pers = pair.death - pair.birth;
            total += pers * pers;
        }
    }
    return total;
}

std::vector<PairDerivative> loss_pair_derivatives(const LossSpec& spec, const PersistenceDiagram& diagram)
{
    validate(spec, diagram);
    std::vector<PairDerivative> out;
    for (std::size_t k = 0; k < diagram.pairs.size(); ++k) {
        const auto& pair = diagram.pairs[k];
        if (loss_includes(spec, pair)) {
            const double pers = pair.death - pair.birth;
            out.push_back({k, -2.0 * pers, 2.0 * pers});
        }
    }
    return out;
}

} // namespace topogroup
