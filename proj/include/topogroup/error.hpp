#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topogroup {

enum class Errc {
    EmptyInput,
    RaggedDimensions,
    NonFiniteCoordinate,
    IndexOutOfRange,
    VertexSimplex,
    DimensionTooLarge,
    InconsistentFiltration,
    InfiniteLoss,
    DimensionMismatch,
    NegativeInput,
    StaleWeights,
    DegeneratePair,
    DegenerateEdge,
    NonFiniteGradient,
    InvalidGeometry,
    InvalidArgument,
    Io,
    Parse,
};

std::string_view errc_name(Errc code);

// All library failures are reported through this type; `code()` identifies
// the contract that was violated.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace topogroup
