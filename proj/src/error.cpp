#include "topogroup/error.hpp"

namespace topogroup {

std::string_view errc_name(Errc code)
{
    switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::RaggedDimensions: return "RaggedDimensions";
    case Errc::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::VertexSimplex: return "VertexSimplex";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::InconsistentFiltration: return "InconsistentFiltration";
    case Errc::InfiniteLoss: return "InfiniteLoss";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::StaleWeights: return "StaleWeights";
    case Errc::DegeneratePair: return "DegeneratePair";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::NonFiniteGradient: return "NonFiniteGradient";
    case Errc::InvalidGeometry: return "InvalidGeometry";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
{
}

} // namespace topogroup
