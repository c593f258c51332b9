#include "ofq/error.hpp"

namespace ofq {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_square: return "NotSquare";
        case errc::not_invertible: return "NotInvertible";
        case errc::relation_violated: return "RelationViolated";
        case errc::decomposition_failed: return "DecompositionFailed";
        case errc::kac_degenerate: return "KacDegenerate";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::not_admissible: return "NotAdmissible";
        case errc::too_large: return "TooLarge";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::not_homogeneous: return "NotHomogeneous";
        case errc::index_out_of_family: return "IndexOutOfFamily";
        case errc::result_not_admissible: return "ResultNotAdmissible";
        case errc::not_in_s: return "NotInS";
        case errc::mixed_degrees: return "MixedDegrees";
        case errc::convergence_failure: return "ConvergenceFailure";
        case errc::negative_coefficient: return "NegativeCoefficient";
        case errc::bad_exponent: return "BadExponent";
        case errc::kac_context: return "KacContext";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace ofq
