#include "coniclines/errors.hpp"

namespace coniclines {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::equal_points: return "equal_points";
    case ErrorCode::equal_lines: return "equal_lines";
    case ErrorCode::not_on_conic: return "not_on_conic";
    case ErrorCode::at_node: return "at_node";
    case ErrorCode::rank_one: return "rank_one";
    case ErrorCode::irrational_split: return "irrational_split";
    case ErrorCode::underdetermined: return "underdetermined";
    case ErrorCode::inconsistent: return "inconsistent";
    case ErrorCode::degenerate_rank_one: return "degenerate_rank_one";
    case ErrorCode::empty_config: return "empty_config";
    case ErrorCode::not_in_domain: return "not_in_domain";
    case ErrorCode::not_in_v: return "not_in_v";
    case ErrorCode::inconsistent_total: return "inconsistent_total";
    case ErrorCode::ambiguous_completion: return "ambiguous";
    case ErrorCode::genericity_exhausted: return "genericity_exhausted";
    case ErrorCode::not_a_tree: return "not_a_tree";
    case ErrorCode::too_few_legs: return "too_few_legs";
    case ErrorCode::invalid_part: return "invalid_part";
    case ErrorCode::has_central_vertex: return "has_central_vertex";
    case ErrorCode::no_principal_part: return "no_principal_part";
    case ErrorCode::missing_coords: return "missing_coords";
    case ErrorCode::degree_mismatch: return "degree_mismatch";
    }
    return "unknown";
}

} // namespace coniclines
