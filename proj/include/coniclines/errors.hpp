#pragma once

#include <stdexcept>
#include <string>

namespace coniclines {

// Machine-readable failure codes. The CLI maps these onto exit statuses and
// stderr reason strings, so the set is part of the external contract.
enum class ErrorCode {
    invalid_argument,
    equal_points,
    equal_lines,
    not_on_conic,
    at_node,
    rank_one,
    irrational_split,
    underdetermined,
    inconsistent,
    degenerate_rank_one,
    empty_config,
    not_in_domain,
    not_in_v,
    inconsistent_total,
    ambiguous_completion,
    genericity_exhausted,
    not_a_tree,
    too_few_legs,
    invalid_part,
    has_central_vertex,
    no_principal_part,
    missing_coords,
    degree_mismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace coniclines
