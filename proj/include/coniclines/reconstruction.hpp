#pragma once

#include <optional>
#include <vector>

#include "coniclines/marked_conic.hpp"
#include "coniclines/stability.hpp"

namespace coniclines {

// What remains after peeling recovered markings layer by layer.
enum class ResidualCase { Complete, OneUnitMissing, TwoUnitsMissing };

const char* to_string(ResidualCase c);

struct PartialMarkings {
    std::vector<Marking> recovered;      // peel order: heaviest layer first
    ResidualCase residual = ResidualCase::Complete;
    // Completion case label 'a'..'e' when at most 4 markings were recovered
    // and units are missing; absent otherwise.
    std::optional<char> case_label;
    LineConfig working_config;           // final residual subconfiguration
};

struct MaximalMarkings {
    std::vector<ProjectivePoint> points; // canonical order
    Weight weight;
};

// Step 1: the maximal markings are the candidate points of maximum mu; their
// weight is recovered from the subconfiguration of lines avoiding all of
// them, or by multiset comparison of the two admissible profiles when that
// subconfiguration is empty. `m` is the total weight of the markings of r.
MaximalMarkings find_maximal_markings(const LineConfig& r, Weight m);

// Step 2: iterate step 1, stripping recovered layers. Locates a trailing
// weight-2 or weight->=3 marking from the residual line; reports one or two
// missing unit markings otherwise.
PartialMarkings peel_markings(const LineConfig& r, Weight m);

// Step 3: locate the missing unit markings (cases a-e, or via the fitted
// conic when >= 5 markings are known), fit the conic and verify psi == r.
MarkedConic complete_markings(const LineConfig& r, const PartialMarkings& partial, Weight m);

// Full inverse of psi on V. Rejects configurations of the wrong total
// multiplicity (InconsistentTotal), non-semistable ones and anything whose
// completion fails verification (NotInV).
MarkedConic reconstruct(const LineConfig& r, Weight m);

// Independent brute-force inverse: assigns weights to candidate points of
// mu >= m-1, fits conics through five points or through points plus
// enumerated tangent contacts, and keeps every marked conic mapping to r.
// Configurations supported by fewer than three candidate points are beyond
// the candidate rule and yield no results.
std::vector<MarkedConic> oracle_reconstruct(const LineConfig& r, Weight m);

} // namespace coniclines
