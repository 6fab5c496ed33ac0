#pragma once

#include "sp4gen/finite_reductive.hpp"
#include "sp4gen/realization.hpp"
#include "sp4gen/strata.hpp"

#include <optional>
#include <variant>

namespace sp4gen {

// Positive level (a stratum's class data) or level zero (a parahoric type), optionally
// with an explicit beta for the matrix path.
struct GenericityInput {
    std::variant<Stratum, ParahoricType> data;
    std::optional<MatrixStratum> realization;
};

// {"case": "I".."IV", ...} or {"case": "level0", "kind": ..., "sigma_regular": ...}.
// A positive-level object may carry "beta": 4x4 array of rational strings (needs "p").
GenericityInput input_from_json(const json& j);

struct GenericityVerdict {
    bool generic = false;
    std::string case_id;
    json trace = json::array();
    json witness = json::object();
    std::optional<json> cross_check;
    json to_json() const;
};

GenericityVerdict decide(const GenericityInput& in);
// Class arithmetic against the isotropy of v -> h(v, beta v) and the flag witness.
// Disagreement throws InvariantViolation carrying the full report.
GenericityVerdict decide_with_cross_check(const MatrixStratum& ms, int uder_samples, Rng& rng);

json vec_to_json(const Vec& v);
json flag_to_json(const IsotropicFlag& f);
json cross_check_to_json(const CrossCheckReport& r);

}  // namespace sp4gen
