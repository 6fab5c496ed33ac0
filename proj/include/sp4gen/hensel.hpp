#pragma once

#include "sp4gen/rational.hpp"

#include <vector>

namespace sp4gen {

struct HenselResult {
    enum class Status { found, exhausted, undecided };
    Status status = Status::undecided;
    // Primitive integer vector with val Q(v) > 2 * min val grad Q(v).
    std::vector<Z> vector;
    long value_val = 0;
    long gradient_val = 0;
    // Level at which the search tree died (exhausted) or the certificate was found.
    long level = 0;
};

// Depth-first search for a primitive isotropic vector of the integral form
// v -> v^T G v over Z_p. Nodes are vectors mod p^j with Q(v) = 0 mod p^j whose
// first unit coordinate is 1. An empty level proves anisotropy.
HenselResult hensel_search(const std::vector<std::vector<Z>>& gram, long p, long depth);

// Integral Gram from a rational one by clearing denominators with a square.
std::vector<std::vector<Z>> integral_gram(const Mat& gram);

}  // namespace sp4gen
