#pragma once

#include "wps/plfunc.hpp"

#include <optional>
#include <vector>

namespace wps {

// One branch of a finite-space system: a partial map on atoms with a
// strictly positive weight, both given as tables parallel to the domain.
struct FiniteBranch {
    ClopenSubset domain;       // atom indices
    std::vector<int> image;    // parallel to domain.indices
    std::vector<Rat> weight;   // parallel, > 0
};

struct IntervalBranch {
    ClopenSubset domain;  // component indices
    PLFunc map;           // defined exactly on domain
    PLFunc weight;        // same domain, strictly positive
};

// A weighted partial system: d branches (sigma_i, w_i) on clopen domains.
struct WPS {
    Space space;
    std::vector<FiniteBranch> fb;
    std::vector<IntervalBranch> ib;

    bool finite() const { return space.finite(); }
    int arity() const {
        return static_cast<int>(finite() ? fb.size() : ib.size());
    }

    // Finite helpers; atom must lie in the branch domain (else nullopt).
    std::optional<int> fmap(int branch, int atom) const;
    std::optional<Rat> fweight(int branch, int atom) const;

    void validate() const;
};

// Non-negative matrix encoding: branch i has domain {j : A[i][j] > 0},
// sends j to i with weight A[i][j].
WPS wps_from_matrix(const std::vector<std::vector<Rat>>& A,
                    const std::vector<std::string>& labels = {});

}  // namespace wps
