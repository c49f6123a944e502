#include "wps/system.hpp"

namespace wps {

std::optional<int> WPS::fmap(int branch, int atom) const {
    const auto& b = fb.at(static_cast<size_t>(branch));
    for (size_t k = 0; k < b.domain.indices.size(); ++k)
        if (b.domain.indices[k] == atom) return b.image[k];
    return std::nullopt;
}

std::optional<Rat> WPS::fweight(int branch, int atom) const {
    const auto& b = fb.at(static_cast<size_t>(branch));
    for (size_t k = 0; k < b.domain.indices.size(); ++k)
        if (b.domain.indices[k] == atom) return b.weight[k];
    return std::nullopt;
}

void WPS::validate() const {
    space.validate();
    if (finite()) {
        if (!ib.empty()) throw argument_error("finite space with PL branches");
        for (auto& b : fb) {
            if (b.image.size() != b.domain.indices.size() ||
                b.weight.size() != b.domain.indices.size())
                throw argument_error("branch table sizes mismatch");
            for (size_t k = 0; k < b.domain.indices.size(); ++k) {
                int a = b.domain.indices[k];
                if (a < 0 || a >= static_cast<int>(space.points.size()))
                    throw argument_error("branch domain atom out of range");
                if (b.image[k] < 0 || b.image[k] >= static_cast<int>(space.points.size()))
                    throw argument_error("branch image atom out of range");
                if (!(b.weight[k] > 0)) throw argument_error("weights must be strictly positive");
            }
        }
        return;
    }
    if (!fb.empty()) throw argument_error("interval space with table branches");
    for (auto& b : ib) {
        PLFunc m = b.map, w = b.weight;
        m.validate(space);
        w.validate(space);
        if (!(m.domain == b.domain) || !(w.domain == b.domain))
            throw argument_error("branch map/weight domain mismatch");
        if (!(w.min_value() > 0)) throw argument_error("weights must be strictly positive");
        // image must land in the space
        IntervalSet img = pl_image(b.map, b.domain.as_set(space));
        if (!img.subtract(space.as_set()).is_empty())
            throw argument_error("branch image escapes the space");
    }
}

WPS wps_from_matrix(const std::vector<std::vector<Rat>>& A,
                    const std::vector<std::string>& labels) {
    size_t n = A.size();
    WPS sys;
    sys.space.kind = Space::Kind::Finite;
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw argument_error("matrix must be square");
        sys.space.points.push_back(i < labels.size() ? labels[i] : std::to_string(i + 1));
    }
    for (size_t i = 0; i < n; ++i) {
        FiniteBranch b;
        for (size_t j = 0; j < n; ++j) {
            if (A[i][j] < 0) throw argument_error("matrix entries must be non-negative");
            if (A[i][j] > 0) {
                b.domain.indices.push_back(static_cast<int>(j));
                b.image.push_back(static_cast<int>(i));
                b.weight.push_back(A[i][j]);
            }
        }
        sys.fb.push_back(std::move(b));
    }
    sys.validate();
    return sys;
}

}  // namespace wps
