#include "wps/space.hpp"

#include <algorithm>

namespace wps {

int Space::atom_index(const std::string& label) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i] == label) return static_cast<int>(i);
    return -1;
}

int Space::component_of(const Rat& x) const {
    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].contains(x)) return static_cast<int>(i);
    return -1;
}

IntervalSet Space::as_set() const {
    return IntervalSet::of(components);
}

void Space::validate() const {
    if (finite()) {
        if (points.empty()) throw argument_error("finite space needs at least one point");
        auto sorted = points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw argument_error("duplicate atom labels");
        return;
    }
    if (components.empty()) throw argument_error("interval space needs at least one component");
    for (size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        if (c.lo > c.hi || !c.lo_closed || !c.hi_closed)
            throw argument_error("components must be closed intervals [a,b], a <= b");
        if (i > 0 && !(components[i - 1].hi < c.lo))
            throw argument_error("components must be disjoint and sorted");
    }
}

ClopenSubset ClopenSubset::all(const Space& s) {
    ClopenSubset r;
    for (size_t i = 0; i < s.size(); ++i) r.indices.push_back(static_cast<int>(i));
    return r;
}

bool ClopenSubset::contains(int idx) const {
    return std::binary_search(indices.begin(), indices.end(), idx);
}

ClopenSubset ClopenSubset::intersect(const ClopenSubset& o) const {
    ClopenSubset r;
    std::set_intersection(indices.begin(), indices.end(), o.indices.begin(), o.indices.end(),
                          std::back_inserter(r.indices));
    return r;
}

void ClopenSubset::normalize() {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
}

IntervalSet ClopenSubset::as_set(const Space& s) const {
    std::vector<IvPiece> ps;
    for (int i : indices) ps.push_back(s.components.at(static_cast<size_t>(i)));
    return IntervalSet::of(std::move(ps));
}

std::string point_str(const Space& s, const Point& p) {
    if (s.finite()) return s.points.at(static_cast<size_t>(p.atom));
    return rat_str(p.coord);
}

}  // namespace wps
