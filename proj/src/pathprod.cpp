#include "wps/pathprod.hpp"

#include <algorithm>
#include <functional>

namespace wps {

void FiniteEdgeGraph::build_adjacency() {
    out.assign(static_cast<size_t>(n), {});
    for (size_t e = 0; e < edges.size(); ++e)
        out[static_cast<size_t>(edges[e].second)].push_back(static_cast<int>(e));
}

namespace {

Rat max_product_from(const FiniteEdgeGraph& g, int n, int src) {
    // DP over path length; cur[v] = max product of a length-k path from v
    std::vector<Rat> cur(static_cast<size_t>(g.n));
    std::vector<bool> curdef(static_cast<size_t>(g.n), false);
    curdef[static_cast<size_t>(src)] = true;
    cur[static_cast<size_t>(src)] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<Rat> nxt(static_cast<size_t>(g.n));
        std::vector<bool> nxtdef(static_cast<size_t>(g.n), false);
        for (int v = 0; v < g.n; ++v) {
            if (!curdef[static_cast<size_t>(v)]) continue;
            for (int e : g.out[static_cast<size_t>(v)]) {
                int r = g.edges[static_cast<size_t>(e)].first;
                Rat cand = cur[static_cast<size_t>(v)] * g.factor[static_cast<size_t>(e)];
                if (!nxtdef[static_cast<size_t>(r)] || cand > nxt[static_cast<size_t>(r)]) {
                    nxt[static_cast<size_t>(r)] = cand;
                    nxtdef[static_cast<size_t>(r)] = true;
                }
            }
        }
        cur = std::move(nxt);
        curdef = std::move(nxtdef);
    }
    Rat best = 0;
    bool any = false;
    for (int v = 0; v < g.n; ++v)
        if (curdef[static_cast<size_t>(v)]) {
            if (!any || cur[static_cast<size_t>(v)] > best) best = cur[static_cast<size_t>(v)];
            any = true;
        }
    return any ? best : Rat(0);  // 0 marks "no path of this length"
}

}  // namespace

std::vector<Rat> max_path_product_serial(const FiniteEdgeGraph& g, int n) {
    std::vector<Rat> out(static_cast<size_t>(g.n));
    for (int v = 0; v < g.n; ++v) out[static_cast<size_t>(v)] = max_product_from(g, n, v);
    return out;
}

std::vector<Rat> max_path_product(const FiniteEdgeGraph& g, int n) {
    std::vector<Rat> out(static_cast<size_t>(g.n));
#pragma omp parallel for schedule(dynamic)
    for (int v = 0; v < g.n; ++v) out[static_cast<size_t>(v)] = max_product_from(g, n, v);
    return out;
}

std::vector<std::vector<int>> simple_cycles(const FiniteEdgeGraph& g) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> stack;
    std::vector<bool> onpath(static_cast<size_t>(g.n), false);
    // cycles rooted at their smallest vertex
    std::function<void(int, int)> dfs = [&](int root, int v) {
        onpath[static_cast<size_t>(v)] = true;
        for (int e : g.out[static_cast<size_t>(v)]) {
            int r = g.edges[static_cast<size_t>(e)].first;
            if (r == root) {
                stack.push_back(e);
                cycles.push_back(stack);
                stack.pop_back();
            } else if (r > root && !onpath[static_cast<size_t>(r)]) {
                stack.push_back(e);
                dfs(root, r);
                stack.pop_back();
            }
        }
        onpath[static_cast<size_t>(v)] = false;
    };
    for (int v = 0; v < g.n; ++v) dfs(v, v);
    return cycles;
}

BoundednessResult analyze_boundedness(const FiniteEdgeGraph& g, bool one_sided) {
    BoundednessResult res;
    for (auto& cyc : simple_cycles(g)) {
        Rat p = 1;
        for (int e : cyc) p *= g.factor[static_cast<size_t>(e)];
        bool bad = one_sided ? (p > 1) : (p != 1);
        if (bad) {
            res.bounded = false;
            res.pumping = PumpingCycle{cyc, p};
            return res;
        }
    }
    res.bounded = true;
    // extrema over length >= 1 paths, attained on vertex-simple paths
    // (cycles multiply by <= 1 / exactly 1, so they never improve)
    bool any = false;
    std::vector<int> stack2;
    std::vector<bool> visited(static_cast<size_t>(g.n), false);
    std::function<void(int, const Rat&)> dfs = [&](int v, const Rat& prod) {
        visited[static_cast<size_t>(v)] = true;
        for (int e : g.out[static_cast<size_t>(v)]) {
            int r = g.edges[static_cast<size_t>(e)].first;
            Rat p = prod * g.factor[static_cast<size_t>(e)];
            stack2.push_back(e);
            if (!any || p > res.sup) {
                res.sup = p;
                res.sup_path = stack2;
            }
            if (!any || p < res.inf) {
                res.inf = p;
                res.inf_path = stack2;
            }
            any = true;
            if (!visited[static_cast<size_t>(r)]) {
                dfs(r, p);
            }
            stack2.pop_back();
        }
        visited[static_cast<size_t>(v)] = false;
    };
    for (int v = 0; v < g.n; ++v) dfs(v, Rat(1));
    return res;
}

namespace {

std::optional<PathViolation> check_from(const FiniteEdgeGraph& g, int depth, int src,
                                        const Rat& lo, const Rat& hi) {
    std::optional<PathViolation> found;
    std::vector<int> stack;
    std::function<bool(int, const Rat&)> dfs = [&](int v, const Rat& prod) -> bool {
        if (static_cast<int>(stack.size()) >= depth) return false;
        for (int e : g.out[static_cast<size_t>(v)]) {
            Rat p = prod * g.factor[static_cast<size_t>(e)];
            stack.push_back(e);
            if (p < lo || p > hi) {
                found = PathViolation{stack, p};
                return true;
            }
            if (dfs(g.edges[static_cast<size_t>(e)].first, p)) return true;
            stack.pop_back();
        }
        return false;
    };
    dfs(src, Rat(1));
    return found;
}

}  // namespace

std::optional<PathViolation> check_products_in_range_serial(const FiniteEdgeGraph& g,
                                                            int depth, const Rat& lo,
                                                            const Rat& hi) {
    for (int v = 0; v < g.n; ++v)
        if (auto f = check_from(g, depth, v, lo, hi)) return f;
    return std::nullopt;
}

std::optional<PathViolation> check_products_in_range(const FiniteEdgeGraph& g, int depth,
                                                     const Rat& lo, const Rat& hi) {
    std::vector<std::optional<PathViolation>> per(static_cast<size_t>(g.n));
#pragma omp parallel for schedule(dynamic)
    for (int v = 0; v < g.n; ++v) per[static_cast<size_t>(v)] = check_from(g, depth, v, lo, hi);
    for (auto& f : per)
        if (f) return f;
    return std::nullopt;
}

}  // namespace wps
