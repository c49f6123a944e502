// Benchmark comparing the OpenMP kernels against their serial references:
// max-product path DP, exhaustive product range checks, and per-fiber
// Fock operator norms.

#include "wps/fock.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace wps;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FiniteEdgeGraph random_graph(std::mt19937& rng, int n, int outdeg) {
    std::uniform_int_distribution<int> atom(0, n - 1), num(1, 9), den(1, 9);
    FiniteEdgeGraph g;
    g.n = n;
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < outdeg; ++k) {
            g.edges.push_back({atom(rng), v});
            // factors clustered around 1 so products stay moderate
            g.factor.push_back(Rat(num(rng), den(rng)));
        }
    g.build_adjacency();
    return g;
}

WPS random_fock_system(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> atom(0, n - 1), num(1, 4), den(1, 4);
    WPS sys;
    sys.space.kind = Space::Kind::Finite;
    for (int i = 0; i < n; ++i) sys.space.points.push_back("v" + std::to_string(i));
    sys.fb.resize(2);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < 2; ++i) {
            sys.fb[static_cast<size_t>(i)].domain.indices.push_back(a);
            sys.fb[static_cast<size_t>(i)].image.push_back(atom(rng));
            sys.fb[static_cast<size_t>(i)].weight.push_back(Rat(num(rng), den(rng)));
        }
    sys.validate();
    return sys;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   results %s\n",
                name, serial, parallel, serial / parallel, same ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial path\n");
#endif
    std::mt19937 rng(7);

    {
        FiniteEdgeGraph g = random_graph(rng, 400, 3);
        int depth = 24;
        auto t0 = std::chrono::steady_clock::now();
        auto a = max_path_product_serial(g, depth);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        auto b = max_path_product(g, depth);
        double tp = seconds(t0);
        report("max-path-product DP", ts, tp, a == b);
    }
    {
        FiniteEdgeGraph g = random_graph(rng, 64, 2);
        int depth = 15;
        Rat lo(1, 1000000000000LL), hi(1000000000000LL);
        auto t0 = std::chrono::steady_clock::now();
        auto a = check_products_in_range_serial(g, depth, lo, hi);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        auto b = check_products_in_range(g, depth, lo, hi);
        double tp = seconds(t0);
        report("path product range check", ts, tp, a.has_value() == b.has_value());
    }
    {
        WPS sys = random_fock_system(rng, 16);
        FockSpace fs = FockSpace::build(sys, 7);
        std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
        FourierElement T;
        BaseFunc f;
        for (size_t i = 0; i < sys.space.points.size(); ++i)
            f.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
        T.coeffs[0] = f;
        for (int n = 1; n <= 3; ++n) {
            std::vector<RatComplex> c;
            for (int i = 0; i < fs.path_count(n); ++i)
                c.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
            T.coeffs[n] = c;
        }
        auto t0 = std::chrono::steady_clock::now();
        double a = op_norm_serial(fs, T);
        double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        double b = op_norm(fs, T);
        double tp = seconds(t0);
        report("per-fiber Fock norms", ts, tp, a == b);
    }
    return 0;
}
