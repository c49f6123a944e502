#include "wps/fock.hpp"

#include <cmath>

namespace wps {

FockSpace FockSpace::build(const WPS& sys, int N) {
    if (!sys.finite()) throw argument_error("Fock construction requires a finite space");
    if (N < 0) throw argument_error("truncation level must be non-negative");
    FockSpace fs;
    fs.sys_ = sys;
    fs.es_ = graph(sys);
    fs.N_ = N;
    int natoms = static_cast<int>(sys.space.points.size());
    FiniteEdgeGraph fg;
    fg.n = natoms;
    fg.edges = fs.es_.fedges;
    fg.factor.assign(fs.es_.fedges.size(), Rat(1));
    fg.build_adjacency();

    fs.paths_.resize(static_cast<size_t>(N) + 1);
    fs.index_.resize(static_cast<size_t>(N) + 1);
    fs.weights_.resize(static_cast<size_t>(N) + 1);
    // degree 0: one empty path per atom, identified by the atom
    for (int a = 0; a < natoms; ++a) {
        fs.paths_[0].push_back({});
        fs.weights_[0].push_back(Rat(1));
    }
    for (int n = 1; n <= N; ++n) {
        for (size_t i = 0; i < fs.paths_[static_cast<size_t>(n) - 1].size(); ++i) {
            const auto& prefix = fs.paths_[static_cast<size_t>(n) - 1][i];
            int tail = (n == 1) ? static_cast<int>(i)
                                : fg.edges[static_cast<size_t>(prefix.back())].first;
            for (int e : fg.out[static_cast<size_t>(tail)]) {
                auto path = prefix;
                path.push_back(e);
                fs.index_[static_cast<size_t>(n)][path] =
                    static_cast<int>(fs.paths_[static_cast<size_t>(n)].size());
                Rat w = fs.weights_[static_cast<size_t>(n) - 1][i] *
                        edge_weight(sys, Edge::finite(fg.edges[static_cast<size_t>(e)].first,
                                                      fg.edges[static_cast<size_t>(e)].second));
                fs.paths_[static_cast<size_t>(n)].push_back(std::move(path));
                fs.weights_[static_cast<size_t>(n)].push_back(w);
            }
        }
    }
    // fibers in atom order, degree-major bases
    for (int a = 0; a < natoms; ++a) {
        Fiber f;
        f.source = a;
        for (int n = 0; n <= N; ++n)
            for (size_t i = 0; i < fs.paths_[static_cast<size_t>(n)].size(); ++i) {
                int src = n == 0 ? static_cast<int>(i)
                                 : fs.es_.fedges[static_cast<size_t>(
                                                     fs.paths_[static_cast<size_t>(n)][i][0])]
                                       .second;
                if (src != a) continue;
                f.local[{n, static_cast<int>(i)}] = static_cast<int>(f.basis.size());
                f.basis.push_back({n, static_cast<int>(i)});
            }
        fs.fibers_.push_back(std::move(f));
    }
    return fs;
}

int FockSpace::path_count(int degree) const {
    return static_cast<int>(paths_.at(static_cast<size_t>(degree)).size());
}

const std::vector<std::vector<int>>& FockSpace::degree_paths(int degree) const {
    return paths_.at(static_cast<size_t>(degree));
}

int FockSpace::path_index(int degree, const std::vector<int>& path) const {
    if (degree == 0) throw argument_error("degree-0 entries are indexed by atom");
    auto& idx = index_.at(static_cast<size_t>(degree));
    auto it = idx.find(path);
    return it == idx.end() ? -1 : it->second;
}

Rat FockSpace::path_weight_of(int degree, int index) const {
    return weights_.at(static_cast<size_t>(degree)).at(static_cast<size_t>(index));
}

int FockSpace::path_source(int degree, int index) const {
    if (degree == 0) return index;
    return es_.fedges[static_cast<size_t>(
                          paths_[static_cast<size_t>(degree)][static_cast<size_t>(index)][0])]
        .second;
}

int FockSpace::path_range(int degree, int index) const {
    if (degree == 0) return index;
    return es_.fedges[static_cast<size_t>(
                          paths_[static_cast<size_t>(degree)][static_cast<size_t>(index)]
                              .back())]
        .first;
}

bool FourierElement::is_zero() const {
    for (auto& [n, vals] : coeffs)
        for (auto& v : vals)
            if (!v.is_zero()) return false;
    return true;
}

FourierElement fe_constant(const FockSpace& fs, const BaseFunc& f) {
    FourierElement T;
    if (f.size() != fs.system().space.points.size())
        throw argument_error("constant coefficient must be defined on the whole space");
    T.coeffs[0] = f;
    return T;
}

FourierElement fe_shift(const FockSpace& fs, int degree,
                        const std::vector<RatComplex>& coeff) {
    if (degree < 1 || degree > fs.truncation())
        throw argument_error("shift degree outside the truncation");
    if (static_cast<int>(coeff.size()) != fs.path_count(degree))
        throw argument_error("coefficient size does not match the path space");
    FourierElement T;
    T.coeffs[degree] = coeff;
    return T;
}

FourierElement fe_unit_shift(const FockSpace& fs) {
    return fe_shift(fs, 1, std::vector<RatComplex>(
                               static_cast<size_t>(fs.path_count(1)), RatComplex{Rat(1)}));
}

namespace {

double sqrt_factor_of(const FockSpace& fs, const FourierElement& T, int degree, int index) {
    if (!T.sqrt_factor) return 1.0;
    if (degree == 0) return 1.0;
    double acc = 1.0;
    for (int e : fs.degree_paths(degree)[static_cast<size_t>(index)])
        acc *= to_double(T.sqrt_factor->at(static_cast<size_t>(e)));
    return std::sqrt(acc);
}

}  // namespace

FockMatrix to_matrices(const FockSpace& fs, const FourierElement& T) {
    FockMatrix out;
    for (auto& fiber : fs.fibers()) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(fiber.basis.size()),
                                                    static_cast<long>(fiber.basis.size()));
        for (auto& [n, vals] : T.coeffs) {
            if (n == 0) {
                for (size_t col = 0; col < fiber.basis.size(); ++col) {
                    auto [m0, i0] = fiber.basis[col];
                    int range = fs.path_range(m0, i0);
                    const RatComplex& v = vals[static_cast<size_t>(range)];
                    m(static_cast<long>(col), static_cast<long>(col)) +=
                        std::complex<double>(to_double(v.re), to_double(v.im));
                }
                continue;
            }
            for (size_t col = 0; col < fiber.basis.size(); ++col) {
                auto [m0, i0] = fiber.basis[col];
                if (m0 + n > fs.truncation()) continue;
                int junction = fs.path_range(m0, i0);
                // concatenate every degree-n path starting at the junction
                for (int j = 0; j < fs.path_count(n); ++j) {
                    if (fs.path_source(n, j) != junction) continue;
                    std::vector<int> comp;
                    if (m0 > 0) comp = fs.degree_paths(m0)[static_cast<size_t>(i0)];
                    const auto& mu = fs.degree_paths(n)[static_cast<size_t>(j)];
                    comp.insert(comp.end(), mu.begin(), mu.end());
                    int ridx = fs.path_index(m0 + n, comp);
                    auto it = fiber.local.find({m0 + n, ridx});
                    const RatComplex& v = vals[static_cast<size_t>(j)];
                    double scale = std::sqrt(to_double(fs.path_weight_of(n, j))) *
                                   sqrt_factor_of(fs, T, n, j);
                    m(it->second, static_cast<long>(col)) +=
                        std::complex<double>(to_double(v.re), to_double(v.im)) * scale;
                }
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

double matrix_op_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols());
    v /= v.norm();
    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXcd g = m.adjoint() * (m * v);  // A^H A v without forming the Gram
        double next = std::real(v.dot(g));           // = ||A v||^2 for unit v
        double nrm = g.norm();
        if (nrm == 0.0) return 0.0;
        v = g / nrm;
        if (it > 4 && std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

double op_norm_serial(const FockSpace& fs, const FourierElement& T) {
    FockMatrix mats = to_matrices(fs, T);
    double best = 0.0;
    for (auto& m : mats) best = std::max(best, matrix_op_norm(m));
    return best;
}

double op_norm(const FockSpace& fs, const FourierElement& T) {
    FockMatrix mats = to_matrices(fs, T);
    std::vector<double> per(mats.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(mats.size()); ++i)
        per[static_cast<size_t>(i)] = matrix_op_norm(mats[static_cast<size_t>(i)]);
    double best = 0.0;
    for (double v : per) best = std::max(best, v);
    return best;
}

std::vector<RatComplex> fourier_coeff(const FourierElement& T, int n) {
    auto it = T.coeffs.find(n);
    if (it == T.coeffs.end()) return {};
    return it->second;
}

FockMatrix fourier_coeff_matrix(const FockSpace& fs, const FockMatrix& M, int n) {
    int count = 2 * fs.truncation() + 1;
    FockMatrix out;
    for (size_t fi = 0; fi < fs.fibers().size(); ++fi) {
        const auto& fiber = fs.fibers()[fi];
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(M[fi].rows(), M[fi].cols());
        for (int j = 0; j < count; ++j) {
            double theta = 2.0 * M_PI * j / count;
            std::complex<double> om(std::cos(theta), std::sin(theta));
            Eigen::VectorXcd diag(static_cast<long>(fiber.basis.size()));
            for (size_t b = 0; b < fiber.basis.size(); ++b)
                diag[static_cast<long>(b)] = std::pow(om, fiber.basis[b].first);
            Eigen::MatrixXcd rot =
                diag.asDiagonal() * M[fi] * diag.conjugate().asDiagonal();
            acc += rot * std::pow(om, -n);
        }
        out.push_back(acc / static_cast<double>(count));
    }
    return out;
}

FourierElement gauge(const FourierElement& T, const RatComplex& lambda) {
    if (lambda.abs2() != Rat(1))
        throw argument_error("exact gauge rotation needs |lambda|^2 = 1");
    FourierElement out = T;
    for (auto& [n, vals] : out.coeffs) {
        RatComplex pow{Rat(1)};
        for (int k = 0; k < n; ++k) pow = pow * lambda;
        for (auto& v : vals) v = pow * v;
    }
    return out;
}

FockMatrix gauge_matrix(const FockSpace& fs, const FockMatrix& M,
                        std::complex<double> lambda) {
    FockMatrix out;
    for (size_t fi = 0; fi < fs.fibers().size(); ++fi) {
        const auto& fiber = fs.fibers()[fi];
        Eigen::VectorXcd diag(static_cast<long>(fiber.basis.size()));
        for (size_t b = 0; b < fiber.basis.size(); ++b)
            diag[static_cast<long>(b)] = std::pow(lambda, fiber.basis[b].first);
        out.push_back(diag.asDiagonal() * M[fi] * diag.conjugate().asDiagonal());
    }
    return out;
}

std::complex<double> fejer_kernel(int n, std::complex<double> lambda) {
    std::complex<double> acc = 0.0;
    for (int j = -n; j <= n; ++j)
        acc += (1.0 - std::abs(j) / (n + 1.0)) * std::pow(lambda, j);
    return acc;
}

FourierElement cesaro(const FourierElement& T, int N) {
    FourierElement out = T;
    for (auto& [n, vals] : out.coeffs) {
        Rat scale = Rat(1) - Rat(n, N + 1);
        for (auto& v : vals) v = scale * v;
    }
    return out;
}

int min_degree(const FourierElement& T) {
    for (auto& [n, vals] : T.coeffs)
        for (auto& v : vals)
            if (!v.is_zero()) return n;
    throw argument_error("minimal degree of the zero element");
}

FourierElement series_product(const FockSpace& fs, const FourierElement& T,
                              const FourierElement& U) {
    bool sf_match = (!T.sqrt_factor && !U.sqrt_factor) ||
                    (T.sqrt_factor && U.sqrt_factor && *T.sqrt_factor == *U.sqrt_factor);
    if (!sf_match) throw argument_error("series product needs matching sqrt factors");
    FourierElement out;
    out.sqrt_factor = T.sqrt_factor;
    for (auto& [k, xs] : T.coeffs)
        for (auto& [l, ys] : U.coeffs) {
            int n = k + l;
            if (n > fs.truncation()) continue;
            auto& acc = out.coeffs[n];
            if (acc.empty())
                acc.assign(static_cast<size_t>(n == 0
                                                   ? static_cast<int>(
                                                         fs.system().space.points.size())
                                                   : fs.path_count(n)),
                           RatComplex{});
            if (n == 0) {
                for (size_t a = 0; a < acc.size(); ++a) acc[a] += xs[a] * ys[a];
                continue;
            }
            for (int i = 0; i < fs.path_count(n); ++i) {
                const auto& path = fs.degree_paths(n)[static_cast<size_t>(i)];
                // U's factor acts on the source-side part, T's on the range side
                RatComplex uval, tval;
                if (l == 0) {
                    uval = ys[static_cast<size_t>(fs.path_source(n, i))];
                } else {
                    std::vector<int> src(path.begin(), path.begin() + l);
                    uval = ys[static_cast<size_t>(fs.path_index(l, src))];
                }
                if (k == 0) {
                    tval = xs[static_cast<size_t>(fs.path_range(n, i))];
                } else {
                    std::vector<int> rng(path.begin() + l, path.end());
                    tval = xs[static_cast<size_t>(fs.path_index(k, rng))];
                }
                acc[static_cast<size_t>(i)] += tval * uval;
            }
        }
    return out;
}

FourierElement ad_multiplier(const FockSpace& fs, const FourierElement& T,
                             const Multiplier& V) {
    FourierElement out;
    out.coeffs = T.coeffs;
    // phases multiply into the values
    for (auto& [n, vals] : out.coeffs) {
        if (n == 0) continue;
        for (int i = 0; i < fs.path_count(n); ++i) {
            RatComplex phase{Rat(1)};
            for (int e : fs.degree_paths(n)[static_cast<size_t>(i)]) {
                auto& ed = fs.edges().fedges[static_cast<size_t>(e)];
                phase = phase * V.phase_at(Edge::finite(ed.first, ed.second));
            }
            vals[static_cast<size_t>(i)] = phase * vals[static_cast<size_t>(i)];
        }
    }
    // |zeta|^2 accumulates in the sqrt factor
    std::vector<Rat> sf;
    for (auto& e : fs.edges().fedges)
        sf.push_back(V.H.eval_edge(Edge::finite(e.first, e.second)));
    if (T.sqrt_factor) {
        for (size_t i = 0; i < sf.size(); ++i) sf[i] *= (*T.sqrt_factor)[i];
    }
    out.sqrt_factor = std::move(sf);
    return out;
}

}  // namespace wps
