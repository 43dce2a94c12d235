#include <lapwalk/pinned_solve.hpp>

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace lapwalk {

namespace {

using Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_index(std::size_t i, std::size_t n, const char* what) {
    if (i >= n) {
        throw IndexError(std::string(what) + " " + std::to_string(i + 1) + " outside [1, " +
                         std::to_string(n) + "]");
    }
}

void require_load_size(const ConductanceMatrix& a, const LoadVector& f) {
    if (f.size() != a.size()) {
        throw std::invalid_argument("load vector has dimension " + std::to_string(f.size()) +
                                    ", matrix has dimension " + std::to_string(a.size()));
    }
}

// One Schur-complement step without the zero-sum precondition; the load update
// is linear, so the trace can carry an unshifted load through it.
std::pair<Matrix, Vector> schur_step(const Matrix& a, const Vector& f, std::size_t v) {
    const Index n = a.rows();
    const Index pv = idx(v);
    const double pivot = a(pv, pv);
    Matrix reduced(n - 1, n - 1);
    Vector load(n - 1);
    auto orig = [pv](Index p) { return p < pv ? p : p + 1; };
    for (Index p = 0; p < n - 1; ++p) {
        const Index op = orig(p);
        for (Index q = p; q < n - 1; ++q) {
            const Index oq = orig(q);
            const double value = a(op, oq) - (a(op, pv) * a(pv, oq)) / pivot;
            reduced(p, q) = value;
            reduced(q, p) = value;
        }
        load(p) = f(op) - a(op, pv) * (f(pv) / pivot);
    }
    return {std::move(reduced), std::move(load)};
}

// Pinned solve on a raw matrix, shared by the public entry point and the trace.
Vector solve_pinned(const Matrix& a, const Vector& shifted, std::size_t pin) {
    const Index n = a.rows();
    const Index p = idx(pin);
    Matrix sub(n - 1, n - 1);
    Vector rhs(n - 1);
    auto orig = [p](Index t) { return t < p ? t : t + 1; };
    for (Index r = 0; r < n - 1; ++r) {
        for (Index c = 0; c < n - 1; ++c) sub(r, c) = a(orig(r), orig(c));
        rhs(r) = shifted(orig(r));
    }
    Eigen::LLT<Matrix> llt(sub);
    if (llt.info() != Eigen::Success) {
        throw SolveError("Cholesky factorization failed with pin " + std::to_string(pin + 1) +
                         "; the matrix is not positive definite off the pin");
    }
    const Vector y = llt.solve(rhs);
    Vector x(n);
    for (Index r = 0; r < n - 1; ++r) x(orig(r)) = y(r);
    x(p) = 0.0;
    return x;
}

Vector shifted_values(const Vector& f, double total, std::size_t i) {
    Vector out = f;
    out(idx(i)) -= total;
    return out;
}

// Forward minus reverse sum of x along a closed sequence, with x given by a
// per-pin solver. Solves each distinct pin once.
template <class Solve>
CycleCheck cyclic_sums(std::span<const std::size_t> seq, Solve&& solve) {
    std::map<std::size_t, Vector> solutions;
    double scale = 0.0;
    auto x = [&](std::size_t p, std::size_t q) -> double {
        auto it = solutions.find(p);
        if (it == solutions.end()) {
            Vector sol = solve(p);
            scale = std::max(scale, sol.cwiseAbs().maxCoeff());
            it = solutions.emplace(p, std::move(sol)).first;
        }
        return it->second(idx(q));
    };
    double forward = 0.0;
    double reverse = 0.0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const std::size_t p = seq[t];
        const std::size_t q = seq[(t + 1) % seq.size()];
        if (p == q) continue;
        forward += x(p, q);
        reverse += x(q, p);
    }
    return {forward - reverse, scale};
}

void require_cycle_input(const ConductanceMatrix& a, std::span<const std::size_t> seq) {
    if (a.size() < 3) throw std::invalid_argument("cycle identities need n >= 3");
    if (seq.size() < 3) {
        throw std::invalid_argument("cycle sequence needs at least 3 entries, got " +
                                    std::to_string(seq.size()));
    }
    for (std::size_t v : seq) require_index(v, a.size(), "sequence vertex");
}

}  // namespace

LoadVector::LoadVector(Vector values) : values_(std::move(values)), total_(values_.sum()) {}

LoadVector shift_load(const LoadVector& f, std::size_t i) {
    require_index(i, f.size(), "pin");
    return LoadVector(shifted_values(f.values(), f.total(), i));
}

PinnedSolution pinned_solve(const ConductanceMatrix& a, const LoadVector& f, std::size_t pin) {
    require_load_size(a, f);
    require_index(pin, a.size(), "pin");
    const Vector shifted = shifted_values(f.values(), f.total(), pin);
    Vector x = solve_pinned(a.entries(), shifted, pin);

    const double residual = (a.entries() * x - shifted).cwiseAbs().maxCoeff();
    const double norm_a = a.entries().cwiseAbs().rowwise().sum().maxCoeff();
    const double bound = 1e-9 * (norm_a * x.cwiseAbs().maxCoeff() + shifted.cwiseAbs().maxCoeff());
    if (!(residual <= bound) && residual > 0.0) {
        throw SolveError("pinned solve residual " + std::to_string(residual) +
                         " exceeds bound " + std::to_string(bound));
    }
    return {pin, std::move(x), residual};
}

EliminationResult eliminate_vertex(const ConductanceMatrix& a, const LoadVector& f, std::size_t v) {
    require_load_size(a, f);
    if (a.size() < 3) {
        throw std::invalid_argument("cannot eliminate a vertex of a " + std::to_string(a.size()) +
                                    "x" + std::to_string(a.size()) + " system");
    }
    require_index(v, a.size(), "eliminated vertex");
    if (std::abs(f.total()) > 1e-10 * f.values().cwiseAbs().sum()) {
        throw std::invalid_argument("elimination needs a load with f.1 = 0, got f.1 = " +
                                    std::to_string(f.total()));
    }
    auto [reduced, load] = schur_step(a.entries(), f.values(), v);
    std::vector<std::size_t> survivors;
    survivors.reserve(a.size() - 1);
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (t != v) survivors.push_back(t);
    }
    return {ConductanceMatrix(std::move(reduced)), LoadVector(std::move(load)), v,
            std::move(survivors)};
}

ConductanceMatrix eliminate_vertex(const ConductanceMatrix& a, std::size_t v) {
    return eliminate_vertex(a, LoadVector::zeros(a.size()), v).reduced_matrix;
}

TriangleStar triangle_star_coefficients(const ConductanceMatrix& a) {
    if (a.size() != 3) {
        throw std::invalid_argument("star expansion needs a 3x3 matrix, got " +
                                    std::to_string(a.size()) + "x" + std::to_string(a.size()));
    }
    TriangleStar t{};
    t.alpha = {-a(1, 2), -a(0, 2), -a(0, 1)};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(t.alpha[i] > a.zero_cutoff())) {
            throw std::invalid_argument("underlying graph is not K3: edge opposite vertex " +
                                        std::to_string(i + 1) + " is missing");
        }
    }
    t.c = t.alpha[0] * t.alpha[1] + t.alpha[1] * t.alpha[2] + t.alpha[2] * t.alpha[0];
    for (std::size_t i = 0; i < 3; ++i) t.beta[i] = t.c / t.alpha[i];
    return t;
}

ConductanceMatrix star_expand_triangle(const ConductanceMatrix& a) {
    const TriangleStar t = triangle_star_coefficients(a);
    Matrix b = Matrix::Zero(4, 4);
    for (Index i = 0; i < 3; ++i) {
        const double beta = t.beta[static_cast<std::size_t>(i)];
        b(i, i) = beta;
        b(i, 3) = -beta;
        b(3, i) = -beta;
    }
    b(3, 3) = t.beta[0] + t.beta[1] + t.beta[2];
    return ConductanceMatrix(std::move(b));
}

double three_cycle_residual(const ConductanceMatrix& a, const LoadVector& f, std::size_t i,
                            std::size_t j, std::size_t k) {
    if (i == j || j == k || k == i) {
        throw std::invalid_argument("three-cycle residual needs distinct vertices");
    }
    const std::array<std::size_t, 3> seq{i, j, k};
    return cycle_check(a, f, seq).residual;
}

CycleCheck cycle_check(const ConductanceMatrix& a, const LoadVector& f,
                       std::span<const std::size_t> sequence) {
    require_load_size(a, f);
    require_cycle_input(a, sequence);
    return cyclic_sums(sequence, [&](std::size_t p) { return pinned_solve(a, f, p).values; });
}

double cycle_residual(const ConductanceMatrix& a, const LoadVector& f,
                      std::span<const std::size_t> sequence) {
    return cycle_check(a, f, sequence).residual;
}

ReductionTrace reduction_trace(const ConductanceMatrix& a, const LoadVector& f, std::size_t i,
                               std::size_t j, std::size_t k) {
    const double full = three_cycle_residual(a, f, i, j, k);
    const double total = f.total();

    // Eliminate everything outside the triple, highest index first.
    Matrix m = a.entries();
    Vector load = f.values();
    std::vector<std::size_t> alive(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) alive[t] = t;
    std::vector<std::size_t> eliminated;
    for (std::size_t t = a.size(); t-- > 0;) {
        if (t == i || t == j || t == k) continue;
        const auto pos = static_cast<std::size_t>(
            std::find(alive.begin(), alive.end(), t) - alive.begin());
        auto [next, next_load] = schur_step(m, load, pos);
        m = std::move(next);
        load = std::move(next_load);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pos));
        eliminated.push_back(t);
    }

    // Reorder the surviving 3x3 system to (i, j, k).
    const std::array<std::size_t, 3> triple{i, j, k};
    std::array<Index, 3> at{};
    for (std::size_t s = 0; s < 3; ++s) {
        at[s] = std::find(alive.begin(), alive.end(), triple[s]) - alive.begin();
    }
    Matrix r3(3, 3);
    Vector g3(3);
    for (Index p = 0; p < 3; ++p) {
        for (Index q = 0; q < 3; ++q) r3(p, q) = m(at[static_cast<std::size_t>(p)], at[static_cast<std::size_t>(q)]);
        g3(p) = load(at[static_cast<std::size_t>(p)]);
    }
    ConductanceMatrix reduced(std::move(r3));

    const std::array<std::size_t, 3> local{0, 1, 2};
    auto solver_for = [total](const Matrix& mat, const Vector& base) {
        return [&mat, &base, total](std::size_t p) {
            return solve_pinned(mat, shifted_values(base, total, p), p);
        };
    };
    const double reduced_residual =
        cyclic_sums(local, solver_for(reduced.entries(), g3)).residual;

    const bool triangle = reduced(0, 1) < -reduced.zero_cutoff() &&
                          reduced(1, 2) < -reduced.zero_cutoff() &&
                          reduced(0, 2) < -reduced.zero_cutoff();

    std::optional<ConductanceMatrix> star;
    Matrix star_matrix = reduced.entries();
    Vector star_load = g3;
    std::size_t center = 0;
    if (triangle) {
        star = star_expand_triangle(reduced);
        star_matrix = star->entries();
        star_load = Vector::Zero(4);
        star_load.head(3) = g3;
        center = 3;
    } else {
        // A path on three vertices: the center is the vertex adjacent to both others.
        for (std::size_t p = 0; p < 3; ++p) {
            const std::size_t q = (p + 1) % 3;
            const std::size_t r = (p + 2) % 3;
            if (reduced(p, q) < -reduced.zero_cutoff() && reduced(p, r) < -reduced.zero_cutoff()) {
                center = p;
            }
        }
    }
    const double star_residual =
        triangle ? cyclic_sums(local, solver_for(star_matrix, star_load)).residual
                 : reduced_residual;

    // x_pq = x_pc + x_cq on the star, for p != q.
    const auto order = static_cast<std::size_t>(star_matrix.rows());
    std::vector<Vector> xs(order);
    for (std::size_t p = 0; p < order; ++p) {
        xs[p] = solve_pinned(star_matrix, shifted_values(star_load, total, p), p);
    }
    double gap = 0.0;
    for (std::size_t p = 0; p < order; ++p) {
        for (std::size_t q = 0; q < order; ++q) {
            if (q == p) continue;
            const double lhs = xs[p](idx(q));
            const double rhs = xs[p](idx(center)) + xs[center](idx(q));
            gap = std::max(gap, std::abs(lhs - rhs));
        }
    }

    return {triple,   std::move(eliminated), std::move(reduced), std::move(g3),
            full,     reduced_residual,      triangle,           std::move(star),
            star_residual, gap};
}

}  // namespace lapwalk
