#pragma once

// Pinned solves of the singular system A x = f, symmetric vertex elimination
// (Schur complement), the triangle -> star expansion, and cycle-reversal
// residuals.
//
// For a pin i, f_i is f with f.1 subtracted at coordinate i, so that f_i.1 = 0;
// x_i is the unique solution of A x = f_i with x_i[i] = 0. The cycle identity
// says x_12 + x_23 + x_31 = x_21 + x_32 + x_13, and more generally the sum of
// x along any closed index sequence equals the sum along its reversal.

#include <lapwalk/graph.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lapwalk {

class LoadVector {
public:
    explicit LoadVector(Vector values);
    static LoadVector zeros(std::size_t n) { return LoadVector(Vector::Zero(static_cast<Eigen::Index>(n))); }

    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    const Vector& values() const { return values_; }
    double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
    /// f . 1
    double total() const { return total_; }

private:
    Vector values_;
    double total_;
};

struct PinnedSolution {
    std::size_t pin;
    Vector values;    ///< values[pin] == 0 exactly
    double residual;  ///< ||A x - f_pin||_inf
};

struct EliminationResult {
    ConductanceMatrix reduced_matrix;
    LoadVector reduced_load;
    std::size_t eliminated;
    /// survivors[p] is the original index of row p of the reduced system.
    std::vector<std::size_t> survivors;
};

/// f with coordinate i reduced by f.1. Throws IndexError when i >= n.
LoadVector shift_load(const LoadVector& f, std::size_t i);

/// Unique x with x[pin] = 0 and A x = shift_load(f, pin).
///
/// Deletes row and column `pin`, Cholesky-factorizes the remaining principal
/// submatrix (positive definite for any valid A) and reinserts 0 at `pin`.
/// Throws SolveError if the factorization breaks down or the residual exceeds
/// 1e-9 (||A|| ||x|| + ||f||).
PinnedSolution pinned_solve(const ConductanceMatrix& a, const LoadVector& f, std::size_t pin);

/// Symmetric Gaussian elimination of vertex v:
///   A' = A_VV - A_Vv A_vV / A_vv,   f' = f_V - A_Vv f_v / A_vv,
/// with V the surviving vertices in their original order.
/// Requires n >= 3 and f.1 = 0 (relative 1e-10); throws std::invalid_argument otherwise.
EliminationResult eliminate_vertex(const ConductanceMatrix& a, const LoadVector& f, std::size_t v);

/// Matrix-only elimination (zero load).
ConductanceMatrix eliminate_vertex(const ConductanceMatrix& a, std::size_t v);

struct TriangleStar {
    std::array<double, 3> alpha;  ///< alpha[i]: conductance of the edge not incident to vertex i
    double c;                     ///< alpha0 alpha1 + alpha1 alpha2 + alpha2 alpha0
    std::array<double, 3> beta;   ///< c / alpha[i]
};

/// Reads the triangle conductances of a 3x3 matrix with K3 underlying graph.
/// Throws std::invalid_argument if n != 3 or some off-diagonal entry is zero.
TriangleStar triangle_star_coefficients(const ConductanceMatrix& a);

/// 4x4 star matrix with diagonal (beta0, beta1, beta2, sum beta) and
/// B[i][3] = -beta[i]. Eliminating vertex 3 (the fourth) gives back `a`.
ConductanceMatrix star_expand_triangle(const ConductanceMatrix& a);

/// (x_ij + x_jk + x_ki) - (x_ji + x_kj + x_ik) with x_pq = pinned_solve(a, f, p).values[q].
double three_cycle_residual(const ConductanceMatrix& a, const LoadVector& f, std::size_t i,
                            std::size_t j, std::size_t k);

struct CycleCheck {
    double residual;  ///< forward sum minus reverse sum
    double scale;     ///< max |x_pq| over every solution vector used
};

/// Cyclic residual over an index sequence of length >= 3. Adjacent repeats are
/// allowed and contribute 0. Requires n >= 3.
CycleCheck cycle_check(const ConductanceMatrix& a, const LoadVector& f,
                       std::span<const std::size_t> sequence);

double cycle_residual(const ConductanceMatrix& a, const LoadVector& f,
                      std::span<const std::size_t> sequence);

/// Step-by-step reduction of the three-cycle identity to a 3x3 system, then to
/// a star when the 3x3 system is a triangle.
struct ReductionTrace {
    std::array<std::size_t, 3> triple;
    std::vector<std::size_t> eliminated;  ///< original indices, in elimination order
    ConductanceMatrix reduced;            ///< rows in order of triple
    Vector reduced_load;                  ///< unshifted load carried to the triple
    double full_residual;
    double reduced_residual;
    bool triangle;                        ///< reduced underlying graph is K3
    std::optional<ConductanceMatrix> star;
    double star_residual;                 ///< identity on the star (== reduced_residual for a path)
    /// max |x_pq - (x_pc + x_cq)| over p != q on the star with center c.
    double star_additivity_gap;
};

ReductionTrace reduction_trace(const ConductanceMatrix& a, const LoadVector& f, std::size_t i,
                               std::size_t j, std::size_t k);

}  // namespace lapwalk
