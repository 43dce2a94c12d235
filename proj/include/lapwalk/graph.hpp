#pragma once

// Weighted graphs, Laplacian-type ("conductance") matrices and their validation.
//
// A conductance matrix A is an n x n real matrix with
//   (i)   A symmetric,
//   (ii)  non-positive off-diagonal entries,
//   (iii) a connected underlying graph (the off-diagonal nonzero pattern),
//   (iv)  A * 1 = 0.
// Together these force A to be positive semidefinite of rank n - 1.
//
// Vertex indices are 0-based in this API. Every human-readable message prints
// them 1-based.

#include <lapwalk/error.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lapwalk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Cutoffs used when deciding whether a floating-point matrix is Laplacian-type.
/// All are relative to the largest absolute diagonal entry.
struct Tolerances {
    double zero = 1e-12;     ///< |A[j][k]| at or below this is a non-edge
    double row_sum = 1e-10;  ///< largest admissible |row sum|
    double eigen = 1e-10;    ///< rank check; additionally scaled by n
};

struct Edge {
    std::size_t u;
    std::size_t v;
    double w;
};

struct Neighbor {
    std::size_t vertex;
    double weight;
};

/// Simple connected graph with strictly positive edge weights.
/// Edges are normalized to u < v and sorted; adjacency lists are sorted by vertex.
class WeightedGraph {
public:
    /// Throws GraphError on self-loops, duplicate pairs, non-positive or
    /// non-finite weights, n < 2, or disconnection (listing the components),
    /// and IndexError on vertices >= n.
    WeightedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Neighbor> neighbors(std::size_t v) const { return adjacency_.at(v); }

    std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
    /// Sum of incident edge weights.
    double strength(std::size_t v) const;
    bool has_unit_weights() const;
    /// Same edge set, every weight replaced by 1.
    WeightedGraph unweighted() const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Connected components of the graph on n vertices spanned by `edges` (weights
/// ignored). Each component is sorted; components are ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(
    std::size_t n, std::span<const Edge> edges);

/// Renders components as "{1,2} | {3,4}" (1-based).
std::string format_components(const std::vector<std::vector<std::size_t>>& components);

struct ValidationReport {
    std::size_t n = 0;
    bool symmetric = false;                 // (i)
    bool nonpositive_off_diagonal = false;  // (ii)
    bool irreducible = false;               // (iii)
    bool zero_row_sums = false;             // (iv)
    bool rank_ok = false;                   // rank n - 1 (smallest eigenvalue simple and ~0)
    bool rank_checked = false;
    double worst_row_sum = 0.0;
    double smallest_eigenvalue = 0.0;
    double second_smallest_eigenvalue = 0.0;
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::string> diagnostics;

    bool properties_hold() const {
        return symmetric && nonpositive_off_diagonal && irreducible && zero_row_sums;
    }
    bool passed() const { return properties_hold() && rank_ok; }
};

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Runs all five checks. The rank check uses a symmetric eigendecomposition of
/// (A + A^T) / 2 and passes iff |lambda_1| <= tol and lambda_2 > tol with
/// tol = eigen * n * max|diag|. Throws std::invalid_argument for non-square or
/// smaller-than-2x2 input; property failures are reported, not thrown.
ValidationReport validate(const Matrix& a, const Tolerances& tol = {});

/// Checks (i)-(iv) only, in O(n^2). Used by ConductanceMatrix.
ValidationReport check_properties(const Matrix& a, const Tolerances& tol = {});

/// Dense symmetric matrix satisfying (i)-(iv). Immutable.
class ConductanceMatrix {
public:
    /// Throws ValidationError (with the per-property report) unless (i)-(iv) hold.
    explicit ConductanceMatrix(Matrix entries, const Tolerances& tol = {});

    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double operator()(std::size_t j, std::size_t k) const {
        return entries_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    double max_diagonal() const { return entries_.diagonal().cwiseAbs().maxCoeff(); }
    /// Off-diagonal entry below this magnitude counts as zero.
    double zero_cutoff() const { return zero_cutoff_; }

private:
    Matrix entries_;
    double zero_cutoff_;
};

ConductanceMatrix laplacian_from_graph(const WeightedGraph& g);

/// Edge (j,k,w) for every A[j][k] < -cutoff, with w = -A[j][k].
WeightedGraph graph_from_matrix(const ConductanceMatrix& a);
/// Validates first; throws ValidationError whose message names the first violation.
WeightedGraph graph_from_matrix(const Matrix& a, const Tolerances& tol = {});

}  // namespace lapwalk
