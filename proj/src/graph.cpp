#include <lapwalk/graph.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace lapwalk {

namespace {

std::string join_diagnostics(const ValidationReport& r) {
    std::string out = "matrix is not Laplacian-type";
    for (const auto& d : r.diagnostics) {
        out += "; ";
        out += d;
    }
    return out;
}

// Union-find over vertex indices.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<std::size_t>> connected_components(std::size_t n,
                                                           std::span<const Edge> edges) {
    DisjointSets sets(n);
    for (const auto& e : edges) sets.unite(e.u, e.v);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = sets.find(v);
        if (slot[root] == n) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(v);
    }
    return out;
}

std::string format_components(const std::vector<std::vector<std::size_t>>& components) {
    std::ostringstream os;
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (c) os << " | ";
        os << '{';
        for (std::size_t t = 0; t < components[c].size(); ++t) {
            if (t) os << ',';
            os << components[c][t] + 1;
        }
        os << '}';
    }
    return os.str();
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    if (n < 2) throw GraphError("graph needs at least 2 vertices, got " + std::to_string(n));
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw IndexError("edge (" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) +
                             ") references a vertex outside [1, " + std::to_string(n) + "]");
        }
        if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u + 1));
        if (!(e.w > 0.0) || !std::isfinite(e.w)) {
            std::ostringstream os;
            os << "edge (" << e.u + 1 << "," << e.v + 1 << ") has non-positive or non-finite weight "
               << e.w;
            throw GraphError(os.str());
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t t = 1; t < edges.size(); ++t) {
        if (edges[t].u == edges[t - 1].u && edges[t].v == edges[t - 1].v) {
            throw GraphError("duplicate edge (" + std::to_string(edges[t].u + 1) + "," +
                             std::to_string(edges[t].v + 1) + ")");
        }
    }
    const auto components = connected_components(n, edges);
    if (components.size() > 1) {
        throw GraphError("graph is disconnected: " + std::to_string(components.size()) +
                         " components " + format_components(components));
    }
    edges_ = std::move(edges);
    adjacency_.resize(n);
    for (const auto& e : edges_) {
        adjacency_[e.u].push_back({e.v, e.w});
        adjacency_[e.v].push_back({e.u, e.w});
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    }
}

double WeightedGraph::strength(std::size_t v) const {
    double s = 0.0;
    for (const auto& nb : adjacency_.at(v)) s += nb.weight;
    return s;
}

bool WeightedGraph::has_unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1.0; });
}

WeightedGraph WeightedGraph::unweighted() const {
    std::vector<Edge> edges = edges_;
    for (auto& e : edges) e.w = 1.0;
    return WeightedGraph(n_, std::move(edges));
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t t = 0; t < a.edges_.size(); ++t) {
        const auto& x = a.edges_[t];
        const auto& y = b.edges_[t];
        if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
    }
    return true;
}

ValidationError::ValidationError(ValidationReport report)
    : Error(join_diagnostics(report)), report_(std::move(report)) {}

ValidationReport check_properties(const Matrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
    if (a.rows() < 2) throw std::invalid_argument("matrix dimension must be at least 2");

    const auto n = static_cast<std::size_t>(a.rows());
    ValidationReport r;
    r.n = n;
    r.symmetric = true;
    r.nonpositive_off_diagonal = true;

    const double scale = a.diagonal().cwiseAbs().maxCoeff();
    const double cutoff = tol.zero * scale;

    std::ostringstream diag;
    diag.precision(17);

    if (!a.allFinite()) {
        r.symmetric = false;
        r.diagnostics.push_back("matrix has non-finite entries");
    }

    std::size_t asym = 0;
    std::size_t positive = 0;
    std::vector<Edge> pattern;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const double ajk = a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
            const double akj = a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
            if (ajk != akj) {
                if (asym++ == 0) {
                    diag.str("");
                    diag << "property (i) violated at (" << j + 1 << "," << k + 1 << "): " << ajk
                         << " != " << akj;
                    r.diagnostics.push_back(diag.str());
                }
                r.symmetric = false;
            }
            for (auto [p, q, value] : {std::tuple{j, k, ajk}, std::tuple{k, j, akj}}) {
                if (value > cutoff) {
                    if (positive++ == 0) {
                        diag.str("");
                        diag << "property (ii) violated at (" << p + 1 << "," << q + 1
                             << "): off-diagonal entry " << value << " > 0";
                        r.diagnostics.push_back(diag.str());
                    }
                    r.nonpositive_off_diagonal = false;
                }
            }
            if (std::abs(ajk) > cutoff || std::abs(akj) > cutoff) pattern.push_back({j, k, 1.0});
        }
    }

    r.components = connected_components(n, pattern);
    r.irreducible = r.components.size() == 1;
    if (!r.irreducible) {
        r.diagnostics.push_back("property (iii) violated: underlying graph has " +
                                std::to_string(r.components.size()) + " components " +
                                format_components(r.components));
    }

    const Vector sums = a.rowwise().sum();
    Eigen::Index worst = 0;
    r.worst_row_sum = sums.cwiseAbs().maxCoeff(&worst);
    r.zero_row_sums = r.worst_row_sum <= tol.row_sum * scale;
    if (!r.zero_row_sums) {
        diag.str("");
        diag << "property (iv) violated at row " << worst + 1 << ": row sum " << sums(worst);
        r.diagnostics.push_back(diag.str());
    }
    return r;
}

ValidationReport validate(const Matrix& a, const Tolerances& tol) {
    ValidationReport r = check_properties(a, tol);
    if (!a.allFinite()) return r;

    const Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    r.rank_checked = true;
    if (solver.info() != Eigen::Success) {
        r.diagnostics.push_back("rank check failed: eigendecomposition did not converge");
        return r;
    }
    const Vector& lambda = solver.eigenvalues();  // ascending
    r.smallest_eigenvalue = lambda(0);
    r.second_smallest_eigenvalue = lambda(1);
    const double scale = a.diagonal().cwiseAbs().maxCoeff();
    const double eps = tol.eigen * static_cast<double>(r.n) * scale;
    r.rank_ok = std::abs(lambda(0)) <= eps && lambda(1) > eps;
    if (!r.rank_ok) {
        std::ostringstream os;
        os.precision(17);
        os << "rank check failed: smallest eigenvalues " << lambda(0) << ", " << lambda(1)
           << " (tolerance " << eps << ")";
        r.diagnostics.push_back(os.str());
    }
    return r;
}

ConductanceMatrix::ConductanceMatrix(Matrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
    ValidationReport r = check_properties(entries_, tol);
    if (!r.properties_hold()) throw ValidationError(std::move(r));
    zero_cutoff_ = tol.zero * max_diagonal();
}

ConductanceMatrix laplacian_from_graph(const WeightedGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Matrix a = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        const auto u = static_cast<Eigen::Index>(e.u);
        const auto v = static_cast<Eigen::Index>(e.v);
        a(u, v) = -e.w;
        a(v, u) = -e.w;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(static_cast<std::size_t>(j))) s += nb.weight;
        a(j, j) = s;
    }
    return ConductanceMatrix(std::move(a));
}

WeightedGraph graph_from_matrix(const ConductanceMatrix& a) {
    const std::size_t n = a.size();
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (a(j, k) < -a.zero_cutoff()) edges.push_back({j, k, -a(j, k)});
        }
    }
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph graph_from_matrix(const Matrix& a, const Tolerances& tol) {
    return graph_from_matrix(ConductanceMatrix(a, tol));
}

}  // namespace lapwalk
