#include <lapwalk/mechanics.hpp>
#include <lapwalk/parallel.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace lapwalk {

namespace {

using Eigen::Index;

void require_shape(const WeightedGraph& g, const ForceField& forces) {
    if (forces.mass_count() != g.vertex_count()) {
        throw std::invalid_argument("force field has " + std::to_string(forces.mass_count()) +
                                    " rows, graph has " + std::to_string(g.vertex_count()) +
                                    " vertices");
    }
}

Matrix band_forces(const WeightedGraph& g, const Matrix& x) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& e : g.edges()) {
        const Index u = static_cast<Index>(e.u);
        const Index v = static_cast<Index>(e.v);
        const auto pull = (e.w * (x.row(v) - x.row(u))).eval();
        out.row(u) += pull;
        out.row(v) -= pull;
    }
    return out;
}

}  // namespace

ForceField::ForceField(Matrix forces) : forces_(std::move(forces)) {
    if (forces_.cols() < 1) throw std::invalid_argument("force field needs dimension d >= 1");
    if (!forces_.allFinite()) throw std::invalid_argument("force field has non-finite entries");
}

ForceField ForceField::scalar(const Vector& f) {
    Matrix m(f.size(), 1);
    m.col(0) = f;
    return ForceField(std::move(m));
}

Vector nail_reaction(const ForceField& forces) {
    return -forces.forces().colwise().sum().transpose();
}

Equilibrium solve_equilibrium(const WeightedGraph& g, const ForceField& forces, std::size_t nail,
                              unsigned threads) {
    require_shape(g, forces);
    if (nail >= g.vertex_count()) {
        throw IndexError("nail " + std::to_string(nail + 1) + " outside [1, " +
                         std::to_string(g.vertex_count()) + "]");
    }
    const ConductanceMatrix a = laplacian_from_graph(g);
    const std::size_t d = forces.dimension();
    Matrix positions(forces.forces().rows(), forces.forces().cols());
    parallel_chunks(d, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const LoadVector load(forces.forces().col(static_cast<Index>(c)));
            positions.col(static_cast<Index>(c)) = pinned_solve(a, load, nail).values;
        }
    });
    return {nail, std::move(positions), nail_reaction(forces)};
}

Matrix unsupported_forces(const WeightedGraph& g, const ForceField& forces, const Equilibrium& eq) {
    require_shape(g, forces);
    if (eq.positions.rows() != forces.forces().rows() ||
        eq.positions.cols() != forces.forces().cols()) {
        throw std::invalid_argument("equilibrium positions do not match the force field shape");
    }
    return forces.forces() + band_forces(g, eq.positions);
}

Matrix residual_forces(const WeightedGraph& g, const ForceField& forces, const Equilibrium& eq) {
    Matrix out = unsupported_forces(g, forces, eq);
    out.row(static_cast<Index>(eq.nail)) += eq.reaction.transpose();
    return out;
}

}  // namespace lapwalk
