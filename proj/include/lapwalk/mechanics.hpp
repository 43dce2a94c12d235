#pragma once

// Masses joined by linear zero-rest-length springs ("bands") of stiffness a_jk,
// each mass under an applied force, one mass nailed at the origin. Positions
// live in R^d and every coordinate axis decouples into one pinned solve.

#include <lapwalk/graph.hpp>
#include <lapwalk/pinned_solve.hpp>

#include <cstddef>

namespace lapwalk {

/// n x d applied forces; row j is the force on mass j.
class ForceField {
public:
    explicit ForceField(Matrix forces);
    /// d = 1 field from a load vector.
    static ForceField scalar(const Vector& f);

    std::size_t mass_count() const { return static_cast<std::size_t>(forces_.rows()); }
    std::size_t dimension() const { return static_cast<std::size_t>(forces_.cols()); }
    const Matrix& forces() const { return forces_; }

private:
    Matrix forces_;
};

struct Equilibrium {
    std::size_t nail;
    Matrix positions;  ///< n x d, row `nail` is exactly 0
    Vector reaction;   ///< force of the nail on mass `nail`
};

/// Reaction of the nail: minus the column sums of F.
Vector nail_reaction(const ForceField& forces);

/// Column c of the positions is pinned_solve(L(g), F column c, nail).
/// Axes are solved on up to `threads` threads (0 = hardware concurrency);
/// the result does not depend on the thread count.
Equilibrium solve_equilibrium(const WeightedGraph& g, const ForceField& forces, std::size_t nail,
                              unsigned threads = 1);

/// Net force on each mass: F[j] + sum_k a_jk (x_k - x_j), plus the reaction at the nail.
Matrix residual_forces(const WeightedGraph& g, const ForceField& forces, const Equilibrium& eq);

/// Same as residual_forces but leaves out the nail reaction.
Matrix unsupported_forces(const WeightedGraph& g, const ForceField& forces, const Equilibrium& eq);

}  // namespace lapwalk
