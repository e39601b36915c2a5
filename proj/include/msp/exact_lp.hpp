/**
 * Exact rational linear programming over free variables, with verified
 * certificates: optimal points come with dual multipliers, infeasibility with
 * a Farkas vector, unboundedness with an improving ray. All certificates are
 * checked by direct substitution before a result is returned.
 *
 * The solver is a dense two-phase tableau simplex with Bland's rule, which
 * terminates and is deterministic under exact arithmetic.
 */

#ifndef MSP_EXACT_LP_HPP
#define MSP_EXACT_LP_HPP

#include "msp/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace msp {

enum class Sense { Maximize, Minimize };

/** Rows are (normal, rhs): equality rows a·x = b, inequality rows a·x <= b. */
struct LinearProgram
{
    Sense sense = Sense::Maximize;
    VectorXr objective;
    std::vector<std::pair<VectorXr, Rational>> eq_rows;
    std::vector<std::pair<VectorXr, Rational>> ineq_rows;

    Eigen::Index dim() const { return objective.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

/**
 * Result of an exact solve.
 *
 * Optimal: `point` satisfies every row exactly, `value` = objective(point),
 * and `dual` y (ordered [eq rows..., ineq rows...]) satisfies Σ y_i a_i =
 * objective, y·b = value, with y >= 0 on inequality rows when maximizing and
 * y <= 0 when minimizing.
 *
 * Infeasible: `farkas` y has y >= 0 on inequality rows, Σ y_i a_i = 0 and
 * Σ y_i b_i < 0.
 *
 * Unbounded: `ray` r satisfies the homogeneous system (a·r = 0 on equalities,
 * a·r <= 0 on inequalities) and strictly improves the objective.
 */
struct LPResult
{
    LPStatus status = LPStatus::Optimal;
    VectorXr point;
    Rational value;
    VectorXr dual;
    VectorXr farkas;
    VectorXr ray;
};

LPResult solve_lp(const LinearProgram& lp);

/**
 * Strictly positive convex weights writing x as a combination of the given
 * points, i.e. the exact test for x ∈ ri conv(points). Decided by maximizing
 * the minimum weight: nullopt when the system is infeasible or the optimum
 * is not strictly positive.
 */
std::optional<VectorXr> strict_barycentric(const VectorXr& x, const std::vector<VectorXr>& points);

/** Weights of a point over a generator list, aligned with the input order. */
struct HullDecomposition
{
    VectorXr vertex_weights; // lambda >= 0, sums to 1
    VectorXr ray_weights;    // mu >= 0
};

/** Thrown when the queried point is outside conv(vertices) + cone(rays). */
class NotInHullError : public std::runtime_error
{
    public:
        NotInHullError(const std::string& what, VectorXr certificate)
            : std::runtime_error(what), farkas(std::move(certificate))
        {
        }

        VectorXr farkas; // Farkas certificate of non-membership
};

/**
 * Exact decomposition x = Σ λ_j v_j + Σ μ_i r_i with λ >= 0, Σ λ = 1,
 * μ >= 0. Throws NotInHullError (with certificate) when no such weights
 * exist.
 */
HullDecomposition represent_in_hull(const VectorXr& x,
                                    const std::vector<VectorXr>& vertices,
                                    const std::vector<VectorXr>& rays);

} // namespace msp

#endif // MSP_EXACT_LP_HPP
