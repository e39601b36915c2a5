/**
 * The martingale selection solver: the backward W-recursion
 *
 *   W_N = cl G_N,   W_{n-1} = cl(G_{n-1} ∩ ri Y_{n-1}),
 *   Y_{n-1} = conv(support of W_n given F_{n-1}),
 *
 * with emptiness propagated down the tree, and — when every W is nonempty —
 * the forward construction of a selector x with x(u) in the relative
 * interior of its node set and an equivalent measure Q (as one-step edge
 * probabilities q > 0) making x an exact Q-martingale. Every identity is
 * rational-exact; the verifier re-checks them all.
 */

#ifndef MSP_MSP_CORE_HPP
#define MSP_MSP_CORE_HPP

#include "msp/event_tree.hpp"

#include <map>
#include <string>
#include <vector>

namespace msp {

/**
 * Selector values per node and one-step measure weights per edge (keyed by
 * the child id; every non-root node has exactly one incoming edge).
 */
struct Solution
{
    std::map<std::string, VectorXr> x;
    std::map<std::string, Rational> q;
};

/** Density process and leaf measure derived from a solution, with exact checks. */
struct MeasureReport
{
    std::map<std::string, Rational> gamma; // per edge (child id): q / p
    std::map<std::string, Rational> z;     // per node: running product of gamma
    std::map<std::string, Rational> leaf_q; // per leaf: product of q along the path
    Rational total_q = 0;                  // must be exactly 1
    Rational expected_z = 0;               // E_P[z_N], must be exactly 1
    bool all_positive = false;             // Q ~ P on a full-support tree
    bool ok() const { return total_q == 1 && expected_z == 1 && all_positive; }
};

struct VerificationFailure
{
    std::string node;
    std::string check;   // "selector", "edge-positivity", "edge-sum", "martingale", "structure"
    std::string message;
};

/**
 * Backward pass over the whole tree. If some node's W comes out empty the
 * verdict names the latest-time (then lexicographically first) failing node;
 * Y entries exist for the internal nodes whose children were all nonempty.
 * `threads` > 1 processes the nodes of a time level in parallel; results are
 * identical for any thread count.
 */
BackwardState backward_pass(const Instance& inst, int threads = 1);

/**
 * One step of the forward construction: split x into exact weights q_j > 0,
 * Σ q_j = 1, and points x_j in ri W_j with Σ q_j x_j = x. Requires
 * x ∈ ri Y where Y is the tagged support hull of the children.
 *
 * The construction mixes a hull decomposition of a point pushed past x away
 * from the children's barycenter with the children's canonical
 * relative-interior points, which forces every child weight positive and
 * every child point into the relative interior.
 */
std::vector<std::pair<Rational, VectorXr>>
one_step_decompose(const VectorXr& x, const std::vector<std::pair<std::string, FGSet>>& children,
                   const TaggedSet& y);

/** Forward construction; requires a Solvable verdict. */
Solution forward_pass(const Instance& inst, const BackwardState& state);

/** Leaf measure, density process and their exact identities. */
MeasureReport assemble_measure(const Instance& inst, const Solution& sol);

/**
 * Exact verification of a (possibly external) solution: selector membership
 * in ri cl G at every node, edge weights positive and summing to one, and
 * the martingale identity at every internal node. Empty result = pass.
 */
std::vector<VerificationFailure> verify_solution(const Instance& inst, const Solution& sol);

} // namespace msp

#endif // MSP_MSP_CORE_HPP
