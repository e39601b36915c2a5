/**
 * Exact finitely generated convex sets conv(V) + cone(R) and the geometric
 * operators the backward recursion needs: canonical forms, dual (H-)
 * representations, relative-interior membership, intersections, hulls of
 * unions, dual cones.
 *
 * Everything is computed over rationals with two engines:
 *   - a double description kernel on homogenized cones (V <-> H conversion
 *     and dual cones), and
 *   - exact LP feasibility (canonical generator reduction, membership).
 *
 * Canonical form is unique per point set: lineality basis in reduced row
 * echelon form, every generator reduced modulo the lineality space, rays
 * scaled to coprime integers, generators sorted lexicographically. Two
 * finitely generated descriptions of the same point set therefore
 * canonicalize to bit-identical objects, which is what the golden tests
 * compare.
 */

#ifndef MSP_POLYHEDRA_HPP
#define MSP_POLYHEDRA_HPP

#include "msp/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msp {

/**
 * Finitely generated convex set: the closed set conv(vertices) + cone(rays).
 * The relatively open set it denotes in the selection problem is its
 * relative interior. Empty iff there are no vertices (an empty set keeps no
 * rays).
 */
struct FGSet
{
    int dim = 0;
    std::vector<VectorXr> vertices;
    std::vector<VectorXr> rays;

    bool empty() const { return vertices.empty(); }
};

bool operator==(const FGSet& a, const FGSet& b);

/** Halfspace description: e·x = f for equalities, a·x <= b for inequalities. */
struct HRep
{
    int dim = 0;
    std::vector<std::pair<VectorXr, Rational>> equalities;
    std::vector<std::pair<VectorXr, Rational>> inequalities;
};

enum class Containment { Closure, RelativeInterior };

/**
 * Generator description of a polyhedral cone: span(lineality) +
 * cone(rays), with rays reduced modulo the lineality space. This is the
 * output form of the double description kernel.
 */
struct ConeGenerators
{
    std::vector<VectorXr> lineality;
    std::vector<VectorXr> rays;
};

/**
 * Double description method: generators of {y : n·y >= 0 for all n in
 * normals}. Lineality comes out as a canonical RREF basis; rays are the
 * extreme rays modulo lineality, reduced, coprime-scaled and sorted.
 */
ConeGenerators dd_cone(int dim, const std::vector<VectorXr>& normals);

/**
 * Unique minimal canonical form: deduplicate, split off the lineality space,
 * reduce every generator modulo it, drop non-extreme generators (exact LP
 * tests), scale rays to coprime integers and sort. Idempotent; equal point
 * sets produce equal objects.
 */
FGSet canonicalize(const FGSet& s);

/**
 * Affine hull as (point, direction basis). The point is the canonical
 * particular solution of the hull equalities; the basis size equals the
 * set's intrinsic dimension.
 */
std::pair<VectorXr, std::vector<VectorXr>> affine_hull(const FGSet& s);

/**
 * Halfspace description via the homogenization cone in dimension d+1.
 * The result is canonical: equalities span exactly the affine-hull
 * complement, no inequality is redundant or implicit.
 */
HRep v_to_h(const FGSet& s);

/** Generator description of an HRep; empty FGSet when it is infeasible. */
FGSet h_to_v(const HRep& h);

/** Intersection of the closed sets, canonical. */
FGSet intersect(const FGSet& s, const FGSet& t);

struct TaggedGenerator
{
    VectorXr gen;
    bool is_ray = false;
    std::string tag; // originating child id
};

/**
 * Convex hull of a union keeps two views: the canonical hull for geometry,
 * and the full deduplicated generator list with child tags for exact
 * decompositions (a canonical generator may be reduced modulo the lineality
 * space and then lies in no single originating set, so tags live on the
 * preserved list).
 */
struct TaggedSet
{
    FGSet hull;
    std::vector<TaggedGenerator> generators;
};

/** conv of the union of the sets; tags[i] labels the generators of sets[i]. */
TaggedSet conv_union(const std::vector<FGSet>& sets, const std::vector<std::string>& tags);

/**
 * Canonical relative-interior point: average of the canonical vertices plus
 * the sum of the canonical rays.
 */
VectorXr ri_point(const FGSet& s);

bool contains(const HRep& h, const VectorXr& x, Containment mode);
bool contains(const FGSet& s, const VectorXr& x, Containment mode);

/**
 * cl(ri P ∩ ri Q), or nullopt when ri P ∩ ri Q = ∅. Decided by a single
 * relative-interior probe of P ∩ Q: when the relative interiors meet,
 * ri(P ∩ Q) = ri P ∩ ri Q, so the probe point settles membership for the
 * whole set.
 */
std::optional<FGSet> ri_intersection_closure(const FGSet& p, const FGSet& q);

/**
 * Largest t with x + t·dir satisfying h; nullopt means unbounded (dir is a
 * recession direction). Requires x feasible and dir inside the equality
 * direction space.
 */
std::optional<Rational> max_step(const HRep& h, const VectorXr& x, const VectorXr& dir);

/** Dual cone {y : g·y >= 0 for all generators g}; input must be a cone at 0. */
FGSet dual_cone(const FGSet& c);

/** Cone with apex at the origin and the given rays. */
FGSet make_cone(int dim, std::vector<VectorXr> rays);

/** Generator sanity: dimension >= 1, matching generator dims, no zero ray. */
void validate_fgset_input(const FGSet& s);

} // namespace msp

#endif // MSP_POLYHEDRA_HPP
