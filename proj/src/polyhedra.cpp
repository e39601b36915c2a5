#include "msp/polyhedra.hpp"

#include "msp/exact_lp.hpp"
#include "msp/linalg.hpp"

#include <algorithm>
#include <string>

namespace msp {

namespace {

void ensure(bool cond, const char* what)
{
    if (!cond)
        throw ContractViolation(std::string("polyhedra: ") + what);
}

void validate_fgset(const FGSet& s, const char* where)
{
    if (s.dim < 1)
        throw InputError(std::string(where) + ": dimension must be >= 1");
    for (const VectorXr& v : s.vertices)
        if (v.size() != s.dim)
            throw InputError(std::string(where) + ": vertex dimension mismatch");
    for (const VectorXr& r : s.rays) {
        if (r.size() != s.dim)
            throw InputError(std::string(where) + ": ray dimension mismatch");
        bool zero = true;
        for (Eigen::Index i = 0; i < r.size(); ++i)
            if (r[i] != 0)
                zero = false;
        if (zero)
            throw InputError(std::string(where) + ": zero ray");
    }
}

void sort_unique(std::vector<VectorXr>& vs)
{
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end(), vec_eq), vs.end());
}

Rational dot(const VectorXr& a, const VectorXr& b)
{
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

bool is_zero(const VectorXr& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            return false;
    return true;
}

/** Lineality space in reduced row echelon form, for canonical reductions. */
struct LinealityBasis
{
    MatrixXr rows;           // leading coefficient 1 at each pivot
    std::vector<int> pivots; // strictly increasing

    bool empty() const { return pivots.empty(); }

    // Unique representative of v modulo the span: all pivot coordinates zeroed.
    VectorXr reduce(const VectorXr& v) const
    {
        VectorXr out = v;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const Rational c = out[pivots[i]];
            if (c != 0)
                out -= c * rows.row(static_cast<int>(i)).transpose();
        }
        return out;
    }

    std::vector<VectorXr> coprime_rows() const
    {
        std::vector<VectorXr> out;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            out.push_back(scale_to_coprime(rows.row(static_cast<int>(i)).transpose()));
        return out;
    }
};

LinealityBasis lineality_from(const std::vector<VectorXr>& lines, int dim)
{
    LinealityBasis basis;
    if (lines.empty()) {
        basis.rows = MatrixXr(0, dim);
        return basis;
    }
    MatrixXr m(static_cast<int>(lines.size()), dim);
    for (std::size_t i = 0; i < lines.size(); ++i)
        m.row(static_cast<int>(i)) = lines[i].transpose();
    basis.pivots = rref_in_place(m);
    basis.rows = m.topRows(static_cast<int>(basis.pivots.size()));
    return basis;
}

// LP feasibility: target in cone(gens)?
bool in_cone_lp(const VectorXr& target, const std::vector<VectorXr>& gens)
{
    if (gens.empty())
        return is_zero(target);
    const int d = static_cast<int>(target.size());
    const int n = static_cast<int>(gens.size());
    LinearProgram lp;
    lp.objective = VectorXr::Zero(n);
    for (int k = 0; k < d; ++k) {
        VectorXr row(n);
        for (int j = 0; j < n; ++j)
            row[j] = gens[j][k];
        lp.eq_rows.emplace_back(row, target[k]);
    }
    for (int j = 0; j < n; ++j) {
        VectorXr row = VectorXr::Zero(n);
        row[j] = -1;
        lp.ineq_rows.emplace_back(row, Rational(0));
    }
    return solve_lp(lp).status == LPStatus::Optimal;
}

// LP feasibility: target in conv(verts) + cone(rays)?
bool in_hull_lp(const VectorXr& target, const std::vector<VectorXr>& verts,
                const std::vector<VectorXr>& rays)
{
    if (verts.empty())
        return false;
    const int d = static_cast<int>(target.size());
    const int p = static_cast<int>(verts.size());
    const int q = static_cast<int>(rays.size());
    LinearProgram lp;
    lp.objective = VectorXr::Zero(p + q);
    VectorXr ones = VectorXr::Zero(p + q);
    for (int j = 0; j < p; ++j)
        ones[j] = 1;
    lp.eq_rows.emplace_back(ones, Rational(1));
    for (int k = 0; k < d; ++k) {
        VectorXr row(p + q);
        for (int j = 0; j < p; ++j)
            row[j] = verts[j][k];
        for (int i = 0; i < q; ++i)
            row[p + i] = rays[i][k];
        lp.eq_rows.emplace_back(row, target[k]);
    }
    for (int j = 0; j < p + q; ++j) {
        VectorXr row = VectorXr::Zero(p + q);
        row[j] = -1;
        lp.ineq_rows.emplace_back(row, Rational(0));
    }
    return solve_lp(lp).status == LPStatus::Optimal;
}

VectorXr homog(const Rational& lam, const VectorXr& x)
{
    VectorXr h(x.size() + 1);
    h[0] = lam;
    h.tail(x.size()) = x;
    return h;
}

} // namespace

bool operator==(const FGSet& a, const FGSet& b)
{
    if (a.dim != b.dim || a.vertices.size() != b.vertices.size() || a.rays.size() != b.rays.size())
        return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
        if (!vec_eq(a.vertices[i], b.vertices[i]))
            return false;
    for (std::size_t i = 0; i < a.rays.size(); ++i)
        if (!vec_eq(a.rays[i], b.rays[i]))
            return false;
    return true;
}

ConeGenerators dd_cone(int dim, const std::vector<VectorXr>& normals)
{
    if (dim < 1)
        throw InputError("dd_cone: dimension must be >= 1");

    std::vector<VectorXr> kept;
    for (const VectorXr& n : normals) {
        if (n.size() != dim)
            throw InputError("dd_cone: normal dimension mismatch");
        if (!is_zero(n))
            kept.push_back(n);
    }
    const std::size_t total = kept.size();

    std::vector<VectorXr> lines;
    for (int i = 0; i < dim; ++i) {
        VectorXr e = VectorXr::Zero(dim);
        e[i] = 1;
        lines.push_back(std::move(e));
    }
    std::vector<VectorXr> rays;
    std::vector<std::vector<char>> tight; // tight[r][k] per processed constraint

    for (std::size_t k = 0; k < total; ++k) {
        const VectorXr& a = kept[k];

        int l0 = -1;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (dot(a, lines[i]) != 0) {
                l0 = static_cast<int>(i);
                break;
            }
        }

        if (l0 >= 0) {
            // Convert the line into a ray pointing to the feasible side and
            // make every other generator null for this constraint.
            VectorXr pivot = lines[l0];
            Rational pa = dot(a, pivot);
            if (pa < 0) {
                pivot = -pivot;
                pa = -pa;
            }
            std::vector<VectorXr> new_lines;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (static_cast<int>(i) == l0)
                    continue;
                const Rational s = dot(a, lines[i]);
                new_lines.push_back(s == 0 ? lines[i] : VectorXr(lines[i] - (s / pa) * pivot));
            }
            lines = std::move(new_lines);
            for (std::size_t r = 0; r < rays.size(); ++r) {
                const Rational s = dot(a, rays[r]);
                if (s != 0)
                    rays[r] = scale_to_coprime(VectorXr(rays[r] - (s / pa) * pivot));
                tight[r][k] = 1; // now on the hyperplane
            }
            rays.push_back(scale_to_coprime(pivot));
            std::vector<char> t(total, 0);
            for (std::size_t i = 0; i < k; ++i)
                t[i] = 1; // previous constraints annihilate every line
            tight.push_back(std::move(t));
            continue;
        }

        // Halfspace step: all lines are null for a; split rays by sign.
        std::vector<Rational> sign(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            sign[r] = dot(a, rays[r]);
            if (sign[r] > 0)
                pos.push_back(r);
            else if (sign[r] < 0)
                neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (sign[r] == 0)
                    tight[r][k] = 1;
            continue;
        }

        // Fukuda-Prodon combinatorial adjacency over the processed constraints.
        const auto adjacent = [&](std::size_t p, std::size_t n) {
            std::vector<char> common(total, 0);
            for (std::size_t i = 0; i < k; ++i)
                common[i] = tight[p][i] && tight[n][i];
            for (std::size_t u = 0; u < rays.size(); ++u) {
                if (u == p || u == n)
                    continue;
                bool superset = true;
                for (std::size_t i = 0; i < k && superset; ++i)
                    if (common[i] && !tight[u][i])
                        superset = false;
                if (superset)
                    return false;
            }
            return true;
        };

        std::vector<VectorXr> new_rays;
        std::vector<std::vector<char>> new_tight;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sign[r] < 0)
                continue;
            if (sign[r] == 0)
                tight[r][k] = 1;
            new_rays.push_back(rays[r]);
            new_tight.push_back(tight[r]);
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                if (!adjacent(p, n))
                    continue;
                VectorXr combo = sign[p] * rays[n] - sign[n] * rays[p];
                std::vector<char> t(total, 0);
                for (std::size_t i = 0; i < k; ++i)
                    t[i] = tight[p][i] && tight[n][i];
                t[k] = 1;
                new_rays.push_back(scale_to_coprime(combo));
                new_tight.push_back(std::move(t));
            }
        }
        rays = std::move(new_rays);
        tight = std::move(new_tight);
    }

    ConeGenerators out;
    const LinealityBasis basis = lineality_from(lines, dim);
    out.lineality = basis.coprime_rows();
    for (const VectorXr& r : rays) {
        const VectorXr reduced = basis.reduce(r);
        ensure(!is_zero(reduced), "extreme ray collapsed into the lineality space");
        out.rays.push_back(scale_to_coprime(reduced));
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

FGSet canonicalize(const FGSet& s)
{
    validate_fgset(s, "canonicalize");
    if (s.empty())
        return FGSet{s.dim, {}, {}};

    std::vector<VectorXr> verts = s.vertices;
    sort_unique(verts);

    std::vector<VectorXr> rays;
    for (const VectorXr& r : s.rays)
        rays.push_back(scale_to_coprime(r));
    sort_unique(rays);

    // Split off the lineality space: rays whose negation is conically
    // representable span it.
    std::vector<VectorXr> two_sided, one_sided;
    for (const VectorXr& r : rays)
        (in_cone_lp(VectorXr(-r), rays) ? two_sided : one_sided).push_back(r);
    const LinealityBasis basis = lineality_from(two_sided, s.dim);

    // Unique representatives modulo the lineality space.
    for (VectorXr& v : verts)
        v = basis.reduce(v);
    sort_unique(verts);
    std::vector<VectorXr> reduced_rays;
    for (const VectorXr& r : one_sided) {
        const VectorXr red = basis.reduce(r);
        ensure(!is_zero(red), "one-sided ray inside the lineality space");
        reduced_rays.push_back(scale_to_coprime(red));
    }
    sort_unique(reduced_rays);

    // Drop non-extreme rays (the reduced cone is pointed, so extremality is
    // intrinsic and removal order does not matter).
    std::vector<VectorXr> minimal_rays;
    for (std::size_t i = 0; i < reduced_rays.size(); ++i) {
        std::vector<VectorXr> others;
        for (std::size_t j = 0; j < reduced_rays.size(); ++j)
            if (j != i)
                others.push_back(reduced_rays[j]);
        if (!in_cone_lp(reduced_rays[i], others))
            minimal_rays.push_back(reduced_rays[i]);
    }

    // Drop non-extreme vertices.
    std::vector<VectorXr> minimal_verts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::vector<VectorXr> others;
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (j != i)
                others.push_back(verts[j]);
        if (others.empty() || !in_hull_lp(verts[i], others, minimal_rays))
            minimal_verts.push_back(verts[i]);
    }

    FGSet out;
    out.dim = s.dim;
    out.vertices = std::move(minimal_verts);
    out.rays = std::move(minimal_rays);
    for (const VectorXr& l : basis.coprime_rows()) {
        out.rays.push_back(l);
        out.rays.push_back(VectorXr(-l));
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

std::pair<VectorXr, std::vector<VectorXr>> affine_hull(const FGSet& s)
{
    if (s.empty())
        throw EmptySetError("affine_hull: empty set");
    const HRep h = v_to_h(s);

    const int me = static_cast<int>(h.equalities.size());
    MatrixXr e(me, s.dim);
    VectorXr f(me);
    for (int i = 0; i < me; ++i) {
        e.row(i) = h.equalities[i].first.transpose();
        f[i] = h.equalities[i].second;
    }
    const auto point = solve_particular(e, f);
    ensure(point.has_value(), "affine hull equalities are inconsistent");
    std::vector<VectorXr> basis = nullspace_basis(e);
    for (VectorXr& b : basis)
        b = scale_to_coprime(b);
    return {*point, std::move(basis)};
}

HRep v_to_h(const FGSet& s)
{
    validate_fgset(s, "v_to_h");
    if (s.empty())
        throw EmptySetError("v_to_h: empty set");

    std::vector<VectorXr> gens;
    for (const VectorXr& v : s.vertices)
        gens.push_back(homog(1, v));
    for (const VectorXr& r : s.rays)
        gens.push_back(homog(0, r));

    const ConeGenerators polar = dd_cone(s.dim + 1, gens);

    HRep h;
    h.dim = s.dim;
    for (const VectorXr& l : polar.lineality) {
        const VectorXr normal = l.tail(s.dim);
        ensure(!is_zero(normal), "degenerate equality in the polar cone");
        h.equalities.emplace_back(normal, Rational(-l[0]));
    }
    for (const VectorXr& r : polar.rays) {
        const VectorXr normal = r.tail(s.dim);
        if (is_zero(normal))
            continue; // the homogenization artifact lambda >= 0
        h.inequalities.emplace_back(VectorXr(-normal), r[0]);
    }
    std::sort(h.inequalities.begin(), h.inequalities.end(),
              [](const auto& a, const auto& b) {
                  if (!vec_eq(a.first, b.first))
                      return lex_less(a.first, b.first);
                  return a.second < b.second;
              });
    return h;
}

FGSet h_to_v(const HRep& h)
{
    if (h.dim < 1)
        throw InputError("h_to_v: dimension must be >= 1");
    for (const auto& [e, f] : h.equalities)
        if (e.size() != h.dim)
            throw InputError("h_to_v: equality dimension mismatch");
    for (const auto& [a, b] : h.inequalities)
        if (a.size() != h.dim)
            throw InputError("h_to_v: inequality dimension mismatch");

    std::vector<VectorXr> rows;
    rows.push_back(homog(1, VectorXr::Zero(h.dim))); // lambda >= 0
    for (const auto& [e, f] : h.equalities) {
        rows.push_back(homog(-f, e));
        rows.push_back(homog(f, VectorXr(-e)));
    }
    for (const auto& [a, b] : h.inequalities)
        rows.push_back(homog(b, VectorXr(-a)));

    const ConeGenerators cone = dd_cone(h.dim + 1, rows);

    FGSet out;
    out.dim = h.dim;
    for (const VectorXr& r : cone.rays) {
        ensure(r[0] >= 0, "homogenization cone has a generator with negative scale");
        if (r[0] > 0)
            out.vertices.push_back(VectorXr(r.tail(h.dim) / r[0]));
        else
            out.rays.push_back(scale_to_coprime(VectorXr(r.tail(h.dim))));
    }
    if (out.vertices.empty())
        return FGSet{h.dim, {}, {}}; // infeasible
    for (const VectorXr& l : cone.lineality) {
        ensure(l[0] == 0, "lineality escapes the lambda >= 0 halfspace");
        const VectorXr dir = scale_to_coprime(VectorXr(l.tail(h.dim)));
        out.rays.push_back(dir);
        out.rays.push_back(VectorXr(-dir));
    }
    std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

FGSet intersect(const FGSet& s, const FGSet& t)
{
    if (s.dim != t.dim)
        throw InputError("intersect: dimension mismatch");
    if (s.empty() || t.empty())
        return FGSet{s.dim, {}, {}};
    HRep joint = v_to_h(s);
    const HRep other = v_to_h(t);
    joint.equalities.insert(joint.equalities.end(), other.equalities.begin(),
                            other.equalities.end());
    joint.inequalities.insert(joint.inequalities.end(), other.inequalities.begin(),
                              other.inequalities.end());
    return h_to_v(joint);
}

TaggedSet conv_union(const std::vector<FGSet>& sets, const std::vector<std::string>& tags)
{
    if (sets.size() != tags.size())
        throw InputError("conv_union: one tag per set required");
    if (sets.empty())
        throw EmptySetError("conv_union: no sets");
    const int dim = sets.front().dim;
    for (const FGSet& s : sets) {
        if (s.dim != dim)
            throw InputError("conv_union: dimension mismatch");
        if (s.empty())
            throw ContractViolation("conv_union: empty member set (caller must exclude)");
    }

    TaggedSet out;
    FGSet all;
    all.dim = dim;
    const auto seen = [&](const VectorXr& g, bool is_ray) {
        for (const TaggedGenerator& t : out.generators)
            if (t.is_ray == is_ray && vec_eq(t.gen, g))
                return true;
        return false;
    };
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (const VectorXr& v : sets[i].vertices) {
            if (!seen(v, false))
                out.generators.push_back({v, false, tags[i]});
            all.vertices.push_back(v);
        }
        for (const VectorXr& r : sets[i].rays) {
            if (!seen(r, true))
                out.generators.push_back({r, true, tags[i]});
            all.rays.push_back(r);
        }
    }
    out.hull = canonicalize(all);
    return out;
}

VectorXr ri_point(const FGSet& s)
{
    if (s.empty())
        throw EmptySetError("ri_point: empty set");
    const FGSet c = canonicalize(s);
    VectorXr p = VectorXr::Zero(c.dim);
    for (const VectorXr& v : c.vertices)
        p += v;
    p /= Rational(static_cast<int>(c.vertices.size()));
    for (const VectorXr& r : c.rays)
        p += r;
    return p;
}

bool contains(const HRep& h, const VectorXr& x, Containment mode)
{
    if (x.size() != h.dim)
        throw InputError("contains: point dimension mismatch");
    for (const auto& [e, f] : h.equalities)
        if (dot(e, x) != f)
            return false;
    for (const auto& [a, b] : h.inequalities) {
        const Rational lhs = dot(a, x);
        if (mode == Containment::Closure ? lhs > b : lhs >= b)
            return false;
    }
    return true;
}

bool contains(const FGSet& s, const VectorXr& x, Containment mode)
{
    if (s.empty())
        throw EmptySetError("contains: empty set");
    return contains(v_to_h(s), x, mode);
}

std::optional<FGSet> ri_intersection_closure(const FGSet& p, const FGSet& q)
{
    if (p.empty() || q.empty())
        throw EmptySetError("ri_intersection_closure: empty operand");
    if (p.dim != q.dim)
        throw InputError("ri_intersection_closure: dimension mismatch");
    FGSet z = intersect(p, q);
    if (z.empty())
        return std::nullopt;
    const VectorXr probe = ri_point(z);
    if (contains(p, probe, Containment::RelativeInterior) &&
        contains(q, probe, Containment::RelativeInterior))
        return z;
    return std::nullopt;
}

std::optional<Rational> max_step(const HRep& h, const VectorXr& x, const VectorXr& dir)
{
    if (x.size() != h.dim || dir.size() != h.dim)
        throw InputError("max_step: dimension mismatch");
    if (!contains(h, x, Containment::Closure))
        throw InputError("max_step: base point is infeasible");
    for (const auto& [e, f] : h.equalities)
        if (dot(e, dir) != 0)
            throw InputError("max_step: direction leaves the equality subspace");

    std::optional<Rational> best;
    for (const auto& [a, b] : h.inequalities) {
        const Rational slope = dot(a, dir);
        if (slope > 0) {
            const Rational t = (b - dot(a, x)) / slope;
            if (!best || t < *best)
                best = t;
        }
    }
    return best;
}

FGSet dual_cone(const FGSet& c)
{
    validate_fgset(c, "dual_cone");
    if (c.vertices.size() != 1 || !is_zero(c.vertices.front()))
        throw InputError("dual_cone: input is not a cone with apex at the origin");

    const ConeGenerators gens = dd_cone(c.dim, c.rays);
    FGSet out;
    out.dim = c.dim;
    out.vertices.push_back(VectorXr::Zero(c.dim));
    out.rays = gens.rays;
    for (const VectorXr& l : gens.lineality) {
        out.rays.push_back(l);
        out.rays.push_back(VectorXr(-l));
    }
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

FGSet make_cone(int dim, std::vector<VectorXr> rays)
{
    FGSet c;
    c.dim = dim;
    c.vertices.push_back(VectorXr::Zero(dim));
    c.rays = std::move(rays);
    return c;
}

void validate_fgset_input(const FGSet& s)
{
    validate_fgset(s, "set");
}

} // namespace msp
