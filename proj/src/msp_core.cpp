#include "msp/msp_core.hpp"

#include "msp/exact_lp.hpp"

#include <algorithm>
#include <thread>

namespace msp {

namespace {

void ensure(bool cond, const std::string& what)
{
    if (!cond)
        throw ContractViolation("msp_core: " + what);
}

struct NodeResult
{
    FGSet w;
    bool has_y = false;
    TaggedSet y;
};

NodeResult process_node(const Instance& inst, const std::map<std::string, FGSet>& w,
                        const std::string& u)
{
    NodeResult res;
    const auto& kids = inst.tree.children.at(u);
    for (const std::string& c : kids) {
        if (w.at(c).empty()) {
            res.w = FGSet{inst.dim, {}, {}}; // emptiness propagates
            return res;
        }
    }
    res.y = support_hull(inst, w, u);
    res.has_y = true;
    const auto wu = ri_intersection_closure(inst.sets.at(u), res.y.hull);
    res.w = wu ? *wu : FGSet{inst.dim, {}, {}};
    return res;
}

// Run fn(i) for i in [0, n), possibly on several threads. Work items are
// independent; each writes only its own slot, so results do not depend on
// the schedule.
void parallel_for(int n, int threads, const std::function<void(int)>& fn)
{
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += workers)
                fn(i);
        });
    }
    for (std::thread& th : pool)
        th.join();
}

} // namespace

BackwardState backward_pass(const Instance& inst, int threads)
{
    BackwardState state;

    for (const std::string& leaf : inst.tree.leaves())
        state.W.emplace(leaf, canonicalize(inst.sets.at(leaf)));

    for (int time = inst.tree.horizon - 1; time >= 0; --time) {
        const std::vector<std::string> level = inst.tree.atoms_at(time);
        std::vector<NodeResult> results(level.size());
        parallel_for(static_cast<int>(level.size()), threads,
                     [&](int i) { results[i] = process_node(inst, state.W, level[i]); });
        for (std::size_t i = 0; i < level.size(); ++i) {
            state.W.emplace(level[i], std::move(results[i].w));
            if (results[i].has_y)
                state.Y.emplace(level[i], std::move(results[i].y));
        }
    }

    state.verdict.solvable = true;
    for (int time = inst.tree.horizon; time >= 0 && state.verdict.solvable; --time) {
        for (const std::string& id : inst.tree.atoms_at(time)) {
            if (state.W.at(id).empty()) {
                state.verdict = Verdict{false, time, id};
                break; // atoms are id-sorted: first hit is the earliest id
            }
        }
    }
    return state;
}

std::vector<std::pair<Rational, VectorXr>>
one_step_decompose(const VectorXr& x, const std::vector<std::pair<std::string, FGSet>>& children,
                   const TaggedSet& y)
{
    ensure(!children.empty(), "one_step_decompose: no children");
    const int m = static_cast<int>(children.size());

    if (!contains(y.hull, x, Containment::RelativeInterior))
        throw ContractViolation("one_step_decompose: x is not in ri Y");

    if (m == 1) {
        // The support hull of a single atom is the child's own set.
        ensure(contains(children.front().second, x, Containment::RelativeInterior),
               "single-child point left the child's relative interior");
        return {{Rational(1), x}};
    }

    std::vector<VectorXr> centers;
    centers.reserve(m);
    VectorXr barycenter = VectorXr::Zero(x.size());
    for (const auto& [tag, w] : children) {
        centers.push_back(ri_point(w));
        barycenter += centers.back();
    }
    barycenter /= Rational(m);

    std::vector<std::pair<Rational, VectorXr>> out(m);

    if (vec_eq(x, barycenter)) {
        for (int j = 0; j < m; ++j)
            out[j] = {Rational(1, m), centers[j]};
        return out;
    }

    // Push past x away from the barycenter, staying strictly inside Y:
    // x' = x + t (x - b) with t = t*/2 (or 1 when the direction recedes).
    const VectorXr dir = x - barycenter;
    const HRep hy = v_to_h(y.hull);
    const auto tmax = max_step(hy, x, dir);
    ensure(!tmax || *tmax > 0, "zero step from a relative-interior point");
    const Rational t = tmax ? Rational(*tmax / 2) : Rational(1);

    const VectorXr pushed = x + t * dir;

    std::vector<VectorXr> verts, rays;
    std::vector<int> vert_child(y.generators.size(), -1), ray_child(y.generators.size(), -1);
    std::map<std::string, int> child_index;
    for (int j = 0; j < m; ++j)
        child_index[children[j].first] = j;
    std::vector<int> vmap, rmap;
    for (const TaggedGenerator& g : y.generators) {
        const auto it = child_index.find(g.tag);
        ensure(it != child_index.end(), "tagged generator from an unknown child");
        if (g.is_ray) {
            rays.push_back(g.gen);
            rmap.push_back(it->second);
        } else {
            verts.push_back(g.gen);
            vmap.push_back(it->second);
        }
    }

    const HullDecomposition dec = represent_in_hull(pushed, verts, rays);

    // x = (x' + t b)/(1+t); child j receives its vertex and ray mass from x'
    // plus a t/m share of its own interior point c_j.
    const Rational share = t / m;
    const Rational denom = 1 + t;
    std::vector<Rational> mass(m, Rational(0));
    std::vector<VectorXr> moment(m, VectorXr::Zero(x.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) {
        mass[vmap[i]] += dec.vertex_weights[i];
        moment[vmap[i]] += dec.vertex_weights[i] * verts[i];
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        moment[rmap[i]] += dec.ray_weights[i] * rays[i];

    Rational qsum = 0;
    VectorXr recon = VectorXr::Zero(x.size());
    for (int j = 0; j < m; ++j) {
        const Rational qj = (mass[j] + share) / denom;
        ensure(qj > 0, "child weight must be positive");
        const VectorXr xj = (moment[j] + share * centers[j]) / (qj * denom);
        ensure(contains(children[j].second, xj, Containment::RelativeInterior),
               "child point left the child's relative interior");
        out[j] = {qj, xj};
        qsum += qj;
        recon += qj * xj;
    }
    ensure(qsum == 1, "child weights must sum to one");
    ensure(vec_eq(recon, x), "decomposition does not reconstruct x");
    return out;
}

Solution forward_pass(const Instance& inst, const BackwardState& state)
{
    if (!state.verdict.solvable)
        throw ContractViolation("forward_pass: instance is unsolvable");

    Solution sol;
    sol.x.emplace(inst.tree.root(), ri_point(state.W.at(inst.tree.root())));

    for (const Node& n : inst.tree.nodes) {
        if (inst.tree.is_leaf(n.id))
            continue;
        const auto& kids = inst.tree.children.at(n.id);
        std::vector<std::pair<std::string, FGSet>> children;
        children.reserve(kids.size());
        for (const std::string& c : kids)
            children.emplace_back(c, state.W.at(c));
        const auto parts = one_step_decompose(sol.x.at(n.id), children, state.Y.at(n.id));
        for (std::size_t j = 0; j < kids.size(); ++j) {
            sol.q.emplace(kids[j], parts[j].first);
            sol.x.emplace(kids[j], parts[j].second);
        }
    }
    return sol;
}

MeasureReport assemble_measure(const Instance& inst, const Solution& sol)
{
    MeasureReport rep;
    rep.all_positive = true;

    rep.z.emplace(inst.tree.root(), Rational(1));
    for (const Node& n : inst.tree.nodes) {
        if (n.parent.empty())
            continue;
        const Rational q = sol.q.at(n.id);
        const Rational g = q / n.prob;
        rep.gamma.emplace(n.id, g);
        rep.z.emplace(n.id, Rational(rep.z.at(n.parent) * g));
        if (q <= 0)
            rep.all_positive = false;
    }

    for (const std::string& leaf : inst.tree.leaves()) {
        Rational q = 1;
        const Node* n = &inst.tree.node(leaf);
        while (!n->parent.empty()) {
            q *= sol.q.at(n->id);
            n = &inst.tree.node(n->parent);
        }
        rep.leaf_q.emplace(leaf, q);
        rep.total_q += q;
        rep.expected_z += inst.tree.path_probability(leaf) * rep.z.at(leaf);
        if (q <= 0)
            rep.all_positive = false;
    }
    return rep;
}

std::vector<VerificationFailure> verify_solution(const Instance& inst, const Solution& sol)
{
    std::vector<VerificationFailure> failures;

    for (const Node& n : inst.tree.nodes) {
        const auto it = sol.x.find(n.id);
        if (it == sol.x.end()) {
            failures.push_back({n.id, "structure", "missing selector value"});
            continue;
        }
        if (it->second.size() != inst.dim) {
            failures.push_back({n.id, "structure", "selector has the wrong dimension"});
            continue;
        }
        if (!contains(inst.sets.at(n.id), it->second, Containment::RelativeInterior))
            failures.push_back({n.id, "selector",
                                "x = " + to_string(it->second) +
                                    " is not in the relative interior of the node set"});
    }

    for (const Node& n : inst.tree.nodes) {
        if (inst.tree.is_leaf(n.id))
            continue;
        const auto& kids = inst.tree.children.at(n.id);
        bool structurally_ok = sol.x.count(n.id) && sol.x.at(n.id).size() == inst.dim;
        Rational qsum = 0;
        for (const std::string& c : kids) {
            const auto qit = sol.q.find(c);
            if (qit == sol.q.end()) {
                failures.push_back({c, "structure", "missing edge weight"});
                structurally_ok = false;
                continue;
            }
            if (qit->second <= 0)
                failures.push_back({c, "edge-positivity",
                                    "q = " + to_string(qit->second) + " is not positive"});
            qsum += qit->second;
            if (!sol.x.count(c) || sol.x.at(c).size() != inst.dim)
                structurally_ok = false;
        }
        if (qsum != 1)
            failures.push_back({n.id, "edge-sum", "q sums " + to_string(qsum) + " != 1"});
        if (!structurally_ok)
            continue;
        VectorXr mix = VectorXr::Zero(inst.dim);
        for (const std::string& c : kids)
            mix += sol.q.at(c) * sol.x.at(c);
        if (!vec_eq(mix, sol.x.at(n.id)))
            failures.push_back({n.id, "martingale",
                                "sum q x(child) = " + to_string(mix) + " != x(parent) = " +
                                    to_string(sol.x.at(n.id))});
    }
    return failures;
}

} // namespace msp
