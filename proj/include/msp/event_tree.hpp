/**
 * Finite filtered probability space as an event tree: atoms of F_n are the
 * depth-n nodes, each edge carries a strictly positive conditional
 * probability and siblings' probabilities sum to one. Instances attach one
 * finitely generated set per node; its relative interior is the node's
 * value set.
 *
 * File format (UTF-8 JSON, rationals as "p/q" strings or integer tokens):
 *
 *   {"dim": 1, "horizon": 1,
 *    "nodes": [{"id": "r", "time": 0, "parent": null, "prob": "1"},
 *              {"id": "ru", "time": 1, "parent": "r", "prob": "1/2"}, ...],
 *    "sets": {"r": {"vertices": [["1"]], "rays": []}, ...}}
 *
 * Node order in a file is irrelevant; serialization sorts by (time, id).
 */

#ifndef MSP_EVENT_TREE_HPP
#define MSP_EVENT_TREE_HPP

#include "msp/polyhedra.hpp"
#include "msp/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace msp {

struct Node
{
    std::string id;
    int time = 0;
    std::string parent; // empty for the root
    Rational prob = 1;  // conditional probability given the parent
};

struct EventTree
{
    int horizon = 0;
    std::vector<Node> nodes; // sorted by (time, id)
    std::map<std::string, std::vector<std::string>> children;

    const Node& node(const std::string& id) const;
    const std::string& root() const;
    bool is_leaf(const std::string& id) const;
    std::vector<std::string> atoms_at(int time) const;
    std::vector<std::string> leaves() const;
    /** Product of edge probabilities from the root; P of the atom. */
    Rational path_probability(const std::string& id) const;

    /** Structural validation; throws InputError with the offending node id. */
    void validate() const;

    private:
        mutable std::map<std::string, std::size_t> index_;
        void build_index() const;
};

struct Instance
{
    int dim = 0;
    EventTree tree;
    std::map<std::string, FGSet> sets; // cl G_n per node; the value set is its ri
};

/** Verdict of the backward recursion. */
struct Verdict
{
    bool solvable = true;
    int fail_time = -1;   // latest time with an empty W when unsolvable
    std::string fail_node; // earliest id at that time
};

/** Per-node W and Y sets plus the solvability verdict. */
struct BackwardState
{
    std::map<std::string, FGSet> W;
    std::map<std::string, TaggedSet> Y; // internal nodes with all children nonempty
    Verdict verdict;
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

/** Nodes at time n in id-sorted order. */
std::vector<std::string> atoms_at(const Instance& inst, int time);

/**
 * Support hull at an internal node: on a finite tree the conditional support
 * of the next-period sets at atom u is the union of the children's sets;
 * this returns its convex hull with child-tagged generators. Every child
 * must have a nonempty entry in w_next (emptiness propagation is the
 * caller's job).
 */
TaggedSet support_hull(const Instance& inst, const std::map<std::string, FGSet>& w_next,
                       const std::string& u);

} // namespace msp

#endif // MSP_EVENT_TREE_HPP
