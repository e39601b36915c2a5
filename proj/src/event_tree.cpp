#include "msp/event_tree.hpp"

#include <json.hpp>

#include <algorithm>

namespace msp {

using json = nlohmann::ordered_json;

namespace {

Rational rational_token(const json& j, const std::string& where)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_number_unsigned())
        return Rational(j.get<unsigned long long>());
    throw InputError(where + ": expected a rational string \"p/q\" or an integer");
}

VectorXr vector_token(const json& j, int dim, const std::string& where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw InputError(where + ": expected an array of " + std::to_string(dim) + " rationals");
    VectorXr v(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = rational_token(j[i], where);
    return v;
}

json vector_json(const VectorXr& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(to_string(v[i]));
    return a;
}

json fgset_json(const FGSet& s)
{
    json o = json::object();
    json verts = json::array();
    for (const VectorXr& v : s.vertices)
        verts.push_back(vector_json(v));
    json rays = json::array();
    for (const VectorXr& r : s.rays)
        rays.push_back(vector_json(r));
    o["vertices"] = std::move(verts);
    o["rays"] = std::move(rays);
    return o;
}

} // namespace

void EventTree::build_index() const
{
    if (index_.size() == nodes.size() && !nodes.empty())
        return;
    index_.clear();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        index_[nodes[i].id] = i;
}

const Node& EventTree::node(const std::string& id) const
{
    build_index();
    const auto it = index_.find(id);
    if (it == index_.end())
        throw InputError("unknown node '" + id + "'");
    return nodes[it->second];
}

const std::string& EventTree::root() const
{
    for (const Node& n : nodes)
        if (n.parent.empty())
            return n.id;
    throw InputError("tree has no root");
}

bool EventTree::is_leaf(const std::string& id) const
{
    const auto it = children.find(id);
    return it == children.end() || it->second.empty();
}

std::vector<std::string> EventTree::atoms_at(int time) const
{
    if (time < 0 || time > horizon)
        throw InputError("time " + std::to_string(time) + " out of range [0, " +
                         std::to_string(horizon) + "]");
    std::vector<std::string> out;
    for (const Node& n : nodes)
        if (n.time == time)
            out.push_back(n.id);
    return out; // nodes are (time, id)-sorted
}

std::vector<std::string> EventTree::leaves() const
{
    return atoms_at(horizon);
}

Rational EventTree::path_probability(const std::string& id) const
{
    Rational p = 1;
    const Node* n = &node(id);
    while (!n->parent.empty()) {
        p *= n->prob;
        n = &node(n->parent);
    }
    return p;
}

void EventTree::validate() const
{
    if (horizon < 0)
        throw InputError("horizon must be >= 0");
    if (nodes.empty())
        throw InputError("tree has no nodes");

    std::map<std::string, const Node*> by_id;
    for (const Node& n : nodes) {
        if (n.id.empty())
            throw InputError("node with empty id");
        if (!by_id.emplace(n.id, &n).second)
            throw InputError("node '" + n.id + "': duplicate id");
    }

    int roots = 0;
    for (const Node& n : nodes) {
        if (n.parent.empty()) {
            ++roots;
            if (n.time != 0)
                throw InputError("node '" + n.id + "': root must be at time 0");
            if (n.prob != 1)
                throw InputError("node '" + n.id + "': root probability must be 1");
        } else {
            const auto it = by_id.find(n.parent);
            if (it == by_id.end())
                throw InputError("node '" + n.id + "': unknown parent '" + n.parent + "'");
            if (n.time != it->second->time + 1)
                throw InputError("node '" + n.id + "': time " + std::to_string(n.time) +
                                 " is not parent time + 1");
            if (n.prob <= 0)
                throw InputError("node '" + n.id + "': nonpositive probability " +
                                 to_string(n.prob));
        }
        if (n.time < 0 || n.time > horizon)
            throw InputError("node '" + n.id + "': time out of range");
    }
    if (roots != 1)
        throw InputError("tree must have exactly one root, found " + std::to_string(roots));

    for (const Node& n : nodes) {
        const auto it = children.find(n.id);
        const bool leaf = (it == children.end() || it->second.empty());
        if (leaf) {
            if (n.time != horizon)
                throw InputError("node '" + n.id + "': leaf at time " + std::to_string(n.time) +
                                 " before the horizon");
        } else {
            Rational sum = 0;
            for (const std::string& c : it->second)
                sum += node(c).prob;
            if (sum != 1)
                throw InputError("node '" + n.id + "': children probabilities sum " +
                                 to_string(sum) + " != 1");
        }
    }
}

Instance parse_instance(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw InputError("instance must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw InputError("missing integer field 'dim'");
    if (!doc.contains("horizon") || !doc["horizon"].is_number_integer())
        throw InputError("missing integer field 'horizon'");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw InputError("missing array field 'nodes'");
    if (!doc.contains("sets") || !doc["sets"].is_object())
        throw InputError("missing object field 'sets'");

    Instance inst;
    inst.dim = doc["dim"].get<int>();
    if (inst.dim < 1)
        throw InputError("dim must be >= 1");
    inst.tree.horizon = doc["horizon"].get<int>();

    for (const json& jn : doc["nodes"]) {
        if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string())
            throw InputError("every node needs a string 'id'");
        Node n;
        n.id = jn["id"].get<std::string>();
        if (!jn.contains("time") || !jn["time"].is_number_integer())
            throw InputError("node '" + n.id + "': missing integer 'time'");
        n.time = jn["time"].get<int>();
        if (jn.contains("parent") && !jn["parent"].is_null()) {
            if (!jn["parent"].is_string())
                throw InputError("node '" + n.id + "': 'parent' must be a string or null");
            n.parent = jn["parent"].get<std::string>();
        }
        if (jn.contains("prob") && !jn["prob"].is_null())
            n.prob = rational_token(jn["prob"], "node '" + n.id + "' prob");
        else if (!n.parent.empty())
            throw InputError("node '" + n.id + "': missing 'prob'");
        inst.tree.nodes.push_back(std::move(n));
    }

    std::sort(inst.tree.nodes.begin(), inst.tree.nodes.end(), [](const Node& a, const Node& b) {
        return a.time != b.time ? a.time < b.time : a.id < b.id;
    });
    for (const Node& n : inst.tree.nodes) {
        inst.tree.children.emplace(n.id, std::vector<std::string>());
        if (!n.parent.empty())
            inst.tree.children[n.parent].push_back(n.id);
    }
    for (auto& [id, kids] : inst.tree.children)
        std::sort(kids.begin(), kids.end());

    inst.tree.validate();

    for (const auto& [id, js] : doc["sets"].items()) {
        inst.tree.node(id); // rejects sets for unknown nodes
        if (!js.is_object() || !js.contains("vertices") || !js["vertices"].is_array())
            throw InputError("node '" + id + "': set needs a 'vertices' array");
        FGSet s;
        s.dim = inst.dim;
        for (const json& jv : js["vertices"])
            s.vertices.push_back(vector_token(jv, inst.dim, "node '" + id + "' vertex"));
        if (js.contains("rays")) {
            if (!js["rays"].is_array())
                throw InputError("node '" + id + "': 'rays' must be an array");
            for (const json& jr : js["rays"])
                s.rays.push_back(vector_token(jr, inst.dim, "node '" + id + "' ray"));
        }
        if (s.vertices.empty())
            throw InputError("node '" + id + "': empty generator list");
        try {
            validate_fgset_input(s);
        } catch (const InputError& e) {
            throw InputError("node '" + id + "': " + e.what());
        }
        inst.sets.emplace(id, std::move(s));
    }
    for (const Node& n : inst.tree.nodes)
        if (!inst.sets.count(n.id))
            throw InputError("node '" + n.id + "': missing set");

    return inst;
}

std::string serialize_instance(const Instance& inst)
{
    json doc = json::object();
    doc["dim"] = inst.dim;
    doc["horizon"] = inst.tree.horizon;
    json nodes = json::array();
    for (const Node& n : inst.tree.nodes) {
        json jn = json::object();
        jn["id"] = n.id;
        jn["time"] = n.time;
        if (n.parent.empty())
            jn["parent"] = nullptr;
        else
            jn["parent"] = n.parent;
        jn["prob"] = to_string(n.prob);
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(nodes);
    json sets = json::object();
    for (const Node& n : inst.tree.nodes)
        sets[n.id] = fgset_json(inst.sets.at(n.id));
    doc["sets"] = std::move(sets);
    return doc.dump(2) + "\n";
}

std::vector<std::string> atoms_at(const Instance& inst, int time)
{
    return inst.tree.atoms_at(time);
}

TaggedSet support_hull(const Instance& inst, const std::map<std::string, FGSet>& w_next,
                       const std::string& u)
{
    const auto it = inst.tree.children.find(u);
    if (it == inst.tree.children.end() || it->second.empty())
        throw InputError("support_hull: node '" + u + "' has no children");
    std::vector<FGSet> sets;
    std::vector<std::string> tags;
    for (const std::string& c : it->second) {
        const auto ws = w_next.find(c);
        if (ws == w_next.end() || ws->second.empty())
            throw ContractViolation("support_hull: child '" + c +
                                    "' is empty; caller must propagate emptiness");
        sets.push_back(ws->second);
        tags.push_back(c);
    }
    return conv_union(sets, tags);
}

} // namespace msp
