#include "pmcat/diagrams.hpp"

namespace pmcat {

namespace {

std::vector<std::int32_t> object_key(std::span<const ObjId> nodes, std::span<const MorId> edges)
{
    std::vector<std::int32_t> key(nodes.begin(), nodes.end());
    key.insert(key.end(), edges.begin(), edges.end());
    return key;
}

std::vector<std::int32_t> morphism_key(ObjId source, ObjId target, std::span<const MorId> components)
{
    std::vector<std::int32_t> key{source, target};
    key.insert(key.end(), components.begin(), components.end());
    return key;
}

void check_shape(const DiagramShape& shape)
{
    if (shape.nodes <= 0) {
        throw PreconditionError("diagram shape needs at least one node");
    }
    if (!shape.pinned.empty() && shape.pinned.size() != static_cast<std::size_t>(shape.nodes)) {
        throw PreconditionError("diagram shape pins must list every node");
    }
    for (const auto& e : shape.edges) {
        if (e.from < 0 || e.to < 0 || e.from >= shape.nodes || e.to >= shape.nodes || e.from == e.to) {
            throw PreconditionError("diagram shape edge out of range");
        }
    }
}

std::optional<ObjId> pin_of(const DiagramShape& shape, int v)
{
    return shape.pinned.empty() ? std::nullopt : shape.pinned[static_cast<std::size_t>(v)];
}

class Enumerator
{
public:
    Enumerator(const RelCategory& rc, const DiagramShape& shape, ComponentRule rule)
        : rc_(rc)
        , c_(*rc.cat)
        , shape_(shape)
        , rule_(rule)
        , n_(static_cast<std::size_t>(shape.nodes))
    {
    }

    void objects(std::vector<std::vector<ObjId>>& nodes, std::vector<std::vector<MorId>>& edges)
    {
        std::vector<ObjId> assigned(n_, kNoObject);
        for (int v = 0; v < shape_.nodes; ++v) {
            if (auto p = pin_of(shape_, v)) {
                assigned[static_cast<std::size_t>(v)] = *p;
            }
        }
        std::vector<MorId> chosen(shape_.edges.size(), kNoMorphism);
        edge_step(0, assigned, chosen, nodes, edges);
    }

    /// Components ψ with ψ_to ∘ S(e) = T(e) ∘ ψ_from for every edge e.
    void morphisms(std::span<const ObjId> s_nodes, std::span<const MorId> s_edges, std::span<const ObjId> t_nodes,
                   std::span<const MorId> t_edges, std::vector<std::vector<MorId>>& out)
    {
        for (std::size_t v = 0; v < n_; ++v) {
            if (c_.hom(s_nodes[v], t_nodes[v]).empty()) {
                return;
            }
        }
        std::vector<MorId> psi(n_, kNoMorphism);
        node_step(0, s_nodes, s_edges, t_nodes, t_edges, psi, out);
    }

private:
    bool allowed(MorId f, bool weak) const { return !weak || rc_.is_weq(f); }

    void edge_step(std::size_t e, std::vector<ObjId>& assigned, std::vector<MorId>& chosen,
                   std::vector<std::vector<ObjId>>& nodes, std::vector<std::vector<MorId>>& edges)
    {
        if (e == shape_.edges.size()) {
            free_step(0, assigned, chosen, nodes, edges);
            return;
        }
        const auto& edge = shape_.edges[e];
        const auto from = static_cast<std::size_t>(edge.from);
        const auto to = static_cast<std::size_t>(edge.to);
        auto take = [&](MorId f) {
            if (!allowed(f, edge.weak)) {
                return;
            }
            const ObjId old_from = assigned[from];
            const ObjId old_to = assigned[to];
            assigned[from] = c_.source(f);
            assigned[to] = c_.target(f);
            chosen[e] = f;
            edge_step(e + 1, assigned, chosen, nodes, edges);
            assigned[from] = old_from;
            assigned[to] = old_to;
        };
        if (assigned[from] != kNoObject && assigned[to] != kNoObject) {
            for (MorId f : c_.hom(assigned[from], assigned[to])) {
                take(f);
            }
        } else if (assigned[from] != kNoObject) {
            for (MorId f : c_.out(assigned[from])) {
                take(f);
            }
        } else if (assigned[to] != kNoObject) {
            for (MorId f : c_.in(assigned[to])) {
                take(f);
            }
        } else {
            for (std::size_t f = 0; f < c_.morphism_count(); ++f) {
                take(static_cast<MorId>(f));
            }
        }
    }

    void free_step(std::size_t v, std::vector<ObjId>& assigned, const std::vector<MorId>& chosen,
                   std::vector<std::vector<ObjId>>& nodes, std::vector<std::vector<MorId>>& edges)
    {
        if (v == n_) {
            nodes.push_back(assigned);
            edges.push_back(chosen);
            return;
        }
        if (assigned[v] != kNoObject) {
            free_step(v + 1, assigned, chosen, nodes, edges);
            return;
        }
        for (std::size_t o = 0; o < c_.object_count(); ++o) {
            assigned[v] = static_cast<ObjId>(o);
            free_step(v + 1, assigned, chosen, nodes, edges);
        }
        assigned[v] = kNoObject;
    }

    void node_step(std::size_t v, std::span<const ObjId> s_nodes, std::span<const MorId> s_edges,
                   std::span<const ObjId> t_nodes, std::span<const MorId> t_edges, std::vector<MorId>& psi,
                   std::vector<std::vector<MorId>>& out)
    {
        if (v == n_) {
            out.push_back(psi);
            return;
        }
        auto try_component = [&](MorId f) {
            psi[v] = f;
            for (std::size_t e = 0; e < shape_.edges.size(); ++e) {
                const auto from = static_cast<std::size_t>(shape_.edges[e].from);
                const auto to = static_cast<std::size_t>(shape_.edges[e].to);
                if (std::max(from, to) != v) {
                    continue;
                }
                if (c_.compose(s_edges[e], psi[to]) != c_.compose(psi[from], t_edges[e])) {
                    return;
                }
            }
            node_step(v + 1, s_nodes, s_edges, t_nodes, t_edges, psi, out);
        };
        if (pin_of(shape_, static_cast<int>(v))) {
            if (s_nodes[v] == t_nodes[v]) {
                try_component(c_.identity(s_nodes[v]));
            }
        } else {
            for (MorId f : c_.hom(s_nodes[v], t_nodes[v])) {
                if (rule_ == ComponentRule::AnyMorphism || rc_.is_weq(f)) {
                    try_component(f);
                }
            }
        }
        psi[v] = kNoMorphism;
    }

    const RelCategory& rc_;
    const FinCategory& c_;
    const DiagramShape& shape_;
    ComponentRule rule_;
    std::size_t n_;
};

}  // namespace

DiagramCategory diagram_category(const RelCategory& rc, const DiagramShape& shape, ComponentRule rule)
{
    check_shape(shape);
    const FinCategory& c = *rc.cat;
    DiagramCategory d;
    d.shape = shape;
    d.rule = rule;
    d.base = rc.cat;

    Enumerator en(rc, shape, rule);
    en.objects(d.nodes, d.edges);
    const bool single = shape.nodes == 1 && shape.edges.empty();

    std::vector<std::string> object_names;
    object_names.reserve(d.nodes.size());
    for (std::size_t o = 0; o < d.nodes.size(); ++o) {
        d.object_index.emplace(object_key(d.nodes[o], d.edges[o]), static_cast<ObjId>(o));
        if (single) {
            object_names.push_back(c.object_name(d.nodes[o][0]));
        } else if (shape.edges.empty()) {
            std::string s = "(";
            for (std::size_t v = 0; v < d.nodes[o].size(); ++v) {
                s += (v > 0 ? "," : "") + c.object_name(d.nodes[o][v]);
            }
            object_names.push_back(s + ")");
        } else {
            object_names.push_back(tuple_name(c, d.edges[o]));
        }
    }

    std::vector<FinCategory::Arrow> arrows;
    std::vector<MorId> identities(d.nodes.size(), kNoMorphism);
    std::vector<std::vector<MorId>> found;
    for (std::size_t s = 0; s < d.nodes.size(); ++s) {
        for (std::size_t t = 0; t < d.nodes.size(); ++t) {
            found.clear();
            en.morphisms(d.nodes[s], d.edges[s], d.nodes[t], d.edges[t], found);
            for (auto& psi : found) {
                const auto id = static_cast<MorId>(arrows.size());
                d.morphism_index.emplace(morphism_key(static_cast<ObjId>(s), static_cast<ObjId>(t), psi), id);
                bool is_id = s == t;
                for (std::size_t v = 0; is_id && v < psi.size(); ++v) {
                    is_id = psi[v] == c.identity(d.nodes[s][v]);
                }
                if (is_id) {
                    identities[s] = id;
                }
                arrows.push_back({single ? c.name(psi[0]) : tuple_name(c, psi), static_cast<ObjId>(s),
                                  static_cast<ObjId>(t)});
                d.components.push_back(std::move(psi));
            }
        }
    }

    std::vector<ObjId> sources, targets;
    for (const auto& a : arrows) {
        sources.push_back(a.source);
        targets.push_back(a.target);
    }
    std::vector<MorId> composite(static_cast<std::size_t>(shape.nodes));
    d.cat = share(FinCategory::assemble(std::move(object_names), std::move(arrows), std::move(identities),
                                        [&](MorId f, MorId g) {
                                            const auto& pf = d.components[static_cast<std::size_t>(f)];
                                            const auto& pg = d.components[static_cast<std::size_t>(g)];
                                            for (std::size_t v = 0; v < composite.size(); ++v) {
                                                composite[v] = c.compose(pf[v], pg[v]);
                                            }
                                            auto it = d.morphism_index.find(morphism_key(
                                                sources[static_cast<std::size_t>(f)], targets[static_cast<std::size_t>(g)], composite));
                                            return it == d.morphism_index.end() ? kNoMorphism : it->second;
                                        }));
    return d;
}

std::optional<ObjId> DiagramCategory::find_object(std::span<const ObjId> node_objects,
                                                  std::span<const MorId> edge_morphisms) const
{
    auto it = object_index.find(object_key(node_objects, edge_morphisms));
    if (it == object_index.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<ObjId> DiagramCategory::find_object(std::span<const MorId> edge_morphisms) const
{
    if (edge_morphisms.size() != shape.edges.size()) {
        return std::nullopt;
    }
    std::vector<ObjId> node_objects(static_cast<std::size_t>(shape.nodes), kNoObject);
    for (int v = 0; v < shape.nodes; ++v) {
        if (auto p = pin_of(shape, v)) {
            node_objects[static_cast<std::size_t>(v)] = *p;
        }
    }
    for (std::size_t e = 0; e < shape.edges.size(); ++e) {
        const MorId f = edge_morphisms[e];
        const auto from = static_cast<std::size_t>(shape.edges[e].from);
        const auto to = static_cast<std::size_t>(shape.edges[e].to);
        if ((node_objects[from] != kNoObject && node_objects[from] != base->source(f)) ||
            (node_objects[to] != kNoObject && node_objects[to] != base->target(f))) {
            return std::nullopt;
        }
        node_objects[from] = base->source(f);
        node_objects[to] = base->target(f);
    }
    for (ObjId o : node_objects) {
        if (o == kNoObject) {
            throw PreconditionError("diagram node not determined by its edges");
        }
    }
    return find_object(node_objects, edge_morphisms);
}

std::optional<MorId> DiagramCategory::find_morphism(ObjId source, ObjId target,
                                                    std::span<const MorId> component_morphisms) const
{
    auto it = morphism_index.find(morphism_key(source, target, component_morphisms));
    if (it == morphism_index.end()) {
        return std::nullopt;
    }
    return it->second;
}

DiagramShape chain_shape(int k)
{
    if (k < 0) {
        throw PreconditionError("chain length must be non-negative");
    }
    DiagramShape shape;
    shape.nodes = k + 1;
    for (int i = 0; i < k; ++i) {
        shape.edges.push_back({i, i + 1, false});
    }
    return shape;
}

DiagramShape zigzag_chain_shape(int k)
{
    if (k < 2) {
        throw PreconditionError("zigzag chains need k >= 2");
    }
    DiagramShape shape;
    shape.nodes = k + 4;
    shape.edges = {{0, 1, false}, {1, 2, true}, {3, 2, true}, {3, 4, true}};
    for (int i = 4; i < k + 3; ++i) {
        shape.edges.push_back({i, i + 1, false});
    }
    return shape;
}

DiagramShape zigzag_shape(ObjId a, ObjId b)
{
    DiagramShape shape;
    shape.nodes = 4;
    shape.edges = {{1, 0, true}, {1, 2, false}, {3, 2, true}};
    shape.pinned = {a, std::nullopt, std::nullopt, b};
    return shape;
}

}  // namespace pmcat
