#pragma once

#include "pmcat/relcat.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pmcat {

/// A shape of diagrams in a relative category: a tree of nodes and edges, some
/// edges forced into W, some nodes pinned to a fixed object.
struct DiagramShape
{
    struct Edge
    {
        int from = 0;
        int to = 0;
        bool weak = false;  // the edge must be a weak equivalence
    };

    int nodes = 0;
    std::vector<Edge> edges;
    std::vector<std::optional<ObjId>> pinned;  // empty or one entry per node
};

enum class ComponentRule {
    WeakEquivalences,  // every component of a diagram morphism lies in W
    AnyMorphism,       // components are arbitrary; only commutativity is required
};

/// The category of all diagrams of a given shape and their natural transformations.
/// Pinned nodes only admit identity components.
struct DiagramCategory
{
    DiagramShape shape;
    ComponentRule rule = ComponentRule::WeakEquivalences;
    CategoryPtr base;
    CategoryPtr cat;
    std::vector<std::vector<ObjId>> nodes;       // per object
    std::vector<std::vector<MorId>> edges;       // per object
    std::vector<std::vector<MorId>> components;  // per morphism

    [[nodiscard]] std::optional<ObjId> find_object(std::span<const ObjId> nodes, std::span<const MorId> edges) const;
    /// Node objects are read off the edges and pins; every other node must be covered by an edge.
    [[nodiscard]] std::optional<ObjId> find_object(std::span<const MorId> edges) const;
    [[nodiscard]] std::optional<MorId> find_morphism(ObjId source, ObjId target,
                                                     std::span<const MorId> components) const;

    TupleIndex object_index;
    TupleIndex morphism_index;
};

/// Enumerates every diagram of `shape` in `rc`. Objects are listed in the order of a
/// depth-first search over the edges; morphisms by source, target, then components
/// in hom-set order. For a one-node shape the names are those of rc itself.
[[nodiscard]] DiagramCategory diagram_category(const RelCategory& rc, const DiagramShape& shape,
                                               ComponentRule rule = ComponentRule::WeakEquivalences);

/// Chains c0 → c1 → ... → ck of arbitrary maps.
[[nodiscard]] DiagramShape chain_shape(int k);

/// c0 →b1 c1 →x c2 ←w c3 →y c4 →b2 c5 → ... →bk c(k+3), with x, w, y weak equivalences.
[[nodiscard]] DiagramShape zigzag_chain_shape(int k);

/// a ← X → Y ← b with both outer maps weak equivalences and a, b pinned.
/// Nodes: 0 = a, 1 = X, 2 = Y, 3 = b; edges: X→a, X→Y, b→Y.
[[nodiscard]] DiagramShape zigzag_shape(ObjId a, ObjId b);

}  // namespace pmcat
