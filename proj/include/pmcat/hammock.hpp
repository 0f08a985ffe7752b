#pragma once

#include "pmcat/diagrams.hpp"
#include "pmcat/pmc.hpp"
#include "pmcat/sset.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmcat {

/// Which maps count as morphisms between zigzags with fixed endpoints.
enum class ZigzagConvention {
    WeakEquivalences,  // both components in W (default)
    CommutingMaps,     // any commuting components
};

[[nodiscard]] std::string_view to_string(ZigzagConvention convention);

/// A ←left X →middle Y ←right B with left and right in W.
struct Zigzag
{
    ObjId source = kNoObject;  // A
    ObjId target = kNoObject;  // B
    ObjId left_object = kNoObject;
    ObjId right_object = kNoObject;
    MorId left = kNoMorphism;
    MorId middle = kNoMorphism;
    MorId right = kNoMorphism;

    friend bool operator==(const Zigzag&, const Zigzag&) = default;
};

[[nodiscard]] Zigzag identity_zigzag(const FinCategory& cat, ObjId a);
/// The zigzag (id, f, id) representing a morphism f.
[[nodiscard]] Zigzag zigzag_of(const FinCategory& cat, MorId f);
[[nodiscard]] std::string zigzag_name(const FinCategory& cat, const Zigzag& z);

struct ZigzagCategory
{
    ObjId source = kNoObject;
    ObjId target = kNoObject;
    ZigzagConvention convention = ZigzagConvention::WeakEquivalences;
    DiagramCategory diagrams;

    [[nodiscard]] const FinCategory& cat() const { return *diagrams.cat; }
    [[nodiscard]] std::size_t size() const { return diagrams.nodes.size(); }
    [[nodiscard]] Zigzag zigzag(ObjId object) const;
    [[nodiscard]] std::optional<ObjId> find(const Zigzag& z) const;
};

[[nodiscard]] ZigzagCategory zigzag_category(const RelCategory& rc, ObjId a, ObjId b,
                                             ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

/// Nerve of the zigzag category from a to b.
[[nodiscard]] TruncatedSimplicialSet mapping_space(const RelCategory& rc, ObjId a, ObjId b, int n_max,
                                                   ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

/// Composite of first: A ⇝ B and second: B ⇝ C. The backward pair through B is merged
/// into w = right(first) ∘ left(second), factored as w = v u, and the middle maps are
/// moved across by pulling back along v and pushing out along u.
/// Throws CalculusViolation when a factorization, pullback or pushout is missing.
[[nodiscard]] Zigzag ho_compose(const PartialModelStructure& pms, const Zigzag& first, const Zigzag& second);

/// hom(a, b) = π0 of the zigzag category; composition through ho_compose on representatives.
struct HoCategory
{
    std::size_t objects = 0;
    ZigzagConvention convention = ZigzagConvention::WeakEquivalences;
    std::vector<ZigzagCategory> homs;                    // [a * objects + b]
    std::vector<std::vector<std::int32_t>> zigzag_class;  // per hom, per zigzag
    std::vector<std::vector<Zigzag>> representatives;    // per hom, per class
    std::vector<std::int32_t> identities;                // class of the identity zigzag
    std::vector<std::vector<std::int32_t>> composition;  // [(a n + b) n + c][i * |hom(b, c)| + j]
    std::vector<std::string> issues;                     // law or well-definedness failures

    [[nodiscard]] std::size_t index(ObjId a, ObjId b) const
    {
        return static_cast<std::size_t>(a) * objects + static_cast<std::size_t>(b);
    }
    [[nodiscard]] std::size_t hom_size(ObjId a, ObjId b) const { return representatives[index(a, b)].size(); }
    /// Class of j ∘ i for i ∈ hom(a, b), j ∈ hom(b, c).
    [[nodiscard]] std::int32_t compose(ObjId a, ObjId b, ObjId c, std::int32_t i, std::int32_t j) const;
    [[nodiscard]] std::int32_t class_of(const Zigzag& z) const;
    [[nodiscard]] std::int32_t class_of_morphism(const FinCategory& cat, MorId f) const;
    [[nodiscard]] bool is_isomorphism(ObjId a, ObjId b, std::int32_t i) const;
    [[nodiscard]] bool lawful() const { return issues.empty(); }
};

[[nodiscard]] HoCategory homotopy_category(const PartialModelStructure& pms,
                                           ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

}  // namespace pmcat
