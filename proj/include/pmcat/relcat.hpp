#pragma once

#include "pmcat/fincat.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pmcat {

/// A finite category with a marked wide subcategory W of weak equivalences.
struct RelCategory
{
    CategoryPtr cat;
    std::vector<char> weq;  // indexed by MorId

    [[nodiscard]] bool is_weq(MorId f) const { return weq[static_cast<std::size_t>(f)] != 0; }
    [[nodiscard]] std::vector<MorId> weq_morphisms() const;

    /// W = identities.
    [[nodiscard]] static RelCategory minimal(CategoryPtr cat);
    /// W = all morphisms.
    [[nodiscard]] static RelCategory maximal(CategoryPtr cat);
    /// W = identities plus the given morphisms.
    [[nodiscard]] static RelCategory with_weq(CategoryPtr cat, std::span<const MorId> weq);
};

[[nodiscard]] ValidationReport validate_relative(const RelCategory& rc);

struct PropertyReport
{
    bool pass = true;
    std::vector<MorId> witness;
    std::string detail;
};

/// Witness (r, s): two of {r, s, s∘r} in W, the third not.
[[nodiscard]] PropertyReport check_two_of_three(const RelCategory& rc);

struct TwoOfSixReport
{
    PropertyReport property;
    /// Only computed when `property` passes.
    std::optional<PropertyReport> two_of_three;
    std::optional<PropertyReport> isomorphisms_in_weq;

    [[nodiscard]] bool pass() const
    {
        return property.pass && two_of_three && two_of_three->pass && isomorphisms_in_weq &&
               isomorphisms_in_weq->pass;
    }
};

/// Witness (r, s, t): s∘r and t∘s in W but one of r, s, t, t∘s∘r not.
[[nodiscard]] TwoOfSixReport check_two_of_six(const RelCategory& rc);

/// Every isomorphism of the category lies in W; witness is the first one that does not.
[[nodiscard]] PropertyReport check_isomorphisms_in_weq(const RelCategory& rc);

struct RelSubcategory
{
    RelCategory rc;
    std::vector<ObjId> objects;  // sub object -> ambient object
};

/// Full relative subcategory on the closure of `seeds` under W-zigzag connectivity.
[[nodiscard]] RelSubcategory homotopically_full_subcategory(const RelCategory& rc, std::span<const ObjId> seeds);

/// Objects: relative functors source → target. Morphisms: natural transformations.
/// W: transformations whose components all lie in target's W.
struct FunctorCategory
{
    RelCategory rc;
    std::vector<Functor> functors;  // per object
    std::vector<std::vector<MorId>> components;  // per morphism, indexed by source object
};

[[nodiscard]] FunctorCategory relative_functor_category(const RelCategory& target, const RelCategory& source);

/// The subcategory W with every morphism marked. Morphisms are listed hom-set by
/// hom-set (source, then target, then original order).
[[nodiscard]] RelCategory restrict_to_weq(const RelCategory& rc);

/// Isomorphism of relative categories: a category isomorphism matching W exactly.
[[nodiscard]] std::optional<Functor> find_relative_isomorphism(const RelCategory& a, const RelCategory& b);

}  // namespace pmcat
