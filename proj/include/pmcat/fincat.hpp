#pragma once

#include "pmcat/common.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmcat {

/// Name-level description of a finite category, as read from a file.
/// Identities named `id:<object>` are generated when not listed; composites
/// involving an identity are filled in unless given explicitly.
struct CategoryDescription
{
    struct Arrow
    {
        std::string name;
        std::string source;
        std::string target;
    };
    /// `result` is second ∘ first.
    struct Composite
    {
        std::string first;
        std::string second;
        std::string result;
    };

    std::vector<std::string> objects;
    std::vector<Arrow> morphisms;
    std::vector<Composite> composites;
};

[[nodiscard]] std::string identity_name(std::string_view object);

/// Finite category with an explicit composition table. Immutable once built.
class FinCategory
{
public:
    struct Arrow
    {
        std::string name;
        ObjId source = kNoObject;
        ObjId target = kNoObject;

        friend bool operator==(const Arrow&, const Arrow&) = default;
    };

    /// compose(f, g) must return g ∘ f for every pair with target(f) == source(g).
    /// kNoMorphism leaves the entry undefined; only validation inspects such tables.
    using ComposeFn = std::function<MorId(MorId, MorId)>;

    FinCategory() = default;

    [[nodiscard]] static FinCategory assemble(std::vector<std::string> objects,
                                              std::vector<Arrow> arrows,
                                              std::vector<MorId> identities,
                                              const ComposeFn& compose);

    /// Resolves and validates a description; throws InvalidCategory on any issue.
    [[nodiscard]] static FinCategory from_description(const CategoryDescription& description);

    [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
    [[nodiscard]] std::size_t morphism_count() const { return arrows_.size(); }

    [[nodiscard]] const std::string& object_name(ObjId a) const { return objects_[static_cast<std::size_t>(a)]; }
    [[nodiscard]] const Arrow& arrow(MorId f) const { return arrows_[static_cast<std::size_t>(f)]; }
    [[nodiscard]] const std::string& name(MorId f) const { return arrow(f).name; }
    [[nodiscard]] ObjId source(MorId f) const { return arrow(f).source; }
    [[nodiscard]] ObjId target(MorId f) const { return arrow(f).target; }
    [[nodiscard]] MorId identity(ObjId a) const { return identities_[static_cast<std::size_t>(a)]; }
    [[nodiscard]] bool is_identity(MorId f) const { return identity(source(f)) == f; }

    /// g ∘ f, for target(f) == source(g).
    [[nodiscard]] MorId compose(MorId f, MorId g) const
    {
        return after_[static_cast<std::size_t>(f)][static_cast<std::size_t>(out_pos_[static_cast<std::size_t>(g)])];
    }

    /// Morphisms out of `a`, sorted by (target, id).
    [[nodiscard]] std::span<const MorId> out(ObjId a) const { return out_[static_cast<std::size_t>(a)]; }
    /// Morphisms into `b`, sorted by (source, id).
    [[nodiscard]] std::span<const MorId> in(ObjId b) const { return in_[static_cast<std::size_t>(b)]; }
    [[nodiscard]] std::span<const MorId> hom(ObjId a, ObjId b) const;
    /// Position of f inside out(source(f)).
    [[nodiscard]] std::int32_t out_position(MorId f) const { return out_pos_[static_cast<std::size_t>(f)]; }

    [[nodiscard]] std::optional<ObjId> find_object(std::string_view name) const;
    [[nodiscard]] std::optional<MorId> find_morphism(std::string_view name) const;

    [[nodiscard]] const std::vector<std::string>& objects() const { return objects_; }
    [[nodiscard]] const std::vector<Arrow>& arrows() const { return arrows_; }

    friend bool operator==(const FinCategory& a, const FinCategory& b);

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<MorId> identities_;
    std::vector<std::vector<MorId>> out_;
    std::vector<std::vector<MorId>> in_;
    std::vector<std::int32_t> out_pos_;
    std::vector<std::vector<MorId>> after_;
    std::unordered_map<std::string, ObjId> object_lookup_;
    std::unordered_map<std::string, MorId> morphism_lookup_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

[[nodiscard]] inline CategoryPtr share(FinCategory cat)
{
    return std::make_shared<const FinCategory>(std::move(cat));
}

class InvalidCategory : public std::invalid_argument
{
public:
    explicit InvalidCategory(ValidationReport report);
    [[nodiscard]] const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

[[nodiscard]] ValidationReport validate_category(const CategoryDescription& description);

/// Law checks on an assembled table: missing composites, endpoints, identities, associativity.
[[nodiscard]] ValidationReport check_category_laws(const FinCategory& cat);

struct Functor
{
    CategoryPtr source;
    CategoryPtr target;
    std::vector<ObjId> on_objects;
    std::vector<MorId> on_morphisms;

    [[nodiscard]] ObjId object(ObjId a) const { return on_objects[static_cast<std::size_t>(a)]; }
    [[nodiscard]] MorId morphism(MorId f) const { return on_morphisms[static_cast<std::size_t>(f)]; }
};

[[nodiscard]] Functor identity_functor(const CategoryPtr& cat);
[[nodiscard]] Functor compose_functors(const Functor& first, const Functor& second);
[[nodiscard]] ValidationReport check_functor(const Functor& functor);

/// Cocone on a span B ←f A →g C: legs B → apex and C → apex.
struct Cocone
{
    ObjId apex = kNoObject;
    MorId from_first = kNoMorphism;
    MorId from_second = kNoMorphism;
};

/// Cone on a cospan B →f A ←g C: legs apex → B and apex → C.
struct Cone
{
    ObjId apex = kNoObject;
    MorId to_first = kNoMorphism;
    MorId to_second = kNoMorphism;
};

struct CoconeWitness
{
    Cocone cocone;
    /// Every cocone on the span with its unique comparison map from the pushout.
    std::vector<std::pair<Cocone, MorId>> comparisons;
};

struct ConeWitness
{
    Cone cone;
    /// Every cone on the cospan with its unique comparison map into the pullback.
    std::vector<std::pair<Cone, MorId>> comparisons;
};

/// Pushout of f: A→B and g: A→C; smallest apex in object order wins among pushouts.
[[nodiscard]] std::optional<CoconeWitness> find_pushout(const FinCategory& cat, MorId f, MorId g);
/// Pullback of f: B→A and g: C→A; same tie-breaking as find_pushout.
[[nodiscard]] std::optional<ConeWitness> find_pullback(const FinCategory& cat, MorId f, MorId g);

/// Independent re-check of the universal property by a scan over all morphisms.
[[nodiscard]] bool is_pushout(const FinCategory& cat, MorId f, MorId g, const Cocone& cocone);
[[nodiscard]] bool is_pullback(const FinCategory& cat, MorId f, MorId g, const Cone& cone);

/// The unique map from a pushout apex to another cocone apex; kNoMorphism when none or many.
[[nodiscard]] MorId cocone_comparison(const FinCategory& cat, const Cocone& pushout, const Cocone& other);
/// The unique map from another cone apex into a pullback apex.
[[nodiscard]] MorId cone_comparison(const FinCategory& cat, const Cone& pullback, const Cone& other);

struct StrictPullback
{
    CategoryPtr cat;
    Functor to_left;
    Functor to_right;
};

/// Objects (x, y) with F x = G y, morphisms pairs agreeing in the common target.
[[nodiscard]] StrictPullback strict_pullback_category(const Functor& left, const Functor& right);

struct Subcategory
{
    CategoryPtr cat;
    std::vector<ObjId> objects;      // sub object -> ambient object
    std::vector<MorId> morphisms;    // sub morphism -> ambient morphism
    std::vector<ObjId> object_index; // ambient object -> sub object or kNoObject
    std::vector<MorId> morphism_index;
};

/// Full subcategory on `objects` (kept in ambient order), with names preserved.
[[nodiscard]] Subcategory full_subcategory(const CategoryPtr& cat, std::span<const ObjId> objects);

/// Full subcategory on the first object of every isomorphism class.
[[nodiscard]] Subcategory skeleton(const CategoryPtr& cat);

[[nodiscard]] bool is_isomorphism(const FinCategory& cat, MorId f);
[[nodiscard]] MorId inverse_of(const FinCategory& cat, MorId f);

/// Isomorphism of categories (bijective on objects and morphisms), found by backtracking.
[[nodiscard]] std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b);
/// Same, additionally requiring marked morphisms to correspond to marked morphisms.
[[nodiscard]] std::optional<Functor> find_isomorphism(const CategoryPtr& a, const CategoryPtr& b,
                                                     std::span<const char> marked_a, std::span<const char> marked_b);

/// Name-level rendering of a short morphism tuple, e.g. "(f,g)".
[[nodiscard]] std::string tuple_name(const FinCategory& cat, std::span<const MorId> morphisms);

}  // namespace pmcat
