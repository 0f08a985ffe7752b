#pragma once

#include "pmcat/hammock.hpp"
#include "pmcat/localization.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pmcat {

/// B ↦ nerve of the zigzag category from B to the apex A. A weak equivalence g: B → B'
/// acts by g l on the left leg, giving value(B) → value(B'); this stands in for the
/// formal inverse of g, along which the presheaf is contravariant.
struct SimplicialPresheaf
{
    ObjId apex = kNoObject;
    int n_max = 0;
    ZigzagConvention convention = ZigzagConvention::WeakEquivalences;
    std::vector<ZigzagCategory> categories;        // per object B
    std::vector<TruncatedSimplicialSet> values;    // per object B
    std::vector<std::optional<SimplicialMap>> action;  // per morphism; set for weak equivalences
};

[[nodiscard]] SimplicialPresheaf yoneda_object(const RelCategory& rc, ObjId a, int n_max,
                                               ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

/// Action maps are simplicial maps, send identities to identities and respect composites.
[[nodiscard]] ValidationReport check_presheaf(const RelCategory& rc, const SimplicialPresheaf& p);

/// y(w) for w: A → A' in W, levelwise value_{A'}(B) → value_A(B), (l, m, r) ↦ (l, m, r w).
[[nodiscard]] std::vector<SimplicialMap> yoneda_map(const RelCategory& rc, const SimplicialPresheaf& target_side,
                                                    const SimplicialPresheaf& source_side, MorId w);

struct YonedaFailure
{
    MorId w = kNoMorphism;
    ObjId object = kNoObject;
    int degree = -1;  // -1 for a π0 failure
    std::string detail;
};

struct Pi0Comparison
{
    ObjId a = kNoObject;  // Ho(a, b) against π0 of y(b) at a
    ObjId b = kNoObject;
    std::size_t presheaf = 0;
    std::optional<std::size_t> ho;
    std::optional<std::size_t> oracle;  // only when stable
};

struct YonedaReport
{
    int dims = 2;
    ZigzagConvention convention = ZigzagConvention::WeakEquivalences;
    std::size_t maps_checked = 0;
    std::vector<YonedaFailure> failures;
    std::vector<std::string> presheaf_issues;
    std::vector<Pi0Comparison> pi0;
    bool ho_available = false;
    std::string model;
    std::string gap;

    [[nodiscard]] bool weak_equivalences_pass() const { return failures.empty() && presheaf_issues.empty(); }
    [[nodiscard]] bool pi0_yoneda_pass() const;
    [[nodiscard]] bool pass() const { return weak_equivalences_pass() && pi0_yoneda_pass(); }
};

/// Levelwise π0 and H_0..H_dims checks for y(w), w ∈ W, plus the π0-Yoneda comparison
/// against Ho (when `pms` is a verified partial model structure) and the bounded oracle.
[[nodiscard]] YonedaReport verify_yoneda_relative(const RelCategory& rc, int dims,
                                                  const PartialModelStructure* pms = nullptr, int oracle_bound = 7,
                                                  ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

}  // namespace pmcat
