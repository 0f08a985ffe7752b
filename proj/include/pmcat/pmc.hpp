#pragma once

#include "pmcat/relcat.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmcat {

/// w = v ∘ u with u: source(w) → middle and v: middle → target(w).
struct Factorization
{
    MorId u = kNoMorphism;
    ObjId middle = kNoObject;
    MorId v = kNoMorphism;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// A morphism `from` → `to` in the arrow category of W: top: source(from) → source(to),
/// bottom: target(from) → target(to), with bottom ∘ from = to ∘ top.
struct WeqSquare
{
    MorId from = kNoMorphism;
    MorId to = kNoMorphism;
    MorId top = kNoMorphism;
    MorId bottom = kNoMorphism;

    friend auto operator<=>(const WeqSquare&, const WeqSquare&) = default;
};

struct PartialModelStructure
{
    RelCategory rc;
    std::vector<char> in_u;
    std::vector<char> in_v;
    std::vector<std::optional<Factorization>> factorization;  // indexed by MorId
    std::map<WeqSquare, MorId> middle_maps;

    [[nodiscard]] bool is_u(MorId f) const { return in_u[static_cast<std::size_t>(f)] != 0; }
    [[nodiscard]] bool is_v(MorId f) const { return in_v[static_cast<std::size_t>(f)] != 0; }
    [[nodiscard]] const FinCategory& cat() const { return *rc.cat; }

    /// Factorization w ↦ (w, target w, id) with middle map `bottom` for every square.
    [[nodiscard]] static PartialModelStructure with_trivial_factorization(RelCategory rc, std::vector<char> in_u,
                                                                         std::vector<char> in_v);
    /// U = W, V = identities, trivial factorization.
    [[nodiscard]] static PartialModelStructure trivial(RelCategory rc);
};

/// Every commutative square between weak equivalences whose sides are also weak equivalences.
[[nodiscard]] std::vector<WeqSquare> weq_squares(const RelCategory& rc);

struct AxiomVerdict
{
    std::string axiom;  // "a", "b", "c-i", "c-ii", "c-iii"
    std::string title;
    bool pass = true;
    std::vector<std::string> witness;
    std::string detail;
    std::size_t checks = 0;
};

struct AxiomReport
{
    ValidationReport structural;
    std::vector<AxiomVerdict> verdicts;

    [[nodiscard]] bool pass() const;
    [[nodiscard]] const AxiomVerdict& verdict(std::string_view axiom) const;
};

[[nodiscard]] AxiomReport verify_partial_model(const PartialModelStructure& pms);

/// The recorded middle map of a square, after re-checking both sub-squares.
/// Throws CalculusViolation when the entry is missing or does not commute.
[[nodiscard]] MorId factorization_middle_map(const PartialModelStructure& pms, const WeqSquare& square);

/// Restricts U, V, the factorization and its middle maps to the relative category (W, W),
/// then checks the axioms there. Diagnostic only: the restriction is one possible reading.
struct WeqRestrictionDiagnostic
{
    std::optional<PartialModelStructure> restricted;
    std::string problem;  // set when the restriction is not even well defined
    std::optional<AxiomReport> report;
};

[[nodiscard]] WeqRestrictionDiagnostic diagnose_weq_restriction(const PartialModelStructure& pms);

}  // namespace pmcat
