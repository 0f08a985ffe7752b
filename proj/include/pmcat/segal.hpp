#pragma once

#include "pmcat/diagrams.hpp"
#include "pmcat/localization.hpp"
#include "pmcat/nerve_homology.hpp"
#include "pmcat/pmc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pmcat {

/// A_k: chains of k composable maps, morphisms with every component in W.
[[nodiscard]] DiagramCategory chain_category(const RelCategory& rc, int k);

/// B_k (k >= 2): c0 →b1 c1 →x c2 ←w c3 →y c4 →b2 ... →bk c(k+3) with x, w, y in W.
[[nodiscard]] DiagramCategory zigzag_chain_category(const RelCategory& rc, int k);

/// h_k: A_k → B_k inserting three identities after the first map, and A'_k, the full
/// subcategory of B_k on its image.
struct IdentityInsertion
{
    int k = 0;
    DiagramCategory chains;
    DiagramCategory zigzags;
    Functor functor;
    Subcategory image;
};

[[nodiscard]] IdentityInsertion insert_identities(const RelCategory& rc, int k);

/// A family of maps between two functors B → C given by their values, checked as a
/// natural transformation.
struct Transformation
{
    std::string name;
    std::string from;
    std::string to;
    std::vector<std::vector<MorId>> components;  // per object, per diagram node
};

struct CertificateCheck
{
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;

    [[nodiscard]] bool pass() const { return failed == 0; }
};

/// Per object of B_k: the choices made while building its rows.
struct RetractionData
{
    Factorization factorization;     // w = v1 u1
    Cone pullback;                   // Q with legs to M and to c0
    std::vector<Cocone> pushouts;    // P_2, ..., P_k
    std::vector<MorId> pushed;       // u_1, ..., u_k
    std::vector<ObjId> rows;         // the five rows, as objects of B_k
};

struct SegalCertificate
{
    int k = 0;
    IdentityInsertion insertion;
    Functor retraction;               // B_k → A'_k
    std::vector<RetractionData> data;  // per object of B_k
    std::vector<Transformation> zigzag;           // rows 1 → 2 ← 3 → 4 ← 5, on B_k
    std::vector<Transformation> restricted_zigzag;  // r i ⇒ row 4 ⇒ 1, and the composite, on A'_k
    std::vector<CertificateCheck> checks;
    std::string reading;

    [[nodiscard]] bool valid() const;
};

/// Builds r: B_k → A'_k with the natural weak equivalences i r ≃ 1 and r i ≃ 1, and checks
/// every component, square and universal property involved.
/// Throws CalculusViolation when a factorization, pushout or pullback is missing.
[[nodiscard]] SegalCertificate build_retraction(const PartialModelStructure& pms, int k);

struct SegalLevel
{
    int k = 0;
    bool strict_pullback = false;
    std::string strict_detail;
    std::optional<bool> certificate_valid;  // only for k >= 2
    std::vector<CertificateCheck> certificate_checks;
    std::optional<NerveInvariants> image_nerve;   // A'_k
    std::optional<NerveInvariants> zigzag_nerve;  // B_k
    std::optional<bool> corroborated;
    std::string error;

    [[nodiscard]] bool pass() const;
};

struct SegalReport
{
    std::vector<SegalLevel> levels;
    int dims = 2;
    SaturationReport saturation;
    std::string boundary;

    [[nodiscard]] bool pass() const;
};

/// Largest k accepted without `allow_large`.
inline constexpr int kSegalDefaultMaxK = 4;

/// Strict pullback identity, retraction certificate, nerve corroboration in degrees <= dims,
/// and saturation, for every k in ks.
[[nodiscard]] SegalReport verify_segal(const PartialModelStructure& pms, const std::vector<int>& ks, int dims = 2,
                                       bool allow_large = false);

/// A_k ≅ A_{k-1} ×_{A_0} A_1 by an explicit isomorphism search (k >= 1).
[[nodiscard]] bool strict_segal_identity(const RelCategory& rc, int k, std::string* detail = nullptr);

}  // namespace pmcat
