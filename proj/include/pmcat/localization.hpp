#pragma once

#include "pmcat/hammock.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pmcat {

/// One step of a path in the localization: a morphism read forwards, or a weak
/// equivalence read backwards (its formal inverse).
struct Letter
{
    MorId morphism = kNoMorphism;
    bool backward = false;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A path source → target; the empty word is the identity of `source`.
struct Word
{
    ObjId source = kNoObject;
    std::vector<Letter> letters;

    friend bool operator==(const Word&, const Word&) = default;
};

[[nodiscard]] ObjId word_target(const FinCategory& cat, const Word& word);

/// Composes adjacent letters of the same direction and drops identities.
[[nodiscard]] Word normalize(const FinCategory& cat, const Word& word);
[[nodiscard]] Word concatenate(const Word& first, const Word& second);
[[nodiscard]] std::string word_name(const FinCategory& cat, const Word& word);

/// All normalized words of length at most `bound`, grouped into classes by the moves
/// "cancel w against its formal inverse" and "slide across a commutative square
/// q m = m' p with p, q in W", applied inside words that stay within the bound.
class LocalizationOracle
{
public:
    LocalizationOracle(const RelCategory& rc, int bound);

    [[nodiscard]] int bound() const { return bound_; }
    [[nodiscard]] std::size_t class_count(ObjId a, ObjId b) const;
    /// Shortest word of every class in hom(a, b), in class order.
    [[nodiscard]] std::vector<Word> representatives(ObjId a, ObjId b) const;
    /// All words of every class in hom(a, b).
    [[nodiscard]] std::vector<std::vector<Word>> classes(ObjId a, ObjId b) const;
    /// Global class id of a word, or nullopt when its normal form exceeds the bound.
    [[nodiscard]] std::optional<std::int32_t> class_of(const Word& word) const;
    /// Whether the class of `word` has a two-sided inverse among the classes of hom(b, a);
    /// nullopt when every candidate product runs past the bound.
    [[nodiscard]] std::optional<bool> invertible(const Word& word) const;

private:
    struct Hash
    {
        std::size_t operator()(const std::vector<std::int32_t>& key) const noexcept;
    };

    [[nodiscard]] static std::vector<std::int32_t> key_of(const Word& word);
    [[nodiscard]] std::int32_t find(std::int32_t x) const;

    const RelCategory* rc_;
    int bound_;
    std::vector<Word> words_;
    std::unordered_map<std::vector<std::int32_t>, std::int32_t, Hash> index_;
    mutable std::vector<std::int32_t> parent_;
};

/// Classes of hom(a, b) at the given bound, plus whether the count agrees at bound - 2.
struct OracleClasses
{
    ObjId source = kNoObject;
    ObjId target = kNoObject;
    int bound = 0;
    std::vector<std::vector<Word>> classes;
    std::size_t previous_count = 0;
    bool stable = false;
};

[[nodiscard]] OracleClasses bounded_localization_oracle(const RelCategory& rc, ObjId a, ObjId b, int bound);

enum class Verdict { Pass, Fail, Inconclusive };

[[nodiscard]] std::string_view to_string(Verdict verdict);

struct SaturationReport
{
    std::string mode;  // "homotopy-category" or "bounded-oracle"
    Verdict verdict = Verdict::Inconclusive;
    std::vector<MorId> invertible_outside_weq;
    std::vector<MorId> weq_not_invertible;
    int bound = 0;
    bool stable = true;
    ZigzagConvention convention = ZigzagConvention::WeakEquivalences;
    std::string detail;

    [[nodiscard]] bool pass() const { return verdict == Verdict::Pass; }
};

/// A morphism is in W iff its class in Ho is an isomorphism.
[[nodiscard]] SaturationReport check_saturation(const PartialModelStructure& pms,
                                                ZigzagConvention convention = ZigzagConvention::WeakEquivalences);

/// Same question answered with the bounded oracle; inconclusive when the oracle is not
/// stable between bound - 2 and bound.
[[nodiscard]] SaturationReport check_saturation_diagnostic(const RelCategory& rc, int bound = 7);

}  // namespace pmcat
