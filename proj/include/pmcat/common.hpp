#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pmcat {

using ObjId = std::int32_t;
using MorId = std::int32_t;

inline constexpr ObjId kNoObject = -1;
inline constexpr MorId kNoMorphism = -1;

/// Thrown when the arguments of an operation violate its precondition.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a 3-arrow calculus step lacks a pushout, pullback or factorization entry.
class CalculusViolation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class IssueKind {
    Structural,
    MissingComposite,
    CompositeEndpoints,
    IdentityLaw,
    Associativity,
    FunctorEndpoints,
    FunctorIdentity,
    FunctorComposition,
    WeqIdentity,
    WeqComposition,
};

[[nodiscard]] std::string_view to_string(IssueKind kind);

struct Issue
{
    IssueKind kind;
    std::string message;
    std::vector<std::string> witness;
};

/// Collected violations; empty means the checked object is well formed.
struct ValidationReport
{
    std::vector<Issue> issues;

    [[nodiscard]] bool ok() const { return issues.empty(); }
    [[nodiscard]] bool has(IssueKind kind) const;
    [[nodiscard]] bool has_structural() const { return has(IssueKind::Structural); }
    [[nodiscard]] std::size_t count(IssueKind kind) const;

    void add(IssueKind kind, std::string message, std::vector<std::string> witness = {});
    void append(const ValidationReport& other);
};

struct TupleHash
{
    std::size_t operator()(const std::vector<std::int32_t>& key) const noexcept;
};

using TupleIndex = std::unordered_map<std::vector<std::int32_t>, std::int32_t, TupleHash>;

/// FNV-1a, 64 bit.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

[[nodiscard]] std::string hex64(std::uint64_t value);

[[nodiscard]] std::string_view toolkit_version();

}  // namespace pmcat
