#include "pmcat/common.hpp"

#include <algorithm>
#include <cstdio>

#ifndef PMCAT_VERSION
#define PMCAT_VERSION "0.0.0"
#endif

namespace pmcat {

std::string_view to_string(IssueKind kind)
{
    switch (kind) {
        case IssueKind::Structural:
            return "structural";
        case IssueKind::MissingComposite:
            return "missing-composite";
        case IssueKind::CompositeEndpoints:
            return "composite-endpoints";
        case IssueKind::IdentityLaw:
            return "identity-law";
        case IssueKind::Associativity:
            return "associativity";
        case IssueKind::FunctorEndpoints:
            return "functor-endpoints";
        case IssueKind::FunctorIdentity:
            return "functor-identity";
        case IssueKind::FunctorComposition:
            return "functor-composition";
        case IssueKind::WeqIdentity:
            return "weq-identity";
        case IssueKind::WeqComposition:
            return "weq-composition";
    }
    return "unknown";
}

bool ValidationReport::has(IssueKind kind) const
{
    return count(kind) > 0;
}

std::size_t ValidationReport::count(IssueKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [kind](const Issue& i) { return i.kind == kind; }));
}

void ValidationReport::add(IssueKind kind, std::string message, std::vector<std::string> witness)
{
    issues.push_back(Issue{kind, std::move(message), std::move(witness)});
}

void ValidationReport::append(const ValidationReport& other)
{
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
}

std::size_t TupleHash::operator()(const std::vector<std::int32_t>& key) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t v : key) {
        h ^= static_cast<std::uint32_t>(v);
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string_view toolkit_version()
{
    return PMCAT_VERSION;
}

}  // namespace pmcat
