#pragma once

#include "pmcat/pmc.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmcat {

/// Line-oriented text format, one statement per line:
///
///     relcat 1
///     object A B
///     morphism f : A -> B
///     compose f g = h          # h = g ∘ f
///     weq f ...
///     u f ...
///     v f ...
///     factorization trivial    # w ↦ (w, target w, id), middle map = bottom
///     factor w u M v           # w = v ∘ u through M
///     middle w w2 top bottom = m
///
/// `#` starts a comment line. Identities `id:<object>` are implicit.
struct Statement
{
    enum class Kind { Header, Object, Morphism, Compose, Weq, U, V, FactorizationTrivial, Factor, Middle, Comment, Blank };

    Kind kind = Kind::Blank;
    std::vector<std::string> args;
    std::string text;  // comments: everything after '#'
    int line = 0;
};

struct RelCatDocument
{
    std::vector<Statement> statements;
};

class DocumentError : public std::runtime_error
{
public:
    DocumentError(int line, std::string field, const std::string& message);
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] const std::string& field() const { return field_; }
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    int line_;
    std::string field_;
    std::string message_;
};

[[nodiscard]] RelCatDocument parse_document_text(std::string_view text);
[[nodiscard]] RelCatDocument read_document(const std::string& path);
[[nodiscard]] std::string serialize(const RelCatDocument& doc);

/// A relative category, and a partial model structure when the document has u, v or
/// factorization statements (absent U or V default to the identities).
struct LoadedDocument
{
    RelCategory rc;
    std::optional<PartialModelStructure> pms;
};

/// Resolves names and validates the category; throws DocumentError with the line of the
/// offending statement.
[[nodiscard]] LoadedDocument interpret(const RelCatDocument& doc);

/// Canonical document describing a relative category (and optionally its structure).
[[nodiscard]] RelCatDocument describe(const RelCategory& rc, const PartialModelStructure* pms = nullptr);

}  // namespace pmcat
