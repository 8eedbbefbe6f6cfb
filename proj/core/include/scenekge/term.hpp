#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace scenekge {

enum class TermKind { Iri, Literal };

/// An RDF node label. IRIs are stored fully expanded; literals carry an optional datatype IRI.
struct Term {
    TermKind kind = TermKind::Iri;
    std::string lexical;
    std::optional<std::string> datatype;

    static Term iri(std::string value) { return Term{TermKind::Iri, std::move(value), std::nullopt}; }
    static Term literal(std::string value, std::optional<std::string> datatype = std::nullopt) {
        return Term{TermKind::Literal, std::move(value), std::move(datatype)};
    }

    bool is_iri() const noexcept { return kind == TermKind::Iri; }
    bool is_literal() const noexcept { return kind == TermKind::Literal; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct TermHash {
    std::size_t operator()(const Term& term) const noexcept;
};

/// True when `value` can be written between angle brackets and read back unchanged.
bool is_valid_iri(std::string_view value) noexcept;

/// Throws ValidationError for an empty IRI, an IRI with whitespace or delimiter characters,
/// or a literal whose datatype is not a valid IRI.
void validate(const Term& term);

}  // namespace scenekge
