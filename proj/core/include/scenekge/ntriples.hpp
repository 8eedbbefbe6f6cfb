#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "scenekge/term.hpp"
#include "scenekge/triplestore.hpp"

namespace scenekge {

/// Parses the line-oriented N-Triples subset into a frozen graph.
///
/// One statement per line: `subject predicate object .` where subject and predicate are IRIs
/// (`<...>` or a built-in prefixed name such as `scene:Car`) and the object is an IRI or a
/// quoted literal with an optional `^^datatype`. Blank lines and `#` comment lines are
/// skipped. Repeated statements collapse to one triple. Throws ParseError on the first line
/// that does not match.
KnowledgeGraph parse_document(std::istream& input);
KnowledgeGraph parse_document(std::string_view text);

/// Writes one statement per triple, sorted by (subject, predicate, object) text.
void serialize_document(const KnowledgeGraph& kg, std::ostream& output);
std::string serialize_document(const KnowledgeGraph& kg);

/// Canonical text of a term: prefixed name when a built-in prefix applies, `<iri>` otherwise,
/// quoted and escaped for literals.
std::string format_term(const Term& term);

/// Reads one term from `line` starting at `pos` (leading blanks skipped) and advances `pos`
/// past it. Throws ParseError tagged with `line_number`.
Term read_term(std::string_view line, std::size_t& pos, std::size_t line_number);

/// Parses a string holding exactly one term.
Term parse_term(std::string_view text);

}  // namespace scenekge
