#include "scenekge/ntriples.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "scenekge/errors.hpp"
#include "scenekge/vocabulary.hpp"

namespace scenekge {

namespace {

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

bool is_local_char(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

bool is_prefix_char(char c) noexcept { return is_local_char(c); }

void skip_blanks(std::string_view line, std::size_t& pos) {
    while (pos < line.size() && is_blank(line[pos])) ++pos;
}

std::string read_bracketed_iri(std::string_view line, std::size_t& pos, std::size_t line_number) {
    const std::size_t start = pos;
    ++pos;  // '<'
    const std::size_t close = line.find('>', pos);
    if (close == std::string_view::npos) throw ParseError(line_number, start, "unterminated IRI");
    std::string value(line.substr(pos, close - pos));
    if (!is_valid_iri(value)) throw ParseError(line_number, start, "invalid IRI");
    pos = close + 1;
    return value;
}

std::string read_prefixed_name(std::string_view line, std::size_t& pos, std::size_t line_number) {
    const std::size_t start = pos;
    if (line.substr(pos, 2) == "_:") throw ParseError(line_number, start, "blank nodes are not supported");
    std::size_t p = pos;
    while (p < line.size() && is_prefix_char(line[p])) ++p;
    if (p >= line.size() || line[p] != ':') throw ParseError(line_number, start, "expected IRI or prefixed name");
    const std::string_view prefix = line.substr(pos, p - pos);
    const auto binding = std::find_if(kPrefixes.begin(), kPrefixes.end(),
                                      [&](const PrefixBinding& b) { return b.prefix == prefix; });
    if (binding == kPrefixes.end()) {
        throw ParseError(line_number, start, "unknown prefix '" + std::string(prefix) + ":'");
    }
    ++p;  // ':'
    const std::size_t local_start = p;
    while (p < line.size()) {
        if (is_local_char(line[p])) {
            ++p;
        } else if (line[p] == '.' && p + 1 < line.size() && is_local_char(line[p + 1])) {
            ++p;
        } else {
            break;
        }
    }
    pos = p;
    std::string value(binding->ns);
    value.append(line.substr(local_start, p - local_start));
    return value;
}

std::string read_iri(std::string_view line, std::size_t& pos, std::size_t line_number) {
    if (pos < line.size() && line[pos] == '<') return read_bracketed_iri(line, pos, line_number);
    return read_prefixed_name(line, pos, line_number);
}

Term read_literal(std::string_view line, std::size_t& pos, std::size_t line_number) {
    const std::size_t start = pos;
    ++pos;  // opening quote
    std::string value;
    for (;;) {
        if (pos >= line.size()) throw ParseError(line_number, start, "unterminated literal");
        const char c = line[pos];
        if (c == '"') {
            ++pos;
            break;
        }
        if (c == '\\') {
            if (pos + 1 >= line.size()) throw ParseError(line_number, pos, "dangling escape");
            switch (line[pos + 1]) {
                case '"': value.push_back('"'); break;
                case '\\': value.push_back('\\'); break;
                case 'n': value.push_back('\n'); break;
                case 't': value.push_back('\t'); break;
                default: throw ParseError(line_number, pos, "unsupported escape sequence");
            }
            pos += 2;
            continue;
        }
        value.push_back(c);
        ++pos;
    }
    if (pos < line.size() && line[pos] == '@') throw ParseError(line_number, pos, "language tags are not supported");
    if (line.substr(pos, 2) == "^^") {
        pos += 2;
        if (pos >= line.size()) throw ParseError(line_number, pos, "missing datatype IRI");
        return Term::literal(std::move(value), read_iri(line, pos, line_number));
    }
    return Term::literal(std::move(value));
}

std::string format_iri(const std::string& value) {
    for (const PrefixBinding& binding : kPrefixes) {
        if (binding.prefix.empty()) continue;
        if (value.size() <= binding.ns.size() || value.compare(0, binding.ns.size(), binding.ns) != 0) continue;
        const std::string_view local = std::string_view(value).substr(binding.ns.size());
        if (std::all_of(local.begin(), local.end(), is_local_char)) {
            std::string out(binding.prefix);
            out.push_back(':');
            out.append(local);
            return out;
        }
    }
    return "<" + value + ">";
}

void parse_line(std::string_view line, std::size_t line_number, KnowledgeGraph& kg) {
    std::size_t pos = 0;
    skip_blanks(line, pos);
    if (pos == line.size() || line[pos] == '#') return;

    if (line[pos] == '"') throw ParseError(line_number, pos, "subject must be an IRI");
    Term subject = Term::iri(read_iri(line, pos, line_number));
    if (pos < line.size() && !is_blank(line[pos])) throw ParseError(line_number, pos, "expected whitespace after subject");
    skip_blanks(line, pos);

    if (pos < line.size() && line[pos] == '"') throw ParseError(line_number, pos, "predicate must be an IRI");
    const std::size_t predicate_pos = pos;
    std::string predicate = read_iri(line, pos, line_number);
    if (predicate == iri::rdfs_type_alias) predicate = iri::rdf_type;
    if (pos < line.size() && !is_blank(line[pos])) throw ParseError(line_number, pos, "expected whitespace after predicate");
    skip_blanks(line, pos);
    if (pos >= line.size()) throw ParseError(line_number, pos, "missing object");

    Term object = read_term(line, pos, line_number);
    skip_blanks(line, pos);
    if (pos >= line.size() || line[pos] != '.') throw ParseError(line_number, pos, "expected '.' terminating the statement");
    ++pos;
    skip_blanks(line, pos);
    if (pos != line.size()) throw ParseError(line_number, pos, "unexpected content after '.'");

    try {
        kg.insert(subject, Term::iri(std::move(predicate)), object);
    } catch (const ValidationError& e) {
        throw ParseError(line_number, predicate_pos, e.what());
    }
}

}  // namespace

Term read_term(std::string_view line, std::size_t& pos, std::size_t line_number) {
    skip_blanks(line, pos);
    if (pos >= line.size()) throw ParseError(line_number, pos, "expected a term");
    if (line[pos] == '"') return read_literal(line, pos, line_number);
    return Term::iri(read_iri(line, pos, line_number));
}

Term parse_term(std::string_view text) {
    std::size_t pos = 0;
    Term term = read_term(text, pos, 1);
    skip_blanks(text, pos);
    if (pos != text.size()) throw ParseError(1, pos, "unexpected content after term");
    return term;
}

KnowledgeGraph parse_document(std::istream& input) {
    KnowledgeGraph kg;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        parse_line(line, line_number, kg);
    }
    kg.freeze();
    return kg;
}

KnowledgeGraph parse_document(std::string_view text) {
    KnowledgeGraph kg;
    std::size_t line_number = 0;
    std::size_t begin = 0;
    while (begin < text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        ++line_number;
        parse_line(text.substr(begin, end - begin), line_number, kg);
        begin = end + 1;
    }
    kg.freeze();
    return kg;
}

std::string format_term(const Term& term) {
    if (term.is_iri()) return format_iri(term.lexical);
    std::string out = "\"";
    for (const char c : term.lexical) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    if (term.datatype) {
        out += "^^";
        out += format_iri(*term.datatype);
    }
    return out;
}

void serialize_document(const KnowledgeGraph& kg, std::ostream& output) {
    std::vector<std::string> node_text(kg.node_count());
    for (std::size_t i = 0; i < node_text.size(); ++i) node_text[i] = format_term(kg.node_term(NodeId(i)));
    std::vector<std::string> relation_text(kg.relation_count());
    for (std::size_t i = 0; i < relation_text.size(); ++i) {
        relation_text[i] = format_term(kg.relation_term(RelId(i)));
    }

    std::vector<Triple> order(kg.triples().begin(), kg.triples().end());
    std::sort(order.begin(), order.end(), [&](const Triple& a, const Triple& b) {
        return std::tie(node_text[index(a.head)], relation_text[index(a.relation)], node_text[index(a.tail)]) <
               std::tie(node_text[index(b.head)], relation_text[index(b.relation)], node_text[index(b.tail)]);
    });
    for (const Triple& t : order) {
        output << node_text[index(t.head)] << ' ' << relation_text[index(t.relation)] << ' '
               << node_text[index(t.tail)] << " .\n";
    }
}

std::string serialize_document(const KnowledgeGraph& kg) {
    std::ostringstream out;
    serialize_document(kg, out);
    return out.str();
}

}  // namespace scenekge
