#include "scenekge/term.hpp"

#include <functional>

#include "scenekge/errors.hpp"

namespace scenekge {

std::size_t TermHash::operator()(const Term& term) const noexcept {
    std::size_t h = std::hash<std::string>{}(term.lexical);
    h ^= static_cast<std::size_t>(term.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    if (term.datatype) {
        h ^= std::hash<std::string>{}(*term.datatype) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool is_valid_iri(std::string_view value) noexcept {
    if (value.empty()) return false;
    for (const char c : value) {
        const auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || u == 0x7f) return false;
        switch (c) {
            case '<':
            case '>':
            case '"':
            case '{':
            case '}':
            case '|':
            case '^':
            case '`':
            case '\\':
                return false;
            default:
                break;
        }
    }
    return true;
}

void validate(const Term& term) {
    if (term.is_iri()) {
        if (term.datatype) throw ValidationError("IRI term must not carry a datatype");
        if (term.lexical.empty()) throw ValidationError("IRI must not be empty");
        if (!is_valid_iri(term.lexical)) {
            throw ValidationError("IRI contains whitespace or a reserved character: " + term.lexical);
        }
        return;
    }
    if (term.datatype && !is_valid_iri(*term.datatype)) {
        throw ValidationError("literal datatype is not a valid IRI: " + *term.datatype);
    }
}

}  // namespace scenekge
