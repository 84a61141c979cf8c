#pragma once

#include "diffalg/diffpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffalg {

/*
 * Grammar (whitespace insignificant inside a line):
 *
 *   expr    := ['-'|'+'] term (('+'|'-') term)*
 *   term    := power (('*'|'/') power)*        division only by nonzero constants
 *   power   := atom ['^' INT]
 *   atom    := NUMBER | deriv | '(' expr ')'
 *   deriv   := IDENT "'"* | IDENT '^(' INT ')'
 *
 * `x^(k)` directly after an identifier is the k-th derivative; `^` anywhere
 * else is a power. Identifiers are [a-zA-Z][a-zA-Z0-9_]*.
 */
DiffPoly parsePolynomial(const std::string& text, const RingPtr& ring);

/// Variable names of `text` in order of first occurrence.
std::vector<std::string> scanIdentifiers(const std::string& text);

struct ParsedSystem {
    RingPtr ring;
    std::vector<DiffPoly> equations;
    std::vector<std::string> labels;
};

/*
 * System file: one polynomial per line; `#` starts a comment; blank lines are
 * ignored. An optional `vars x, y, z` line fixes the column order and turns
 * undeclared names into errors. A line may be labelled as `name := expr`.
 * `declared` (e.g. from --vars) overrides any `vars` line.
 */
ParsedSystem parseSystem(const std::string& text,
                         const std::optional<std::vector<std::string>>& declared = std::nullopt);

std::vector<std::string> splitVarList(const std::string& list);

} // namespace diffalg
