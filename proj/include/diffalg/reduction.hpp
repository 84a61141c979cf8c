#pragma once

#include "diffalg/diffpoly.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace diffalg {

enum class DivisionMode { full, partial };

const char* toString(DivisionMode m);

/// s·f = Σ quotients[i](divisors[i]) + remainder.
struct DivisionCertificate {
    DiffPoly s;
    std::vector<LinearDifferentialOperator> quotients;
    DiffPoly remainder;
    DivisionMode mode = DivisionMode::full;
    /// The separants/initials multiplied into s, one entry per use.
    std::vector<DiffPoly> multipliers;
};

/*
 * Ritt division. With `var`, every divisor is taken with its leader in that
 * variable and only derivatives of `var` are eliminated; otherwise leaders
 * come from `ranking`.
 *
 * partial: removes proper derivatives of each divisor's leader, multiplying
 *          by separants only. Result has ord ≤ ord of the divisor.
 * full:    additionally lowers the degree in the leader itself below the
 *          divisor's, multiplying by initials as well.
 *
 * The highest reducible derivative is always treated first; among divisors
 * able to reduce it the first in input order is used.
 */
DivisionCertificate rittDivide(const DiffPoly& f, const std::vector<DiffPoly>& divisors, DivisionMode mode,
                               const Ranking& ranking, std::optional<std::size_t> var = std::nullopt);

/// Recomputes s·f − Σ Q_i(g_i) − r and checks that it is zero.
bool verifyCertificate(const DiffPoly& f, const std::vector<DiffPoly>& divisors, const DivisionCertificate& cert);

bool isReducedWrt(const DiffPoly& f, const DiffPoly& g, DivisionMode mode, const Ranking& ranking);
bool isReducedWrtIn(const DiffPoly& f, const DiffPoly& g, DivisionMode mode, std::size_t var);

struct AutoreducedSet {
    std::vector<DiffPoly> elements;
    Ranking ranking;

    std::size_t size() const { return elements.size(); }
    bool empty() const { return elements.empty(); }
};

/// Rank of a single polynomial: leader, then degree in the leader.
std::strong_ordering rankCompare(const DiffPoly& a, const DiffPoly& b, const Ranking& ranking);

/// Induced ordering on autoreduced sets: elementwise rank on the common
/// prefix; if the prefix does not decide, the longer set is lower.
std::strong_ordering compareAutoreduced(const AutoreducedSet& a, const AutoreducedSet& b);

/// Pairwise full-mode reducedness plus increasing ranks.
bool isAutoreduced(const AutoreducedSet& a);

/// Greedy minimal autoreduced subset of `basis` (lowest rank first).
AutoreducedSet basicSet(const std::vector<DiffPoly>& basis, const Ranking& ranking);

enum class CharSetStatus { converged, notConverged, inconsistent };

struct CharSetResult {
    AutoreducedSet charset;
    std::vector<DiffPoly> multipliers;
    CharSetStatus status = CharSetStatus::notConverged;
    std::size_t rounds = 0;

    bool converged() const { return status == CharSetStatus::converged; }
};

/*
 * Classical loop: basic set of the current basis, reduce the remaining
 * elements by it, adjoin nonzero remainders, repeat. No case splitting, so
 * the result describes the single branch where every multiplier used is
 * nonzero.
 */
CharSetResult autoreduceLoop(const std::vector<DiffPoly>& generators, const Ranking& ranking,
                             std::size_t maxRounds = 64);

bool membership(const DiffPoly& f, const AutoreducedSet& charset);

struct Dimensions {
    std::int64_t diffDim = 0;
    /// Sum of leader orders when the set has one element per variable;
    /// nullopt means infinite.
    std::optional<std::int64_t> absDimBound;
};

Dimensions dimensions(const AutoreducedSet& charset, std::size_t n);

/// Elements that involve only `keep`; requires a block-elimination ranking
/// whose lowest block is exactly `keep`.
AutoreducedSet eliminationProject(const AutoreducedSet& charset, const std::vector<std::size_t>& keep);

} // namespace diffalg
