#pragma once

#include "diffalg/diffpoly.hpp"
#include "diffalg/reduction.hpp"
#include "diffalg/tropical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffalg {

/// Equations u_1..u_n and the ring variables used as matrix columns, in
/// matrix order.
struct System {
    std::vector<DiffPoly> equations;
    std::vector<std::size_t> columns;
    std::vector<std::string> labels;

    static System of(std::vector<DiffPoly> equations, std::vector<std::string> labels = {});

    OrderMatrix matrix(Convention convention = Convention::strong) const;
    ExtInt jacobi(Convention convention = Convention::strong) const;
    /// New equation i is old equation rowPerm[i]; new column j is old column
    /// colPerm[j] (the convention of permute()).
    System permuted(const Perm& rowPerm, const Perm& colPerm) const;
    System permuted(const FormCertificate& cert) const { return permuted(cert.rowPerm, cert.colPerm); }
};

enum class StepKind { firstForm, secondForm, scripted, normalize, eliminate };
const char* toString(StepKind k);

struct ReductionStep {
    StepKind kind = StepKind::scripted;
    std::size_t divided = 0;  // equation index (in the step's own system order)
    std::size_t by = 0;
    std::size_t inVar = 0;    // ring variable
    std::optional<DivisionCertificate> certificate;
    std::optional<FormCertificate> form;
    OrderMatrix matrixBefore;
    OrderMatrix matrixAfter;
    ExtInt jBefore;
    ExtInt jAfter;
    ExtInt jWeakBefore;
    ExtInt jWeakAfter;
    std::string note;
};

struct Trace {
    std::vector<ReductionStep> steps;
    /// J after 0, 1, 2, ... division steps (strong convention).
    std::vector<ExtInt> jSequence;
    std::vector<ExtInt> jWeakSequence;
};

/*
 * Single form-preserving step: u_2 (first form) or u_n (second form) is
 * replaced by its remainder under division by u_1 in the first column
 * variable. The pivot must have a constant separant in that variable, or a
 * characteristic set of the component must certify it does not vanish;
 * otherwise DegenerateSituation is thrown. Non-increase of J, strict descent
 * in Ritt's matrix ordering and the entrywise division bound are asserted.
 */
std::pair<System, ReductionStep> stepFirstForm(const System& system, const Ranking& ranking,
                                               const AutoreducedSet* component = nullptr);
std::pair<System, ReductionStep> stepSecondForm(const System& system, const Ranking& ranking,
                                                const AutoreducedSet* component = nullptr);

struct ScriptEntry {
    std::size_t dividend = 0;
    std::size_t divisor = 0;
    std::size_t var = 0;  // ring variable
};

/// Parses "0/2@x;1/2@x" against the ring's variable names.
std::vector<ScriptEntry> parseScript(const std::string& text, const Ring& ring);

/// Unrestricted partial divisions; nothing about J is asserted.
Trace scriptedDivide(const System& system, const std::vector<ScriptEntry>& script, const Ranking& ranking);

struct LinearReduceResult {
    Trace trace;
    System finalSystem;
    CharSetResult charset;
    Dimensions dims;
    ExtInt initialJ;
    /// False when the loop stopped on a −∞ determinant or a zero row.
    bool triangular = false;
    std::size_t budget = 0;
};

std::size_t linearStepBudget(const System& system);

/// Ritt's reduction of a square linear system to nested-triangular shape.
/// Throws InconsistentSystem or NonConvergence.
LinearReduceResult linearReduce(const System& system, const Ranking& ranking);

} // namespace diffalg
