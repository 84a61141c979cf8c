#pragma once

#include "diffalg/diffpoly.hpp"
#include "diffalg/reduction.hpp"

#include <vector>

namespace diffalg {

/// d·u = t + ℓ·s with ℓ the leader of u in `var` and d its degree there.
struct Coseparant {
    DiffPoly t;
    DiffPoly s;
    Derivative leader;
    std::uint32_t degree = 0;
};

Coseparant coseparant(const DiffPoly& u, std::size_t var);

/// The separant of u in `var` reduces to zero modulo the component's
/// characteristic set.
bool isDegenerate(const DiffPoly& u, std::size_t var, const AutoreducedSet& charset);

struct RittPencil {
    std::size_t pivot = 0;
    std::size_t var = 0;
    Derivative leader;
    std::uint32_t degree = 0;
    DiffPoly separant;    // s1, original ring
    DiffPoly coseparant;  // t1, original ring
    RingPtr extendedRing; // original variables plus the pencil variable, last
    std::size_t pencilVar = 0;
    DiffPoly generator;   // t1 + w·s1 over the extended ring
    std::vector<DiffPoly> system;          // original system
    std::vector<DiffPoly> baseGenerators;  // t1, s1, then u_j for j ≠ pivot

    /// Pencil generator followed by the carried equations, extended ring.
    std::vector<DiffPoly> generators() const;
};

/// Fresh name for the pencil variable: `w`, else `w1`, `w2`, ...
std::string freshVariableName(const Ring& ring);

RittPencil buildPencil(const std::vector<DiffPoly>& system, std::size_t pivot, std::size_t var);

/// The system with the pivot replaced by t1 + μ·s1 (pivot keeps its slot).
std::vector<DiffPoly> fiberAt(const RittPencil& pencil, const Rational& mu);

} // namespace diffalg
