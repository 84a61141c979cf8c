#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <variant>
#include <vector>

namespace diffalg {

/// Bipartite multigraph X ⊔ Y; parallel edges are repeated pairs.
struct BipartiteMultigraph {
    std::size_t leftSize = 0;
    std::size_t rightSize = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    void addEdge(std::size_t x, std::size_t y, std::size_t multiplicity = 1);
    /// Distinct neighbours of x, ascending.
    std::vector<std::size_t> neighbours(std::size_t x) const;
    std::size_t leftDegree(std::size_t x) const;
    std::size_t rightDegree(std::size_t y) const;
    /// Edge multiplicities c_{x,y}.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> multiplicities() const;
};

/// Pairs (x, y); x's distinct, y's distinct.
using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

/// S ⊆ X with |N(S)| < |S|.
struct HallViolation {
    std::vector<std::size_t> set;
    std::vector<std::size_t> neighbourhood;
};

/// A saturated matching of X, or a set witnessing that Hall's condition fails.
std::variant<Matching, HallViolation> hallMatching(const BipartiteMultigraph& g);

/// Splits a k-regular bipartite multigraph into k perfect matchings whose
/// union (with multiplicity) is the edge multiset.
std::vector<Matching> decomposeRegular(const BipartiteMultigraph& g, std::size_t k);

/// successor[v] is the unique out-neighbour of v (no self-loops). Returns the
/// cycle first closed by the walk from vertex 0.
std::vector<std::size_t> findDirectedCycle(const std::vector<std::size_t>& successor);

} // namespace diffalg
