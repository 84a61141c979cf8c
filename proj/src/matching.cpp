#include "diffalg/matching.hpp"
#include "diffalg/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace diffalg {

void BipartiteMultigraph::addEdge(std::size_t x, std::size_t y, std::size_t multiplicity)
{
    if (x >= leftSize || y >= rightSize)
        throw Error("edge (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
    for (std::size_t k = 0; k < multiplicity; ++k)
        edges.emplace_back(x, y);
}

std::vector<std::size_t> BipartiteMultigraph::neighbours(std::size_t x) const
{
    std::set<std::size_t> out;
    for (const auto& [a, b] : edges)
        if (a == x)
            out.insert(b);
    return {out.begin(), out.end()};
}

std::size_t BipartiteMultigraph::leftDegree(std::size_t x) const
{
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](auto& e) { return e.first == x; }));
}

std::size_t BipartiteMultigraph::rightDegree(std::size_t y) const
{
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](auto& e) { return e.second == y; }));
}

std::map<std::pair<std::size_t, std::size_t>, std::size_t> BipartiteMultigraph::multiplicities() const
{
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> c;
    for (const auto& e : edges)
        ++c[e];
    return c;
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

bool augment(std::size_t x, const Adjacency& adj, std::vector<long>& matchR, std::vector<bool>& seen)
{
    for (std::size_t y : adj[x]) {
        if (seen[y])
            continue;
        seen[y] = true;
        if (matchR[y] < 0 || augment(static_cast<std::size_t>(matchR[y]), adj, matchR, seen)) {
            matchR[y] = static_cast<long>(x);
            return true;
        }
    }
    return false;
}

} // namespace

std::variant<Matching, HallViolation> hallMatching(const BipartiteMultigraph& g)
{
    for (const auto& [x, y] : g.edges)
        if (x >= g.leftSize || y >= g.rightSize)
            throw Error("edge out of range");
    Adjacency adj(g.leftSize);
    for (std::size_t x = 0; x < g.leftSize; ++x)
        adj[x] = g.neighbours(x);

    std::vector<long> matchR(g.rightSize, -1);
    for (std::size_t x = 0; x < g.leftSize; ++x) {
        std::vector<bool> seen(g.rightSize, false);
        if (augment(x, adj, matchR, seen))
            continue;
        // Alternating search from the unmatched x: the reachable left
        // vertices have exactly the reachable right vertices as
        // neighbourhood, all matched, and one more left vertex than right.
        std::vector<long> matchL(g.leftSize, -1);
        for (std::size_t y = 0; y < g.rightSize; ++y)
            if (matchR[y] >= 0)
                matchL[static_cast<std::size_t>(matchR[y])] = static_cast<long>(y);
        std::set<std::size_t> left{x}, right;
        std::deque<std::size_t> queue{x};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t y : adj[u]) {
                if (!right.insert(y).second)
                    continue;
                if (matchR[y] < 0)
                    throw InternalInvariantViolation("hallMatching: augmenting path missed");
                std::size_t w = static_cast<std::size_t>(matchR[y]);
                if (left.insert(w).second)
                    queue.push_back(w);
            }
        }
        return HallViolation{{left.begin(), left.end()}, {right.begin(), right.end()}};
    }
    Matching m;
    for (std::size_t y = 0; y < g.rightSize; ++y)
        if (matchR[y] >= 0)
            m.emplace_back(static_cast<std::size_t>(matchR[y]), y);
    std::sort(m.begin(), m.end());
    return m;
}

std::vector<Matching> decomposeRegular(const BipartiteMultigraph& g, std::size_t k)
{
    if (k == 0)
        throw Error("decomposeRegular: k must be positive");
    if (g.leftSize != g.rightSize)
        throw Error("decomposeRegular: sides of different sizes cannot be regular");
    for (std::size_t x = 0; x < g.leftSize; ++x)
        if (g.leftDegree(x) != k)
            throw Error("decomposeRegular: left vertex " + std::to_string(x) + " has degree "
                        + std::to_string(g.leftDegree(x)));
    for (std::size_t y = 0; y < g.rightSize; ++y)
        if (g.rightDegree(y) != k)
            throw Error("decomposeRegular: right vertex " + std::to_string(y) + " has degree "
                        + std::to_string(g.rightDegree(y)));

    auto counts = g.multiplicities();
    std::vector<Matching> out;
    for (std::size_t round = 0; round < k; ++round) {
        BipartiteMultigraph rest{g.leftSize, g.rightSize, {}};
        for (const auto& [e, c] : counts)
            if (c > 0)
                rest.addEdge(e.first, e.second);
        auto r = hallMatching(rest);
        if (!std::holds_alternative<Matching>(r))
            throw InternalInvariantViolation("regular bipartite multigraph without a perfect matching");
        Matching m = std::get<Matching>(r);
        for (const auto& e : m)
            --counts[e];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<std::size_t> findDirectedCycle(const std::vector<std::size_t>& successor)
{
    const std::size_t n = successor.size();
    if (n == 0)
        throw Error("findDirectedCycle: empty graph");
    for (std::size_t v = 0; v < n; ++v) {
        if (successor[v] >= n)
            throw Error("findDirectedCycle: successor of " + std::to_string(v) + " out of range");
        if (successor[v] == v)
            throw Error("findDirectedCycle: self-loop at " + std::to_string(v));
    }
    std::vector<long> position(n, -1);
    std::vector<std::size_t> walk;
    std::size_t v = 0;
    while (position[v] < 0) {
        position[v] = static_cast<long>(walk.size());
        walk.push_back(v);
        v = successor[v];
    }
    return {walk.begin() + position[v], walk.end()};
}

} // namespace diffalg
