#include "oracles.hpp"

#include "diffalg/errors.hpp"
#include "diffalg/matching.hpp"

#include <doctest.h>

#include <numeric>

using namespace diffalg;

namespace {

BipartiteMultigraph complete(std::size_t n)
{
    BipartiteMultigraph g{n, n, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            g.addEdge(x, y);
    return g;
}

// Union of k random permutation matchings: k-regular with multiplicities.
BipartiteMultigraph randomRegular(std::size_t n, std::size_t k, std::mt19937& rng)
{
    BipartiteMultigraph g{n, n, {}};
    std::vector<std::size_t> p(n);
    for (std::size_t r = 0; r < k; ++r) {
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        for (std::size_t x = 0; x < n; ++x)
            g.addEdge(x, p[x]);
    }
    return g;
}

void checkDecomposition(const BipartiteMultigraph& g, std::size_t k)
{
    auto ms = decomposeRegular(g, k);
    REQUIRE(ms.size() == k);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
    for (const auto& m : ms) {
        CHECK(m.size() == g.leftSize);
        std::set<std::size_t> xs, ys;
        for (const auto& e : m) {
            xs.insert(e.first);
            ys.insert(e.second);
            ++used[e];
        }
        CHECK(xs.size() == g.leftSize);
        CHECK(ys.size() == g.rightSize);
    }
    CHECK(used == g.multiplicities());
}

} // namespace

TEST_CASE("Hall matching")
{
    auto m = hallMatching(complete(3));
    REQUIRE(std::holds_alternative<Matching>(m));
    CHECK(std::get<Matching>(m).size() == 3);

    BipartiteMultigraph g{2, 2, {}};
    g.addEdge(0, 0);
    g.addEdge(1, 0);
    auto v = hallMatching(g);
    REQUIRE(std::holds_alternative<HallViolation>(v));
    CHECK(std::get<HallViolation>(v).set == std::vector<std::size_t>{0, 1});
    CHECK(std::get<HallViolation>(v).neighbourhood == std::vector<std::size_t>{0});
}

TEST_CASE("Hall matching agrees with exhaustive search")
{
    std::mt19937 rng(53);
    for (int k = 0; k < 200; ++k) {
        std::size_t l = 1 + rng() % 5, r = 1 + rng() % 5;
        BipartiteMultigraph g{l, r, {}};
        for (std::size_t x = 0; x < l; ++x)
            for (std::size_t y = 0; y < r; ++y)
                if (rng() % 3 == 0)
                    g.addEdge(x, y);
        auto res = hallMatching(g);
        bool saturates = oracle::maxMatchingSize(g) == l;
        CHECK(std::holds_alternative<Matching>(res) == saturates);
        if (auto* viol = std::get_if<HallViolation>(&res)) {
            std::set<std::size_t> nb;
            for (std::size_t x : viol->set)
                for (std::size_t y : g.neighbours(x))
                    nb.insert(y);
            CHECK(nb.size() < viol->set.size());
            CHECK(std::vector<std::size_t>(nb.begin(), nb.end()) == viol->neighbourhood);
        }
    }
}

TEST_CASE("regular bipartite decomposition")
{
    checkDecomposition(complete(3), 3);

    // two disjoint 8-cycles on a 4+4 and a 4+4 vertex set
    BipartiteMultigraph c{8, 8, {}};
    for (std::size_t base : {0u, 4u})
        for (std::size_t i = 0; i < 4; ++i) {
            c.addEdge(base + i, base + i);
            c.addEdge(base + i, base + (i + 1) % 4);
        }
    checkDecomposition(c, 2);

    BipartiteMultigraph one{3, 3, {}};
    one.addEdge(0, 2);
    one.addEdge(1, 0);
    one.addEdge(2, 1);
    auto ms = decomposeRegular(one, 1);
    REQUIRE(ms.size() == 1);
    CHECK(std::set(ms[0].begin(), ms[0].end()) == std::set(one.edges.begin(), one.edges.end()));

    BipartiteMultigraph bad{2, 2, {}};
    bad.addEdge(0, 0, 2);
    bad.addEdge(1, 1);
    CHECK_THROWS_AS(decomposeRegular(bad, 2), Error);

    std::mt19937 rng(59);
    for (int t = 0; t < 50; ++t) {
        std::size_t k = 1 + rng() % 4;
        checkDecomposition(randomRegular(1 + rng() % 8, k, rng), k);
    }
}

TEST_CASE("directed cycle in a functional graph")
{
    CHECK(findDirectedCycle({1, 2, 0}) == std::vector<std::size_t>{0, 1, 2});
    CHECK(findDirectedCycle({1, 0, 0}) == std::vector<std::size_t>{0, 1});
    CHECK(findDirectedCycle({2, 0, 3, 2}) == std::vector<std::size_t>{2, 3});
    CHECK_THROWS_AS(findDirectedCycle({0}), Error);
    CHECK_THROWS_AS(findDirectedCycle({5, 0}), Error);
}
