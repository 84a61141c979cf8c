#include "fixtures.hpp"
#include "oracles.hpp"

#include "diffalg/corpus.hpp"
#include "diffalg/engine.hpp"
#include "diffalg/errors.hpp"

#include <doctest.h>

using namespace diffalg;
using fixtures::P;

namespace {

System load(const std::string& name)
{
    auto parsed = parseSystem(corpusSystem(name).text);
    return System::of(parsed.equations, parsed.labels);
}

std::vector<ExtInt> ints(std::initializer_list<int> v)
{
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("Jacobi numbers of the worked systems")
{
    auto s = load("j_increasing");
    CHECK(s.jacobi(Convention::strong) == ExtInt(101));
    CHECK(s.jacobi(Convention::weak) == ExtInt(101));
    CHECK(oracle::tdet(s.matrix()) == ExtInt(101));
    auto ws = load("weak_strong");
    CHECK(ws.jacobi(Convention::weak) == ExtInt(18));
    CHECK(ws.jacobi(Convention::strong) == ExtInt(2));
}

TEST_CASE("scripted divisions")
{
    auto s = load("j_increasing");
    const auto orderly = Ranking::orderly();
    auto t = scriptedDivide(s, parseScript("0/2@x;1/2@x", *s.equations[0].ring()), orderly);
    CHECK(t.jWeakSequence == ints({101, 150, 101}));
    CHECK(t.jSequence.size() == 3);
    for (const auto& st : t.steps) {
        REQUIRE(st.certificate);
        CHECK(st.by == 2);
    }
    // untouched rows stay as they were
    CHECK(t.steps[0].matrixAfter.at(1, 0) == t.steps[0].matrixBefore.at(1, 0));
    CHECK(t.steps[0].matrixAfter.at(2, 0) == t.steps[0].matrixBefore.at(2, 0));

    auto sf = load("second_form_counterexample");
    auto t2 = scriptedDivide(sf, parseScript("2/0@x", *sf.equations[0].ring()), orderly);
    REQUIRE(t2.steps.size() == 1);
    CHECK(t2.steps[0].matrixBefore == OrderMatrix::fromRows({{1, 2, 3}, {1, 1, 1}, {2, 1, 1}}));
    CHECK(t2.steps[0].matrixAfter == OrderMatrix::fromRows({{1, 2, 3}, {1, 1, 1}, {1, 3, 4}}));
    CHECK(t2.jSequence == ints({6, 7}));

    auto t0 = scriptedDivide(s, {}, orderly);
    CHECK(t0.steps.empty());
    CHECK(t0.jSequence == ints({101}));

    const Ring& ring = *s.equations[0].ring();
    CHECK_THROWS_AS(parseScript("0/2", ring), Error);
    CHECK_THROWS_AS(parseScript("0/2@q", ring), Error);
    CHECK_THROWS_AS(scriptedDivide(s, parseScript("0/0@x", ring), orderly), Error);
    CHECK_THROWS_AS(scriptedDivide(s, parseScript("0/7@x", ring), orderly), Error);
    CHECK_THROWS_AS(scriptedDivide(s, parseScript("2/0@x", ring), orderly), Error);
}

TEST_CASE("form steps refuse matrices outside the form")
{
    auto sf = load("second_form_counterexample");
    CHECK_THROWS_AS(stepSecondForm(sf, Ranking::orderly()), Error);
    CHECK_THROWS_AS(stepFirstForm(sf, Ranking::orderly()), Error);
}

TEST_CASE("first-form step on a linear system")
{
    auto r = fixtures::ring(2);
    auto s = System::of({P("x' + y", r), P("x'' - y'", r)});
    REQUIRE(detectFirstForm(s.matrix()));
    auto [next, st] = stepFirstForm(s, Ranking::orderly());
    CHECK(st.jAfter <= st.jBefore);
    CHECK(rittCompare(st.matrixAfter, st.matrixBefore) == std::strong_ordering::less);
    CHECK(next.equations[0] == s.equations[0]);
    CHECK(next.equations[1] == P("-2*y'", r));
    CHECK(oracle::tdet(next.matrix()) == st.jAfter);
}

TEST_CASE("degenerate pivots are signalled")
{
    auto r = fixtures::ring(2);
    auto s = System::of({P("(x')^2 + y", r), P("(x')^3 + y'", r)});
    REQUIRE(detectFirstForm(s.matrix()));
    CHECK_THROWS_AS(stepFirstForm(s, Ranking::orderly()), DegenerateSituation);
    AutoreducedSet onXconst{{P("x'", r)}, Ranking::orderly()};
    CHECK_THROWS_AS(stepFirstForm(s, Ranking::orderly(), &onXconst), DegenerateSituation);
    AutoreducedSet generic{{P("(x')^2 + y", r)}, Ranking::orderly()};
    auto [next, st] = stepFirstForm(s, Ranking::orderly(), &generic);
    CHECK(st.jAfter <= st.jBefore);
    try {
        stepFirstForm(s, Ranking::orderly());
    } catch (const DegenerateSituation& e) {
        CHECK(e.pivot() == 0);
        CHECK(e.var() == 0);
    }
}

TEST_CASE("random form steps never raise J")
{
    std::mt19937 rng(61);
    int first = 0, second = 0;
    for (int k = 0; k < 2000 && (first < 40 || second < 40); ++k) {
        auto eqs = fixtures::randomUnitSeparantSystem(2 + rng() % 3, rng, 4, k % 2 == 0);
        auto s = System::of(eqs);
        auto a = s.matrix();
        if (oracle::tdet(a).isNegInf())
            continue;
        try {
            auto c = toFirstForm(a);
            auto [next, st] = stepFirstForm(s.permuted(c), Ranking::orderly());
            CHECK(st.jAfter <= st.jBefore);
            CHECK(oracle::tdet(st.matrixAfter) == st.jAfter);
            ++first;
        } catch (const HypothesisFailure&) {
            FormCertificate c;
            try {
                c = toSecondForm(a);
            } catch (const HypothesisFailure&) {
                continue;
            }
            auto [next, st] = stepSecondForm(s.permuted(c), Ranking::orderly());
            CHECK(st.jAfter <= st.jBefore);
            ++second;
        }
    }
    CHECK(first >= 40);
    CHECK(second >= 40);
}

TEST_CASE("linear reduction")
{
    auto tri = load("triangular");
    auto res = linearReduce(tri, Ranking::orderly());
    CHECK(res.triangular);
    CHECK(res.dims.diffDim == 0);
    CHECK(res.dims.absDimBound == 2);
    CHECK(res.initialJ == ExtInt(2));

    auto ji = load("j_increasing");
    auto big = linearReduce(ji, Ranking::orderly());
    REQUIRE(big.dims.absDimBound);
    CHECK(ExtInt(*big.dims.absDimBound) <= ExtInt(101));
    for (std::size_t i = 1; i < big.trace.jSequence.size(); ++i)
        CHECK(big.trace.jSequence[i] <= big.trace.jSequence[i - 1]);

    auto r = fixtures::ring(2);
    CHECK_THROWS_AS(linearReduce(System::of({P("x' - x", r), P("x' - x + 1", r)}), Ranking::orderly()),
                    InconsistentSystem);
    CHECK_THROWS_AS(linearReduce(System::of({P("(x')^2", r), P("y", r)}), Ranking::orderly()), Error);
    CHECK_THROWS_AS(linearReduce(System::of({P("x'", r)}), Ranking::orderly()), Error);
    CHECK(linearStepBudget(tri) == 10 * 2 * 2);
}
