// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "fixtures.hpp"
#include "oracles.hpp"

#include "diffalg/corpus.hpp"
#include "diffalg/engine.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/matching.hpp"
#include "diffalg/pencil.hpp"

#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace diffalg;
using fixtures::P;

namespace {

struct Outcome {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string firstFailure;

    void expect(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok && failures++ == 0)
            firstFailure = what;
    }
};

System load(const std::string& name)
{
    auto parsed = parseSystem(corpusSystem(name).text);
    return System::of(parsed.equations, parsed.labels);
}

std::string seq(const std::vector<ExtInt>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].str();
    return s;
}

OrderMatrix M(const std::vector<std::vector<ExtInt>>& rows)
{
    return OrderMatrix::fromRows(rows);
}

// ---- 1 -------------------------------------------------------------------
void goldenJacobi(Outcome& out)
{
    auto ji = load("j_increasing");
    out.expect(ji.jacobi(Convention::weak) == ExtInt(101), "J_weak(j_increasing)");
    out.expect(ji.jacobi(Convention::strong) == ExtInt(101), "J_strong(j_increasing)");
    out.expect(oracle::tdet(M({{1, 18}, {0, 1}})) == ExtInt(18) && tdet(M({{1, 18}, {0, 1}})).value == ExtInt(18),
               "J([[1,18],[0,1]])");
    const ExtInt ni = ExtInt::negInf();
    out.expect(tdet(M({{1, 18}, {ni, 1}})).value == ExtInt(2), "J([[1,18],[-inf,1]])");
    auto ws = load("weak_strong");
    out.expect(ws.jacobi(Convention::weak) == ExtInt(18) && ws.jacobi(Convention::strong) == ExtInt(2),
               "weak/strong system 18 vs 2");

    auto sf = load("second_form_counterexample");
    auto t = scriptedDivide(sf, parseScript("2/0@x", *sf.equations[0].ring()), Ranking::orderly());
    out.expect(t.steps.size() == 1 && t.steps[0].matrixBefore == M({{1, 2, 3}, {1, 1, 1}, {2, 1, 1}}),
               "matrix before the scripted division");
    out.expect(t.steps.size() == 1 && t.steps[0].matrixAfter == M({{1, 2, 3}, {1, 1, 1}, {1, 3, 4}}),
               "matrix after the scripted division");
    out.expect(seq(t.jSequence) == "6,7", "J 6 -> 7, got " + seq(t.jSequence));
}

// ---- 2 -------------------------------------------------------------------
void scriptedTrace(Outcome& out)
{
    auto ji = load("j_increasing");
    auto t = scriptedDivide(ji, parseScript("0/2@x;1/2@x", *ji.equations[0].ring()), Ranking::orderly());
    out.expect(seq(t.jWeakSequence) == "101,150,101", "J sequence " + seq(t.jWeakSequence));
}

// ---- 3 -------------------------------------------------------------------
void divisionCertificates(Outcome& out)
{
    std::mt19937 rng(2024);
    const auto orderly = Ranking::orderly();
    for (int k = 0; k < 500; ++k) {
        auto r = fixtures::ring(1 + rng() % 3);
        DiffPoly f = fixtures::randomPoly(r, rng, {4, 3, 4, false, true});
        std::vector<DiffPoly> gs;
        const std::size_t m = k % 2 ? 1 : 2 + rng() % 2;
        const DivisionMode mode = (k / 2) % 2 ? DivisionMode::full : DivisionMode::partial;
        const bool full = mode == DivisionMode::full;
        std::optional<std::size_t> var;
        if (k % 5 == 0)
            var = rng() % r->size();
        while (gs.size() < m) {
            DiffPoly g = fixtures::randomPoly(r, rng, {3, 3, 3, false, true});
            if (!var || g.involvesVar(*var))
                gs.push_back(g);
        }
        std::ostringstream what;
        what << "division #" << k << " of " << f.str();
        try {
            auto c = rittDivide(f, gs, mode, orderly, var);
            auto residual = oracle::certificateResidual(f, gs, c.quotients, c.s, c.remainder);
            out.expect(residual.empty() && c.quotients.size() == gs.size(), what.str() + ": identity fails");
            auto rem = oracle::fromDiffPoly(c.remainder);
            for (const auto& g : gs) {
                Derivative l = var ? leaderIn(g, *var) : leader(g, orderly);
                out.expect(oracle::reducedAgainst(rem, {l.var, l.order}, g.degreeIn(l), full),
                           what.str() + ": remainder " + c.remainder.str() + " not reduced by " + g.str());
            }
        } catch (const std::exception& e) {
            out.expect(false, what.str() + ": " + e.what());
        }
    }
}

// ---- 4 -------------------------------------------------------------------
void cycleTrick(Outcome& out)
{
    std::mt19937 rng(77);
    int done = 0;
    while (done < 300) {
        auto a = fixtures::randomMatrix(1 + rng() % 6, rng);
        ExtInt best = oracle::tdet(a);
        if (best.isNegInf())
            continue;
        ++done;
        auto d = diagonalize(a);
        const std::size_t n = d.rows();
        ExtInt diagSum(0);
        for (std::size_t i = 0; i < n; ++i)
            diagSum = diagSum + d.at(i, i);
        out.expect(diagSum == best, "diagonal is not a maximal transversal");
        for (const auto& p : allPerms(n))
            for (const auto& cyc : cycleDecompose(p)) {
                ExtInt lhs(0), rhs(0);
                for (std::size_t i = 0; i < cyc.size(); ++i) {
                    lhs = lhs + d.at(cyc[i], cyc[(i + 1) % cyc.size()]);
                    rhs = rhs + d.at(cyc[i], cyc[i]);
                }
                out.expect(lhs <= rhs && cyclicSum(d, cyc) == lhs, "cycle " + permToString(cycleToPerm(cyc, n)));
            }
    }
}

// ---- 5 -------------------------------------------------------------------
void formMonotonicity(Outcome& out)
{
    std::mt19937 rng(5150);
    int first = 0, second = 0, attempts = 0;
    while ((first < 200 || second < 200) && attempts < 200000) {
        ++attempts;
        const bool linear = attempts % 2 == 0;
        auto s = System::of(fixtures::randomUnitSeparantSystem(2 + rng() % 3, rng, 5, linear));
        auto a = s.matrix();
        if (oracle::tdet(a).isNegInf())
            continue;
        std::optional<FormCertificate> cert;
        StepKind kind = StepKind::firstForm;
        try {
            cert = toFirstForm(a);
        } catch (const HypothesisFailure&) {
            try {
                cert = toSecondForm(a);
                kind = StepKind::secondForm;
            } catch (const HypothesisFailure&) {
                continue;
            }
        }
        if ((kind == StepKind::firstForm ? first : second) >= 200)
            continue;
        (kind == StepKind::firstForm ? first : second) += 1;
        System normal = s.permuted(*cert);
        try {
            auto [next, st] = kind == StepKind::firstForm ? stepFirstForm(normal, Ranking::orderly())
                                                          : stepSecondForm(normal, Ranking::orderly());
            ExtInt before = oracle::tdet(normal.matrix()), after = oracle::tdet(next.matrix());
            out.expect(after <= before, "J rose from " + before.str() + " to " + after.str());
            bool changed = !(next.equations[st.divided] == normal.equations[st.divided]);
            out.expect(!changed || rittCompare(next.matrix(), normal.matrix()) == std::strong_ordering::less,
                       "matrix did not descend in Ritt's ordering");
        } catch (const std::exception& e) {
            out.expect(false, std::string(toString(kind)) + " step: " + e.what());
        }
    }
    out.expect(first == 200 && second == 200,
               "only " + std::to_string(first) + " first-form and " + std::to_string(second) + " second-form cases");
}

// ---- 6 -------------------------------------------------------------------
bool secondFormHypotheses(const OrderMatrix& a)
{
    const std::size_t n = a.rows();
    ExtInt best = ExtInt::negInf(), colMax = ExtInt::negInf();
    std::size_t finite = 0;
    for (std::size_t i = 0; i < n; ++i) {
        colMax = max(colMax, a.at(i, 0));
        finite += a.at(i, 0).isFinite() ? 1 : 0;
    }
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::size_t>> maximizers;
    do {
        ExtInt v(0);
        for (std::size_t i = 0; i < n; ++i)
            v = v + a.at(i, p[i]);
        if (v > best) {
            best = v;
            maximizers.clear();
        }
        if (v == best)
            maximizers.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    if (best.isNegInf() || finite < 2)
        return false;
    for (const auto& rho : maximizers)
        for (std::size_t i = 0; i < n; ++i)
            if (rho[i] == 0 && a.at(i, 0) != colMax)
                return false;
    return true;
}

void gapFix(Outcome& out)
{
    std::mt19937 rng(8080);
    int done = 0;
    while (done < 300) {
        const std::size_t n = 3 + static_cast<std::size_t>(done % 3);
        auto a = fixtures::randomMatrix(n, rng);
        if (!secondFormHypotheses(a))
            continue;
        ++done;
        try {
            auto c = toSecondForm(a);
            out.expect(detectSecondForm(c.apply(a)) && c.colPerm[0] == 0, "certificate fails the detector");
        } catch (const std::exception& e) {
            out.expect(false, std::string("toSecondForm: ") + e.what() + "\n" + a.render());
        }
    }
    for (int t = 0; t < 100; ++t) {
        const std::size_t side = 1 + rng() % 8, k = 1 + rng() % 4;
        BipartiteMultigraph g{side, side, {}};
        std::vector<std::size_t> p(side);
        for (std::size_t r = 0; r < k; ++r) {
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            for (std::size_t x = 0; x < side; ++x)
                g.addEdge(x, p[x]);
        }
        try {
            auto ms = decomposeRegular(g, k);
            std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
            bool perfect = ms.size() == k;
            for (const auto& m : ms) {
                std::set<std::size_t> xs, ys;
                for (const auto& e : m) {
                    xs.insert(e.first);
                    ys.insert(e.second);
                    ++used[e];
                }
                perfect = perfect && m.size() == side && xs.size() == side && ys.size() == side;
            }
            out.expect(perfect && used == g.multiplicities(), "regular decomposition is not a perfect cover");
        } catch (const std::exception& e) {
            out.expect(false, std::string("decomposeRegular: ") + e.what());
        }
    }
}

// ---- 7 -------------------------------------------------------------------
void linearJacobi(Outcome& out, std::size_t& inconsistent, std::size_t& bounded)
{
    std::mt19937 rng(4242);
    for (int k = 0; k < 100; ++k) {
        auto s = System::of(fixtures::randomUnitSeparantSystem(1 + rng() % 4, rng, 5, true));
        std::string what = "system #" + std::to_string(k);
        try {
            auto res = linearReduce(s, Ranking::orderly());
            const auto& js = res.trace.jSequence;
            bool monotone = !js.empty() && js.front() == oracle::tdet(s.matrix());
            for (std::size_t i = 1; i < js.size(); ++i)
                monotone = monotone && js[i] <= js[i - 1];
            out.expect(monotone, what + ": J not non-increasing: " + seq(js));
            out.expect(res.trace.steps.size() <= res.budget + s.equations.size(), what + ": over budget");
            if (res.dims.diffDim == 0 && res.dims.absDimBound) {
                ++bounded;
                out.expect(ExtInt(*res.dims.absDimBound) <= res.initialJ,
                           what + ": dimension bound " + std::to_string(*res.dims.absDimBound) + " > J "
                               + res.initialJ.str());
            }
        } catch (const InconsistentSystem&) {
            ++inconsistent;
        } catch (const std::exception& e) {
            out.expect(false, what + ": " + e.what());
        }
    }
}

// ---- 8 -------------------------------------------------------------------
// (order, degree-in-leader) of p in var, −1 order for absent.
std::pair<std::int64_t, unsigned> rankIn(const oracle::Poly& p, std::size_t var)
{
    std::int64_t o = oracle::orderIn(p, var);
    return {o, o < 0 ? 0 : oracle::degreeIn(p, {var, o})};
}

void pencils(Outcome& out)
{
    std::mt19937 rng(999);
    int done = 0;
    while (done < 200) {
        auto r = fixtures::ring(1 + rng() % 3);
        std::vector<DiffPoly> sys;
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i)
            sys.push_back(fixtures::randomPoly(r, rng, {3, 3, 4, false, true}));
        const std::size_t pivot = rng() % sys.size();
        const std::size_t var = rng() % r->size();
        if (!sys[pivot].involvesVar(var))
            continue;
        ++done;
        const DiffPoly& u = sys[pivot];
        std::string what = "pivot " + u.str();
        try {
            auto pen = buildPencil(sys, pivot, var);
            auto U = oracle::fromDiffPoly(u);
            auto S = oracle::fromDiffPoly(pen.separant), T = oracle::fromDiffPoly(pen.coseparant);
            std::int64_t o = oracle::orderIn(U, var);
            unsigned d = oracle::degreeIn(U, {var, o});
            oracle::Poly ell{{oracle::Mono{{{var, o}, 1}}, Rational(1)}};
            oracle::Poly dU = oracle::mul(U, {{oracle::Mono{}, Rational(d)}});
            out.expect(oracle::add(T, oracle::mul(ell, S)) == dU, what + ": d*u != t + l*s");
            out.expect(rankIn(S, var) < rankIn(U, var) && rankIn(T, var) < rankIn(U, var),
                       what + ": s or t not lower than u");
            auto B0 = oracle::fromDiffPoly(pen.baseGenerators.at(0)), B1 = oracle::fromDiffPoly(pen.baseGenerators.at(1));
            out.expect(oracle::add(B0, oracle::mul(ell, B1)) == dU, what + ": u not rebuilt from base generators");
            Rational mu(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 3));
            auto fiber = fiberAt(pen, mu);
            out.expect(rankIn(oracle::fromDiffPoly(fiber[pivot]), var) < rankIn(U, var),
                       what + ": fiber pivot not rank-lower");
        } catch (const std::exception& e) {
            out.expect(false, what + ": " + e.what());
        }
    }
}

// ---- 9 -------------------------------------------------------------------
void tropicalOracle(Outcome& out)
{
    std::mt19937 rng(31337);
    for (int k = 0; k < 300; ++k) {
        const double pNeg = std::vector<double>{0.0, 0.2, 0.5, 0.8}[k % 4];
        auto a = fixtures::randomMatrix(1 + rng() % 7, rng, pNeg);
        auto bf = tdetBruteForce(a), as = tdetAssignment(a);
        out.expect(bf.value == as.value && bf.value == oracle::tdet(a),
                   "tdet disagreement: brute " + bf.value.str() + " assignment " + as.value.str());
    }
    const auto s3 = allPerms(3);
    for (int k = 0; k < 10; ++k) {
        auto a = fixtures::randomMatrix(3, rng, k % 2 ? 0.3 : 0.0);
        for (const auto& sigma : s3)
            for (const auto& tau : s3) {
                auto b = permute(a, sigma, tau);
                for (const auto& rho : s3) {
                    Perm w = compose(inverse(tau), compose(rho, sigma));
                    ExtInt vb(0), va(0);
                    for (std::size_t i = 0; i < 3; ++i) {
                        vb = vb + a.at(sigma[i], tau[w[i]]);
                        va = va + a.at(i, rho[i]);
                    }
                    out.expect(transversalValue(b, w) == vb && vb == va, "witness law fails");
                }
            }
    }
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        std::function<void(Outcome&)> run;
        std::string extra;
    };
    std::size_t inconsistent = 0, bounded = 0;
    std::vector<Criterion> all = {
        {1, "golden Jacobi numbers", goldenJacobi, {}},
        {2, "scripted trace 101,150,101", scriptedTrace, {}},
        {3, "division certificate soundness", divisionCertificates, {}},
        {4, "Ritt's cycle trick", cycleTrick, {}},
        {5, "form-preserving monotonicity", formMonotonicity, {}},
        {6, "gap-fix existence and regular decomposition", gapFix, {}},
        {7, "linear Jacobi bound", [&](Outcome& o) { linearJacobi(o, inconsistent, bounded); }, {}},
        {8, "pencil identities", pencils, {}},
        {9, "tropical oracle agreement", tropicalOracle, {}},
    };
    int failed = 0;
    for (auto& c : all) {
        Outcome o;
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("uncaught: ") + e.what());
        }
        if (c.id == 7)
            c.extra = " (" + std::to_string(bounded) + " bounded, " + std::to_string(inconsistent) + " inconsistent)";
        bool pass = o.failures == 0 && o.checked > 0;
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << o.checked
                  << " checks" << (o.failures ? ", " + std::to_string(o.failures) + " failed" : "") << "]"
                  << c.extra << "\n";
        if (!pass)
            std::cout << "      first failure: " << o.firstFailure << "\n";
    }
    return failed ? 1 : 0;
}
