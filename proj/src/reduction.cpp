#include "diffalg/reduction.hpp"
#include "diffalg/errors.hpp"

#include <algorithm>
#include <set>

namespace diffalg {

const char* toString(DivisionMode m)
{
    return m == DivisionMode::full ? "full" : "partial";
}

namespace {

struct Divisor {
    const DiffPoly* g;
    Derivative lead;
    std::uint32_t degree;
    DiffPoly sep;
    DiffPoly init;
};

Divisor prepare(const DiffPoly& g, const Ranking& ranking, std::optional<std::size_t> var)
{
    if (g.isZero())
        throw Error("division by the zero polynomial");
    if (g.isConstant())
        throw Error("division by a constant polynomial");
    Derivative l = var ? leaderIn(g, *var) : leader(g, ranking);
    auto coeffs = g.coefficientsIn(l);
    return {&g, l, static_cast<std::uint32_t>(coeffs.size() - 1), g.partial(l), coeffs.back()};
}

bool canReduce(const Derivative& d, std::uint32_t degInR, const Divisor& div, DivisionMode mode)
{
    if (d.var != div.lead.var || d.order < div.lead.order)
        return false;
    if (d.order > div.lead.order)
        return true;
    return mode == DivisionMode::full && degInR >= div.degree;
}

bool reducedAgainst(const DiffPoly& f, const Divisor& div, DivisionMode mode)
{
    for (const auto& d : f.derivatives())
        if (canReduce(d, f.degreeIn(d), div, mode))
            return false;
    return true;
}

} // namespace

DivisionCertificate rittDivide(const DiffPoly& f, const std::vector<DiffPoly>& divisors, DivisionMode mode,
                               const Ranking& ranking, std::optional<std::size_t> var)
{
    const RingPtr& ring = f.ring();
    std::vector<Divisor> divs;
    for (const auto& g : divisors) {
        if (!sameRing(ring, g.ring()))
            throw Error("dividend and divisor over different rings");
        divs.push_back(prepare(g, ranking, var));
    }

    DivisionCertificate cert{DiffPoly::constant(ring, 1), {}, f, mode, {}};
    for (std::size_t i = 0; i < divs.size(); ++i)
        cert.quotients.emplace_back(ring);

    std::optional<std::pair<Derivative, std::uint32_t>> last;
    for (;;) {
        DiffPoly& r = cert.remainder;
        auto ds = r.derivatives();
        std::sort(ds.begin(), ds.end(), [&](const Derivative& a, const Derivative& b) { return ranking.less(b, a); });

        const Divisor* use = nullptr;
        std::size_t useIndex = 0;
        Derivative delta;
        std::uint32_t e = 0;
        for (const auto& d : ds) {
            std::uint32_t deg = r.degreeIn(d);
            for (std::size_t i = 0; i < divs.size(); ++i) {
                if (canReduce(d, deg, divs[i], mode)) {
                    use = &divs[i];
                    useIndex = i;
                    break;
                }
            }
            if (use) {
                delta = d;
                e = deg;
                break;
            }
        }
        if (!use)
            break;

        if (last) {
            auto c = ranking.compare(delta, last->first);
            if (c > 0 || (c == 0 && e >= last->second))
                throw InternalInvariantViolation("Ritt division: reduction measure did not decrease");
        }
        last = {delta, e};

        DiffPoly ce = r.coefficientsIn(delta)[e];
        std::int64_t k = delta.order - use->lead.order;
        DiffPoly mult(ring);
        LinearDifferentialOperator step(ring);
        if (k > 0) {
            // ∂^k g = S_g·δ + (terms below δ)
            mult = use->sep;
            DiffPoly coeff = ce * DiffPoly::monomial(ring, Monomial(delta, e - 1));
            step.addTerm(k, coeff);
        } else {
            mult = use->init;
            DiffPoly coeff = ce * DiffPoly::monomial(ring, Monomial(delta, e - use->degree));
            step.addTerm(0, coeff);
        }
        r = mult * r - applyOperator(step, *use->g);
        cert.s = mult * cert.s;
        for (auto& q : cert.quotients)
            q = q.leftMultiply(mult);
        cert.quotients[useIndex] = cert.quotients[useIndex] + step;
        cert.multipliers.push_back(mult);
    }
    return cert;
}

bool verifyCertificate(const DiffPoly& f, const std::vector<DiffPoly>& divisors, const DivisionCertificate& cert)
{
    if (cert.quotients.size() != divisors.size())
        return false;
    DiffPoly lhs = cert.s * f - cert.remainder;
    for (std::size_t i = 0; i < divisors.size(); ++i)
        lhs -= applyOperator(cert.quotients[i], divisors[i]);
    return lhs.isZero();
}

bool isReducedWrt(const DiffPoly& f, const DiffPoly& g, DivisionMode mode, const Ranking& ranking)
{
    return reducedAgainst(f, prepare(g, ranking, std::nullopt), mode);
}

bool isReducedWrtIn(const DiffPoly& f, const DiffPoly& g, DivisionMode mode, std::size_t var)
{
    return reducedAgainst(f, prepare(g, Ranking::orderly(), var), mode);
}

std::strong_ordering rankCompare(const DiffPoly& a, const DiffPoly& b, const Ranking& ranking)
{
    bool ca = a.isConstant(), cb = b.isConstant();
    if (ca || cb)
        return cb <=> ca;  // constants rank lowest
    Derivative la = leader(a, ranking), lb = leader(b, ranking);
    if (auto c = ranking.compare(la, lb); c != 0)
        return c;
    return a.degreeIn(la) <=> b.degreeIn(lb);
}

std::strong_ordering compareAutoreduced(const AutoreducedSet& a, const AutoreducedSet& b)
{
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = rankCompare(a.elements[i], b.elements[i], a.ranking); c != 0)
            return c;
    return b.size() <=> a.size();
}

bool isAutoreduced(const AutoreducedSet& a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.elements[i].isConstant())
            return false;
        if (i > 0 && rankCompare(a.elements[i - 1], a.elements[i], a.ranking) >= 0)
            return false;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j && !isReducedWrt(a.elements[i], a.elements[j], DivisionMode::full, a.ranking))
                return false;
    }
    return true;
}

AutoreducedSet basicSet(const std::vector<DiffPoly>& basis, const Ranking& ranking)
{
    std::vector<DiffPoly> sorted;
    for (const auto& p : basis)
        if (!p.isConstant())
            sorted.push_back(p);
    std::stable_sort(sorted.begin(), sorted.end(), [&](const DiffPoly& a, const DiffPoly& b) {
        if (auto c = rankCompare(a, b, ranking); c != 0)
            return c < 0;
        // deterministic tie-break: smaller leading monomial first
        return std::prev(a.terms().end())->first < std::prev(b.terms().end())->first;
    });
    AutoreducedSet out{{}, ranking};
    for (const auto& p : sorted) {
        bool ok = true;
        for (const auto& q : out.elements) {
            if (!isReducedWrt(p, q, DivisionMode::full, ranking) || !isReducedWrt(q, p, DivisionMode::full, ranking)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.elements.push_back(p);
    }
    return out;
}

CharSetResult autoreduceLoop(const std::vector<DiffPoly>& generators, const Ranking& ranking, std::size_t maxRounds)
{
    CharSetResult res;
    res.charset.ranking = ranking;
    std::vector<DiffPoly> basis;
    for (const auto& g : generators) {
        if (g.isZero())
            throw Error("autoreduceLoop: zero generator");
        if (g.isConstant()) {
            res.status = CharSetStatus::inconsistent;
            return res;
        }
        basis.push_back(g);
    }
    if (basis.empty()) {
        res.status = CharSetStatus::converged;
        return res;
    }

    std::optional<AutoreducedSet> previous;
    while (res.rounds < maxRounds) {
        ++res.rounds;
        AutoreducedSet a = basicSet(basis, ranking);
        if (previous && compareAutoreduced(a, *previous) >= 0)
            throw InternalInvariantViolation("autoreduceLoop: basic set did not decrease in the induced ordering");
        res.charset = a;

        std::vector<DiffPoly> remainders;
        for (const auto& p : basis) {
            if (std::find(a.elements.begin(), a.elements.end(), p) != a.elements.end())
                continue;
            auto cert = rittDivide(p, a.elements, DivisionMode::full, ranking);
            for (auto& m : cert.multipliers)
                if (std::find(res.multipliers.begin(), res.multipliers.end(), m) == res.multipliers.end())
                    res.multipliers.push_back(m);
            if (cert.remainder.isZero())
                continue;
            if (cert.remainder.isConstant()) {
                res.status = CharSetStatus::inconsistent;
                return res;
            }
            if (std::find(remainders.begin(), remainders.end(), cert.remainder) == remainders.end())
                remainders.push_back(cert.remainder);
        }
        if (remainders.empty()) {
            res.status = CharSetStatus::converged;
            return res;
        }
        basis = a.elements;
        basis.insert(basis.end(), remainders.begin(), remainders.end());
        previous = std::move(a);
    }
    res.status = CharSetStatus::notConverged;
    return res;
}

bool membership(const DiffPoly& f, const AutoreducedSet& charset)
{
    if (f.isZero())
        return true;
    if (charset.empty())
        return false;
    return rittDivide(f, charset.elements, DivisionMode::full, charset.ranking).remainder.isZero();
}

Dimensions dimensions(const AutoreducedSet& charset, std::size_t n)
{
    std::set<std::size_t> vars;
    for (const auto& g : charset.elements)
        vars.insert(leader(g, charset.ranking).var);
    if (vars.size() != charset.size() || charset.size() > n)
        throw InternalInvariantViolation("characteristic set without distinct leading variables");
    Dimensions d;
    d.diffDim = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(charset.size());
    if (charset.size() == n) {
        std::int64_t sum = 0;
        for (const auto& g : charset.elements)
            sum += leader(g, charset.ranking).order;
        d.absDimBound = sum;
    }
    return d;
}

AutoreducedSet eliminationProject(const AutoreducedSet& charset, const std::vector<std::size_t>& keep)
{
    const Ranking& r = charset.ranking;
    if (r.kind() != Ranking::Kind::blockElimination || r.blocks().empty())
        throw Error("eliminationProject needs a block-elimination ranking");
    std::set<std::size_t> lowest(r.blocks().front().begin(), r.blocks().front().end());
    std::set<std::size_t> want(keep.begin(), keep.end());
    if (lowest != want)
        throw Error("eliminationProject: keep-block is not the lowest block of the ranking");
    AutoreducedSet out{{}, r};
    for (const auto& g : charset.elements) {
        bool inside = true;
        for (const auto& d : g.derivatives())
            if (!want.count(d.var))
                inside = false;
        if (!inside)
            break;
        out.elements.push_back(g);
    }
    return out;
}

} // namespace diffalg
