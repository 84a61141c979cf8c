// Random generators shared by the unit and acceptance tests.
#pragma once

#include "diffalg/diffpoly.hpp"
#include "diffalg/parser.hpp"
#include "diffalg/tropical.hpp"

#include <random>

namespace fixtures {

using namespace diffalg;

inline RingPtr ring(std::size_t n)
{
    static const std::vector<std::string> names = {"x", "y", "z", "u", "v", "p", "q"};
    return Ring::make({names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n)});
}

inline DiffPoly P(const std::string& text, const RingPtr& r)
{
    return parsePolynomial(text, r);
}

struct PolyShape {
    std::int64_t maxOrder = 3;
    std::uint32_t maxDegree = 3;
    std::size_t maxTerms = 4;
    bool linear = false;
    bool constantTerm = true;
};

inline DiffPoly randomMonomialPoly(const RingPtr& r, std::mt19937& rng, const PolyShape& s)
{
    std::uniform_int_distribution<std::size_t> var(0, r->size() - 1);
    std::uniform_int_distribution<std::int64_t> order(0, s.maxOrder);
    std::uniform_int_distribution<std::uint32_t> deg(1, s.linear ? 1 : s.maxDegree);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::vector<Monomial::Factor> fs;
    std::uint32_t total = s.linear ? 1 : deg(rng);
    for (std::uint32_t k = 0; k < total; ++k)
        fs.push_back({Derivative{var(rng), order(rng)}, 1});
    int c = 0;
    while (c == 0)
        c = coeff(rng);
    return DiffPoly::monomial(r, Monomial::fromFactors(fs), c);
}

/// Nonconstant random polynomial.
inline DiffPoly randomPoly(const RingPtr& r, std::mt19937& rng, const PolyShape& s)
{
    std::uniform_int_distribution<std::size_t> terms(1, s.maxTerms);
    for (;;) {
        DiffPoly p(r);
        std::size_t t = terms(rng);
        for (std::size_t k = 0; k < t; ++k)
            p += randomMonomialPoly(r, rng, s);
        if (s.constantTerm && rng() % 3 == 0)
            p += DiffPoly::constant(r, static_cast<long>(rng() % 7) - 3);
        if (!p.isConstant())
            return p;
    }
}

/// Entries in {−∞, 0..maxEntry}.
inline OrderMatrix randomMatrix(std::size_t n, std::mt19937& rng, double pNegInf = 0.25, int maxEntry = 9)
{
    std::bernoulli_distribution neg(pNegInf);
    std::uniform_int_distribution<int> val(0, maxEntry);
    OrderMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = neg(rng) ? ExtInt::negInf() : ExtInt(val(rng));
    return m;
}


/*
 * Every variable occurs at its top order only in one term c·x^(o) with c a
 * nonzero constant, so separants in every variable are nonzero constants.
 * Nonlinear mode adds products of strictly lower derivatives.
 */
inline DiffPoly randomUnitSeparantPoly(const RingPtr& r, std::mt19937& rng, std::int64_t maxOrder, bool linear)
{
    std::uniform_int_distribution<std::int64_t> order(0, maxOrder);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto nz = [&] {
        int c = 0;
        while (c == 0)
            c = coeff(rng);
        return c;
    };
    for (;;) {
        DiffPoly p(r);
        std::vector<Derivative> lower;
        for (std::size_t v = 0; v < r->size(); ++v) {
            if (rng() % 3 == 0)
                continue;
            std::int64_t o = order(rng);
            p += nz() * DiffPoly::derivative(r, v, o);
            for (std::int64_t k = 0; k < o; ++k)
                lower.push_back(Derivative{v, k});
        }
        if (p.isZero())
            continue;
        for (std::size_t t = 0, m = rng() % 3; t < m && !lower.empty(); ++t) {
            std::vector<Monomial::Factor> fs;
            std::size_t f = linear ? 1 : 1 + rng() % 3;
            for (std::size_t i = 0; i < f; ++i)
                fs.push_back({lower[rng() % lower.size()], 1});
            p += DiffPoly::monomial(r, Monomial::fromFactors(fs), nz());
        }
        if (rng() % 2)
            p += DiffPoly::constant(r, nz());
        return p;
    }
}

inline std::vector<DiffPoly> randomUnitSeparantSystem(std::size_t n, std::mt19937& rng, std::int64_t maxOrder,
                                                     bool linear)
{
    auto r = ring(n);
    std::vector<DiffPoly> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(randomUnitSeparantPoly(r, rng, maxOrder, linear));
    return out;
}

} // namespace fixtures
