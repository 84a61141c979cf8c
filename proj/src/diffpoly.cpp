#include "diffalg/diffpoly.hpp"
#include "diffalg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace diffalg {

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> names) : names_(std::move(names))
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw Error("duplicate variable name '" + names_[i] + "'");
}

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> names)
{
    return std::make_shared<const Ring>(std::move(names));
}

const std::string& Ring::name(std::size_t var) const
{
    if (var >= names_.size())
        throw Error("variable index " + std::to_string(var) + " out of range");
    return names_[var];
}

std::optional<std::size_t> Ring::indexOf(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

bool Ring::isPrefixOf(const Ring& other) const
{
    return names_.size() <= other.names_.size()
        && std::equal(names_.begin(), names_.end(), other.names_.begin());
}

bool sameRing(const RingPtr& a, const RingPtr& b)
{
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Derivative / Monomial

std::strong_ordering orderlyCompare(const Derivative& a, const Derivative& b)
{
    if (auto c = a.order <=> b.order; c != 0)
        return c;
    return a.var <=> b.var;
}

Monomial::Monomial(Derivative d, std::uint32_t exponent)
{
    if (d.order < 0)
        throw Error("negative derivative order");
    if (exponent > 0)
        factors_.emplace_back(d, exponent);
}

Monomial Monomial::fromFactors(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return orderlyCompare(a.first, b.first) > 0; });
    Monomial m;
    for (auto& [d, e] : factors) {
        if (d.order < 0)
            throw Error("negative derivative order");
        if (e == 0)
            continue;
        if (!m.factors_.empty() && m.factors_.back().first == d)
            m.factors_.back().second += e;
        else
            m.factors_.emplace_back(d, e);
    }
    return m;
}

std::uint32_t Monomial::degreeIn(const Derivative& d) const
{
    for (const auto& [x, e] : factors_)
        if (x == d)
            return e;
    return 0;
}

std::uint32_t Monomial::totalDegree() const
{
    std::uint32_t t = 0;
    for (const auto& f : factors_)
        t += f.second;
    return t;
}

Monomial Monomial::withExponent(const Derivative& d, std::uint32_t exponent) const
{
    std::vector<Factor> fs;
    for (const auto& f : factors_)
        if (!(f.first == d))
            fs.push_back(f);
    if (exponent > 0)
        fs.emplace_back(d, exponent);
    return fromFactors(std::move(fs));
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && orderlyCompare(i->first, j->first) > 0)) {
            r.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || orderlyCompare(i->first, j->first) < 0) {
            r.factors_.push_back(*j++);
        } else {
            r.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
{
    std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (auto c = orderlyCompare(a.factors_[k].first, b.factors_[k].first); c != 0)
            return c;
        if (auto c = a.factors_[k].second <=> b.factors_[k].second; c != 0)
            return c;
    }
    return a.factors_.size() <=> b.factors_.size();
}

// ---------------------------------------------------------------- DiffPoly

// mpq_class(num, den) is not reduced on construction.
static Rational canonical(Rational c)
{
    c.canonicalize();
    return c;
}

DiffPoly::DiffPoly(RingPtr ring) : ring_(std::move(ring))
{
    if (!ring_)
        throw Error("polynomial without a ring");
}

DiffPoly::DiffPoly(RingPtr ring, Terms terms) : DiffPoly(std::move(ring))
{
    for (auto& [m, c] : terms) {
        for (const auto& f : m.factors())
            if (f.first.var >= ring_->size())
                throw Error("monomial refers to a variable outside the ring");
        if (c != 0)
            terms_.emplace(m, canonical(c));
    }
}

DiffPoly DiffPoly::constant(RingPtr ring, const Rational& c)
{
    DiffPoly p(std::move(ring));
    if (c != 0)
        p.terms_.emplace(Monomial(), canonical(c));
    return p;
}

DiffPoly DiffPoly::derivative(RingPtr ring, std::size_t var, std::int64_t order)
{
    if (var >= ring->size())
        throw Error("variable index " + std::to_string(var) + " out of range");
    return monomial(std::move(ring), Monomial({var, order}));
}

DiffPoly DiffPoly::monomial(RingPtr ring, const Monomial& m, const Rational& c)
{
    DiffPoly p(std::move(ring));
    if (c != 0)
        p.terms_.emplace(m, canonical(c));
    return p;
}

bool DiffPoly::isConstant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne());
}

Rational DiffPoly::constantTerm() const
{
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t DiffPoly::totalDegree() const
{
    std::uint32_t t = 0;
    for (const auto& [m, c] : terms_)
        t = std::max(t, m.totalDegree());
    return t;
}

std::vector<Derivative> DiffPoly::derivatives() const
{
    std::vector<Derivative> out;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            out.push_back(f.first);
    std::sort(out.begin(), out.end(), OrderlyLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool DiffPoly::involvesVar(std::size_t var) const
{
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            if (f.first.var == var)
                return true;
    return false;
}

std::uint32_t DiffPoly::degreeIn(const Derivative& d) const
{
    std::uint32_t t = 0;
    for (const auto& [m, c] : terms_)
        t = std::max(t, m.degreeIn(d));
    return t;
}

std::vector<DiffPoly> DiffPoly::coefficientsIn(const Derivative& d) const
{
    std::vector<DiffPoly> out(degreeIn(d) + 1, DiffPoly(ring_));
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.degreeIn(d);
        out[e].terms_.emplace(m.withExponent(d, 0), c);
    }
    return out;
}

DiffPoly DiffPoly::partial(const Derivative& d) const
{
    DiffPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.degreeIn(d);
        if (e == 0)
            continue;
        r.terms_.emplace(m.withExponent(d, e - 1), c * e);
    }
    return r;
}

DiffPoly DiffPoly::liftTo(const RingPtr& extended) const
{
    if (!ring_->isPrefixOf(*extended))
        throw Error("cannot lift: ring is not a prefix of the target ring");
    DiffPoly r(extended);
    r.terms_ = terms_;
    return r;
}

DiffPoly DiffPoly::restrictTo(const RingPtr& smaller) const
{
    if (!smaller->isPrefixOf(*ring_))
        throw Error("cannot restrict: target ring is not a prefix");
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            if (f.first.var >= smaller->size())
                throw Error("cannot restrict: polynomial involves " + ring_->name(f.first.var));
    DiffPoly r(smaller);
    r.terms_ = terms_;
    return r;
}

DiffPoly DiffPoly::substituteConstant(std::size_t var, const Rational& value) const
{
    DiffPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        std::vector<Monomial::Factor> rest;
        for (const auto& f : m.factors()) {
            if (f.first.var != var) {
                rest.push_back(f);
                continue;
            }
            if (f.first.order != 0)
                throw Error("cannot substitute a constant for " + ring_->name(var) + ": its derivatives occur");
            for (std::uint32_t k = 0; k < f.second; ++k)
                coeff *= value;
        }
        r += monomial(ring_, Monomial::fromFactors(std::move(rest)), coeff);
    }
    return r;
}

void DiffPoly::requireSameRing(const DiffPoly& o) const
{
    if (!sameRing(ring_, o.ring_))
        throw Error("polynomials over different variable lists");
}

DiffPoly DiffPoly::operator-() const
{
    DiffPoly r(ring_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b)
{
    a.requireSameRing(b);
    DiffPoly r = a;
    for (const auto& [m, c] : b.terms_) {
        auto [it, inserted] = r.terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                r.terms_.erase(it);
        }
    }
    return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b)
{
    return a + (-b);
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
{
    a.requireSameRing(b);
    DiffPoly r(a.ring_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Rational c = ca * cb;
            auto [it, inserted] = r.terms_.emplace(ma * mb, c);
            if (!inserted)
                it->second += c;
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        if (it->second == 0)
            it = r.terms_.erase(it);
        else
            ++it;
    }
    return r;
}

DiffPoly operator*(const Rational& c, const DiffPoly& a)
{
    DiffPoly r(a.ring_);
    if (c == 0)
        return r;
    const Rational k = canonical(c);
    for (const auto& [m, x] : a.terms_)
        r.terms_.emplace_hint(r.terms_.end(), m, k * x);
    return r;
}

DiffPoly DiffPoly::pow(std::uint32_t e) const
{
    DiffPoly result = constant(ring_, 1);
    DiffPoly base = *this;
    while (e > 0) {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

bool operator==(const DiffPoly& a, const DiffPoly& b)
{
    return sameRing(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string renderDerivative(const Ring& ring, const Derivative& d)
{
    const std::string& n = ring.name(d.var);
    if (d.order <= 3)
        return n + std::string(static_cast<std::size_t>(d.order), '\'');
    return n + "^(" + std::to_string(d.order) + ")";
}

namespace {

std::string renderMonomial(const Ring& ring, const Monomial& m)
{
    std::string s;
    for (const auto& [d, e] : m.factors()) {
        if (!s.empty())
            s += "*";
        std::string base = renderDerivative(ring, d);
        if (e == 1)
            s += base;
        else if (d.order > 0)
            s += "(" + base + ")^" + std::to_string(e);
        else
            s += base + "^" + std::to_string(e);
    }
    return s;
}

} // namespace

std::string DiffPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (m.isOne()) {
            out += a.get_str();
        } else if (a == 1) {
            out += renderMonomial(*ring_, m);
        } else {
            out += a.get_str() + "*" + renderMonomial(*ring_, m);
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const DiffPoly& p)
{
    return os << p.str();
}

// ---------------------------------------------------------------- Ranking

Ranking Ranking::orderly()
{
    return Ranking{};
}

Ranking Ranking::blockElimination(std::vector<std::vector<std::size_t>> blocks)
{
    Ranking r;
    r.kind_ = Kind::blockElimination;
    std::set<std::size_t> seen;
    for (const auto& b : blocks) {
        if (b.empty())
            throw Error("empty block in elimination ranking");
        for (std::size_t v : b)
            if (!seen.insert(v).second)
                throw Error("variable " + std::to_string(v) + " appears in two blocks");
    }
    r.blocks_ = std::move(blocks);
    return r;
}

std::size_t Ranking::blockOf(std::size_t var) const
{
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (std::find(blocks_[i].begin(), blocks_[i].end(), var) != blocks_[i].end())
            return i;
    throw Error("variable " + std::to_string(var) + " is not covered by the elimination ranking");
}

std::strong_ordering Ranking::compare(const Derivative& a, const Derivative& b) const
{
    if (kind_ == Kind::blockElimination && a.var != b.var) {
        if (auto c = blockOf(a.var) <=> blockOf(b.var); c != 0)
            return c;
    }
    return orderlyCompare(a, b);
}

void Ranking::validateFor(std::size_t n) const
{
    if (kind_ == Kind::orderly)
        return;
    std::size_t count = 0;
    for (const auto& b : blocks_) {
        for (std::size_t v : b)
            if (v >= n)
                throw Error("elimination block refers to variable index " + std::to_string(v));
        count += b.size();
    }
    if (count != n)
        throw Error("elimination blocks do not cover every variable");
}

std::string Ranking::describe(const Ring& ring) const
{
    if (kind_ == Kind::orderly)
        return "orderly";
    std::string s = "elim:";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i)
            s += ";";
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j)
                s += ",";
            s += ring.name(blocks_[i][j]);
        }
    }
    return s;
}

// ---------------------------------------------------------------- operators

LinearDifferentialOperator::LinearDifferentialOperator(RingPtr ring) : ring_(std::move(ring)) {}

LinearDifferentialOperator LinearDifferentialOperator::multiplication(const DiffPoly& c)
{
    LinearDifferentialOperator L(c.ring());
    L.addTerm(0, c);
    return L;
}

LinearDifferentialOperator LinearDifferentialOperator::derivation(RingPtr ring, std::int64_t k)
{
    LinearDifferentialOperator L(ring);
    L.addTerm(k, DiffPoly::constant(ring, 1));
    return L;
}

void LinearDifferentialOperator::addTerm(std::int64_t k, const DiffPoly& c)
{
    if (k < 0)
        throw Error("negative power of the derivation");
    if (!sameRing(ring_, c.ring()))
        throw Error("operator coefficient over a different ring");
    if (c.isZero())
        return;
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.isZero())
            coeffs_.erase(it);
    }
}

LinearDifferentialOperator LinearDifferentialOperator::leftMultiply(const DiffPoly& c) const
{
    LinearDifferentialOperator r(ring_);
    for (const auto& [k, a] : coeffs_)
        r.addTerm(k, c * a);
    return r;
}

LinearDifferentialOperator operator+(const LinearDifferentialOperator& a, const LinearDifferentialOperator& b)
{
    LinearDifferentialOperator r = a;
    for (const auto& [k, c] : b.coeffs_)
        r.addTerm(k, c);
    return r;
}

LinearDifferentialOperator operator*(const LinearDifferentialOperator& a, const LinearDifferentialOperator& b)
{
    LinearDifferentialOperator r(a.ring_);
    for (const auto& [k, ca] : a.coeffs_) {
        for (const auto& [m, cb] : b.coeffs_) {
            // ∂^k cb = Σ_i C(k,i) cb^{(i)} ∂^{k-i}
            mpz_class binom = 1;
            DiffPoly d = cb;
            for (std::int64_t i = 0; i <= k; ++i) {
                r.addTerm(k - i + m, Rational(binom) * (ca * d));
                binom = binom * (k - i) / (i + 1);
                d = derive(d);
            }
        }
    }
    return r;
}

bool operator==(const LinearDifferentialOperator& a, const LinearDifferentialOperator& b)
{
    return sameRing(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

std::string LinearDifferentialOperator::str() const
{
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!out.empty())
            out += " + ";
        std::string c = "(" + it->second.str() + ")";
        if (it->first == 0)
            out += c;
        else if (it->first == 1)
            out += c + "*D";
        else
            out += c + "*D^" + std::to_string(it->first);
    }
    return out;
}

// ---------------------------------------------------------------- free functions

DiffPoly derive(const DiffPoly& p)
{
    DiffPoly r(p.ring());
    for (const auto& [m, c] : p.terms()) {
        const auto& fs = m.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            std::vector<Monomial::Factor> nf = fs;
            auto [d, e] = fs[i];
            Rational coeff = c * e;
            if (e == 1)
                nf.erase(nf.begin() + static_cast<std::ptrdiff_t>(i));
            else
                nf[i].second = e - 1;
            nf.emplace_back(Derivative{d.var, d.order + 1}, 1);
            r += DiffPoly::monomial(p.ring(), Monomial::fromFactors(std::move(nf)), coeff);
        }
    }
    return r;
}

DiffPoly deriveN(const DiffPoly& p, std::int64_t k)
{
    DiffPoly r = p;
    for (std::int64_t i = 0; i < k; ++i)
        r = derive(r);
    return r;
}

namespace {

void checkVar(const DiffPoly& p, std::size_t var)
{
    if (var >= p.ring()->size())
        throw Error("variable index " + std::to_string(var) + " out of range");
}

} // namespace

ExtInt ord(const DiffPoly& p, std::size_t var, Convention convention)
{
    checkVar(p, var);
    ExtInt best;
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors())
            if (f.first.var == var)
                best = max(best, ExtInt(f.first.order));
    if (best.isNegInf() && convention == Convention::weak)
        return ExtInt(0);
    return best;
}

Derivative leaderIn(const DiffPoly& p, std::size_t var)
{
    ExtInt o = ord(p, var, Convention::strong);
    if (o.isNegInf())
        throw Error("polynomial does not involve " + p.ring()->name(var));
    return {var, o.value()};
}

Derivative leader(const DiffPoly& p, const Ranking& ranking)
{
    auto ds = p.derivatives();
    if (ds.empty())
        throw Error("constant polynomial has no leader");
    Derivative best = ds.front();
    for (const auto& d : ds)
        if (ranking.less(best, d))
            best = d;
    return best;
}

DiffPoly separant(const DiffPoly& p, std::size_t var)
{
    return p.partial(leaderIn(p, var));
}

DiffPoly initialIn(const DiffPoly& p, std::size_t var)
{
    Derivative l = leaderIn(p, var);
    return p.coefficientsIn(l).back();
}

std::uint32_t degInLeader(const DiffPoly& p, std::size_t var)
{
    return p.degreeIn(leaderIn(p, var));
}

DiffPoly separant(const DiffPoly& p, const Ranking& ranking)
{
    return p.partial(leader(p, ranking));
}

DiffPoly initial(const DiffPoly& p, const Ranking& ranking)
{
    return p.coefficientsIn(leader(p, ranking)).back();
}

bool isLowerThan(const DiffPoly& f, const DiffPoly& g, std::size_t var)
{
    ExtInt of = ord(f, var, Convention::strong);
    ExtInt og = ord(g, var, Convention::strong);
    if (of != og)
        return of < og;
    if (of.isNegInf())
        return false;
    Derivative l{var, of.value()};
    return f.degreeIn(l) < g.degreeIn(l);
}

DiffPoly applyOperator(const LinearDifferentialOperator& op, const DiffPoly& p)
{
    if (!sameRing(op.ring(), p.ring()))
        throw Error("operator and polynomial over different rings");
    DiffPoly r(p.ring());
    DiffPoly d = p;
    std::int64_t at = 0;
    for (const auto& [k, c] : op.coefficients()) {
        while (at < k) {
            d = derive(d);
            ++at;
        }
        r += c * d;
    }
    return r;
}

} // namespace diffalg
