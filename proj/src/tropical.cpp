#include "diffalg/tropical.hpp"
#include "diffalg/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace diffalg {

// ---------------------------------------------------------------- permutations

Perm identityPerm(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

Perm compose(const Perm& a, const Perm& b)
{
    if (a.size() != b.size())
        throw Error("composing permutations of different sizes");
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& p)
{
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[p[i]] = i;
    return r;
}

bool isPermutation(const Perm& p)
{
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p) {
        if (v >= p.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

Perm transposition(std::size_t n, std::size_t i, std::size_t j)
{
    Perm p = identityPerm(n);
    std::swap(p.at(i), p.at(j));
    return p;
}

Perm cycleToPerm(const Cycle& c, std::size_t n)
{
    Perm p = identityPerm(n);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] >= n || seen[c[k]])
            throw Error("not a cycle: repeated or out-of-range element");
        seen[c[k]] = true;
        p[c[k]] = c[(k + 1) % c.size()];
    }
    return p;
}

std::vector<Cycle> cycleDecompose(const Perm& p)
{
    if (!isPermutation(p))
        throw Error("cycleDecompose: argument is not a permutation");
    std::vector<Cycle> out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i)
            continue;
        Cycle c;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string permToString(const Perm& p)
{
    auto cycles = cycleDecompose(p);
    if (cycles.empty())
        return "()";
    std::string s;
    for (const auto& c : cycles) {
        s += "(";
        for (std::size_t k = 0; k < c.size(); ++k)
            s += (k ? " " : "") + std::to_string(c[k] + 1);
        s += ")";
    }
    return s;
}

std::vector<Perm> allPerms(std::size_t n)
{
    std::vector<Perm> out;
    Perm p = identityPerm(n);
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ---------------------------------------------------------------- OrderMatrix

OrderMatrix::OrderMatrix(std::size_t rows, std::size_t cols, Convention convention)
    : rows_(rows), cols_(cols), convention_(convention),
      entries_(rows * cols, convention == Convention::weak ? ExtInt(0) : ExtInt::negInf())
{
}

OrderMatrix OrderMatrix::fromRows(const std::vector<std::vector<ExtInt>>& rows, Convention convention)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    OrderMatrix m(rows.size(), cols, convention);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) {
            if (convention == Convention::weak && rows[i][j].isNegInf())
                throw Error("weak-convention order matrix cannot contain -inf");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

OrderMatrix OrderMatrix::minor(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw Error("minor index out of range");
    OrderMatrix m(rows_ - 1, cols_ - 1, convention_);
    for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
        if (i == r)
            continue;
        for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
            if (j == c)
                continue;
            m.at(mi, mj++) = at(i, j);
        }
        ++mi;
    }
    return m;
}

ExtInt OrderMatrix::maxEntry() const
{
    ExtInt m;
    for (ExtInt v : entries_)
        m = max(m, v);
    return m;
}

std::string OrderMatrix::render() const
{
    std::vector<std::string> cells;
    std::size_t width = 1;
    for (ExtInt v : entries_) {
        cells.push_back(v.isNegInf() ? "·" : std::to_string(v.value()));
        width = std::max(width, v.isNegInf() ? std::size_t{1} : cells.back().size());
    }
    std::size_t labelWidth = 0;
    for (const auto& l : rowLabels)
        labelWidth = std::max(labelWidth, l.size());
    for (const auto& l : colLabels)
        width = std::max(width, l.size());

    std::ostringstream os;
    if (!colLabels.empty()) {
        os << std::string(labelWidth ? labelWidth + 2 : 0, ' ');
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << std::string(width - colLabels[j].size(), ' ') << colLabels[j];
        os << "\n";
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        if (labelWidth)
            os << rowLabels[i] << std::string(labelWidth - rowLabels[i].size(), ' ') << "  ";
        for (std::size_t j = 0; j < cols_; ++j) {
            const std::string& c = cells[i * cols_ + j];
            std::size_t w = at(i, j).isNegInf() ? 1 : c.size();
            os << (j ? " " : "") << std::string(width - w, ' ') << c;
        }
        os << "\n";
    }
    return os.str();
}

OrderMatrix orderMatrix(const std::vector<DiffPoly>& system, Convention convention,
                        const std::vector<std::size_t>& columns)
{
    std::vector<std::size_t> cols = columns;
    RingPtr ring = system.empty() ? nullptr : system.front().ring();
    if (cols.empty() && ring)
        cols = identityPerm(ring->size());
    OrderMatrix m(system.size(), cols.size(), convention);
    for (std::size_t i = 0; i < system.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m.at(i, j) = ord(system[i], cols[j], convention);
    if (ring)
        for (std::size_t j : cols)
            m.colLabels.push_back(ring->name(j));
    return m;
}

// ---------------------------------------------------------------- tdet

ExtInt transversalValue(const OrderMatrix& a, const Perm& rho)
{
    if (!a.isSquare() || rho.size() != a.rows() || !isPermutation(rho))
        throw Error("transversal: permutation does not match the matrix");
    ExtInt s(0);
    for (std::size_t i = 0; i < rho.size(); ++i)
        s += a.at(i, rho[i]);
    return s;
}

ExtInt cyclicSum(const OrderMatrix& a, const Cycle& cycle)
{
    if (cycle.empty())
        throw Error("cyclicSum: empty cycle");
    cycleToPerm(cycle, a.rows());  // validates
    ExtInt s(0);
    for (std::size_t k = 0; k < cycle.size(); ++k)
        s += a.at(cycle[k], cycle[(k + 1) % cycle.size()]);
    return s;
}

TdetResult tdetBruteForce(const OrderMatrix& a)
{
    if (!a.isSquare())
        throw Error("tropical determinant of a non-square matrix");
    TdetResult r;
    std::size_t n = a.rows();
    if (n == 0) {
        r.value = ExtInt(0);
        r.witnesses.push_back({});
        return r;
    }
    Perm p = identityPerm(n);
    bool first = true;
    do {
        ExtInt v = transversalValue(a, p);
        if (first || v > r.value) {
            r.value = v;
            r.witnesses.clear();
            r.witnesses.push_back(p);
            first = false;
        } else if (v == r.value) {
            r.witnesses.push_back(p);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return r;
}

TdetResult tdetAssignment(const OrderMatrix& a)
{
    if (!a.isSquare())
        throw Error("tropical determinant of a non-square matrix");
    const std::size_t n = a.rows();
    TdetResult r;
    if (n == 0) {
        r.value = ExtInt(0);
        r.witnesses.push_back({});
        return r;
    }
    // Minimize cost = -a with forbidden (−∞) edges priced above any finite
    // difference, so an optimum uses a forbidden edge only if every
    // assignment does.
    std::int64_t top = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a.at(i, j).isFinite())
                top = std::max(top, std::abs(a.at(i, j).value()));
    const std::int64_t big = static_cast<std::int64_t>(2 * n + 2) * (top + 1);
    auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
        ExtInt v = a.at(i - 1, j - 1);
        return v.isFinite() ? -v.value() : big;
    };

    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = match[j0], j1 = 0;
            std::int64_t delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                std::int64_t cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Perm rho(n);
    for (std::size_t j = 1; j <= n; ++j)
        rho[match[j] - 1] = j - 1;
    r.value = transversalValue(a, rho);
    r.witnesses.push_back(rho);
    return r;
}

TdetResult tdet(const OrderMatrix& a)
{
    return a.rows() <= kBruteForceLimit ? tdetBruteForce(a) : tdetAssignment(a);
}

OrderMatrix permute(const OrderMatrix& a, const Perm& sigma, const Perm& tau)
{
    if (sigma.size() != a.rows() || tau.size() != a.cols() || !isPermutation(sigma) || !isPermutation(tau))
        throw Error("permute: permutation sizes do not match the matrix");
    OrderMatrix b(a.rows(), a.cols(), a.convention());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            b.at(i, j) = a.at(sigma[i], tau[j]);
    if (a.rowLabels.size() == a.rows())
        for (std::size_t i = 0; i < a.rows(); ++i)
            b.rowLabels.push_back(a.rowLabels[sigma[i]]);
    if (a.colLabels.size() == a.cols())
        for (std::size_t j = 0; j < a.cols(); ++j)
            b.colLabels.push_back(a.colLabels[tau[j]]);
    return b;
}

OrderMatrix diagonalize(const OrderMatrix& a, Perm* rowPerm)
{
    Perm sigma = inverse(tdet(a).witnesses.front());
    if (rowPerm)
        *rowPerm = sigma;
    return permute(a, sigma, identityPerm(a.cols()));
}

std::strong_ordering rittCompare(const OrderMatrix& a, const OrderMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("rittCompare: matrices of different shapes");
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::vector<ExtInt> ca, cb;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            ca.push_back(a.at(i, j));
            cb.push_back(b.at(i, j));
        }
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (auto c = std::lexicographical_compare_three_way(ca.begin(), ca.end(), cb.begin(), cb.end()); c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- forms

namespace {

ExtInt columnMax(const OrderMatrix& a, std::size_t j)
{
    ExtInt m;
    for (std::size_t i = 0; i < a.rows(); ++i)
        m = max(m, a.at(i, j));
    return m;
}

std::size_t finiteInColumn(const OrderMatrix& a, std::size_t j)
{
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a.at(i, j).isFinite())
            ++k;
    return k;
}

// Column-1 entry of the transversal ρ.
ExtInt columnOneEntry(const OrderMatrix& a, const Perm& rho)
{
    return a.at(inverse(rho)[0], 0);
}

} // namespace

bool detectFirstForm(const OrderMatrix& a)
{
    if (!a.isSquare() || a.rows() < 2)
        return false;
    ExtInt t = tdet(a).value;
    if (t.isNegInf())
        return false;
    ExtInt diag(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        diag += a.at(i, i);
    return diag == t && a.at(0, 0).isFinite() && a.at(1, 0) >= a.at(0, 0);
}

bool detectSecondForm(const OrderMatrix& a)
{
    if (!a.isSquare() || a.rows() < 2)
        return false;
    const std::size_t n = a.rows();
    ExtInt t = tdet(a).value;
    if (t.isNegInf())
        return false;
    ExtInt shape = a.at(0, n - 1) + a.at(n - 1, 0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        shape += a.at(i, i);
    if (shape != t)
        return false;
    ExtInt cof(0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        cof += a.at(i, i);
    if (cof.isNegInf() || tdet(a.minor(n - 1, n - 1)).value != cof)
        return false;
    return a.at(n - 1, 0) == columnMax(a, 0);
}

bool detectThirdForm(const OrderMatrix& b)
{
    if (!b.isSquare() || b.rows() < 2)
        return false;
    const std::size_t n = b.rows();
    ExtInt t = tdet(b).value;
    if (t.isNegInf())
        return false;
    ExtInt shape = b.at(n - 1, 0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        shape += b.at(i, i + 1);
    if (shape != t)
        return false;
    ExtInt cof = b.at(0, 0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        cof += b.at(i, i + 1);
    if (cof.isNegInf() || tdet(b.minor(n - 1, 1)).value != cof)
        return false;
    return b.at(n - 1, 0) == columnMax(b, 0);
}

const char* toString(FormKind k)
{
    switch (k) {
    case FormKind::first:
        return "first";
    case FormKind::second:
        return "second";
    case FormKind::third:
        return "third";
    default:
        return "none";
    }
}

FormCertificate toFirstForm(const OrderMatrix& a)
{
    if (!a.isSquare() || a.rows() < 2)
        throw HypothesisFailure("first form needs a square matrix with at least two rows");
    const std::size_t n = a.rows();
    if (detectFirstForm(a))
        return {identityPerm(n), identityPerm(n), FormKind::first, std::nullopt};

    TdetResult t = tdet(a);
    if (t.value.isNegInf())
        throw HypothesisFailure("tropical determinant is -inf");
    if (finiteInColumn(a, 0) < 2)
        throw HypothesisFailure("column 1 has fewer than two finite entries");

    for (const Perm& rho : t.witnesses) {
        Perm sigma = inverse(rho);
        OrderMatrix b = permute(a, sigma, identityPerm(n));
        if (b.at(0, 0).isNegInf())
            continue;
        for (std::size_t i = 1; i < n; ++i) {
            if (b.at(i, 0) < b.at(0, 0))
                continue;
            Perm swap = transposition(n, 1, i);
            FormCertificate cert{compose(sigma, swap), swap, FormKind::first, std::nullopt};
            if (!detectFirstForm(cert.apply(a)))
                throw InternalInvariantViolation("toFirstForm produced a matrix outside first form");
            return cert;
        }
    }
    throw HypothesisFailure(
        "no maximal transversal has a finite column-1 entry matched by another column-1 entry");
}

Perm thirdFormColumnPerm(std::size_t n)
{
    Perm p = identityPerm(n);
    if (n >= 2) {
        p[1] = n - 1;
        for (std::size_t j = 2; j < n; ++j)
            p[j] = j - 1;
    }
    return p;
}

OrderMatrix thirdFromSecond(const OrderMatrix& a)
{
    if (!detectSecondForm(a))
        throw Error("thirdFromSecond: matrix is not in second form");
    return permute(a, identityPerm(a.rows()), thirdFormColumnPerm(a.cols()));
}

OrderMatrix secondFromThird(const OrderMatrix& b)
{
    if (!detectThirdForm(b))
        throw Error("secondFromThird: matrix is not in third form");
    return permute(b, identityPerm(b.rows()), inverse(thirdFormColumnPerm(b.cols())));
}

FormCertificate toSecondForm(const OrderMatrix& a)
{
    if (!a.isSquare() || a.rows() < 2)
        throw HypothesisFailure("second form needs a square matrix with at least two rows");
    const std::size_t n = a.rows();
    TdetResult t = tdet(a);
    if (t.value.isNegInf())
        throw HypothesisFailure("tropical determinant is -inf");
    if (finiteInColumn(a, 0) < 2)
        throw HypothesisFailure("column 1 has fewer than two finite entries");
    ExtInt cmax = columnMax(a, 0);
    for (const Perm& rho : t.witnesses)
        if (columnOneEntry(a, rho) != cmax)
            throw HypothesisFailure("a maximal transversal meets column 1 below the column maximum");

    // Arrange: the transversal's column-1 row goes last, the remaining rows
    // keep their order, and columns follow the transversal so that it reads
    // a_{1,2} + ... + a_{n-1,n} + a_{n,1}.
    const Perm& rho = t.witnesses.front();
    std::size_t r0 = inverse(rho)[0];
    Perm sigma;
    for (std::size_t i = 0; i < n; ++i)
        if (i != r0)
            sigma.push_back(i);
    sigma.push_back(r0);
    Perm tau(n);
    tau[0] = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        tau[i + 1] = rho[sigma[i]];
    OrderMatrix b = permute(a, sigma, tau);

    for (std::size_t i = 1; i < n; ++i) {
        // (b_{1,2}+...+b_{i-1,i}) + b_{i,1} + (b_{i+1,i+2}+...+b_{n-1,n}), 1-based
        ExtInt shifted = b.at(i - 1, 0);
        for (std::size_t r = 0; r + 1 < n; ++r)
            if (r != i - 1)
                shifted += b.at(r, r + 1);
        if (shifted.isNegInf() || tdet(b.minor(n - 1, i)).value != shifted)
            continue;
        Perm rows = transposition(n, 0, i - 1);
        Perm cols = transposition(n, 1, i);
        OrderMatrix d = permute(b, rows, cols);
        if (!detectThirdForm(d))
            throw InternalInvariantViolation("second-form search: swapped matrix is not in third form");
        Perm back = inverse(thirdFormColumnPerm(n));
        FormCertificate cert{compose(sigma, rows), compose(compose(tau, cols), back), FormKind::second, i};
        if (!detectSecondForm(cert.apply(a)))
            throw InternalInvariantViolation("second-form search: certificate fails the detector");
        return cert;
    }
    throw InternalInvariantViolation("second-form search exhausted every index without a maximal shifted transversal");
}

bool isNestedTriangular(const OrderMatrix& a)
{
    if (!a.isSquare())
        return false;
    if (a.rows() == 0)
        return true;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (finiteInColumn(a, j) != 1)
            continue;
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a.at(i, j).isFinite() && isNestedTriangular(a.minor(i, j)))
                return true;
    }
    return false;
}

} // namespace diffalg
