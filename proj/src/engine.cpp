#include "diffalg/engine.hpp"
#include "diffalg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace diffalg {

System System::of(std::vector<DiffPoly> equations, std::vector<std::string> labels)
{
    System s;
    if (!equations.empty())
        s.columns = identityPerm(equations.front().ring()->size());
    if (labels.empty())
        for (std::size_t i = 0; i < equations.size(); ++i)
            labels.push_back("u" + std::to_string(i + 1));
    s.equations = std::move(equations);
    s.labels = std::move(labels);
    return s;
}

OrderMatrix System::matrix(Convention convention) const
{
    OrderMatrix m = orderMatrix(equations, convention, columns);
    m.rowLabels = labels;
    return m;
}

ExtInt System::jacobi(Convention convention) const
{
    return tdet(matrix(convention)).value;
}

System System::permuted(const Perm& rowPerm, const Perm& colPerm) const
{
    if (rowPerm.size() != equations.size() || colPerm.size() != columns.size())
        throw Error("system permutation of the wrong size");
    System s;
    for (std::size_t i : rowPerm) {
        s.equations.push_back(equations.at(i));
        s.labels.push_back(labels.at(i));
    }
    for (std::size_t j : colPerm)
        s.columns.push_back(columns.at(j));
    return s;
}

const char* toString(StepKind k)
{
    switch (k) {
    case StepKind::firstForm:
        return "first-form";
    case StepKind::secondForm:
        return "second-form";
    case StepKind::scripted:
        return "scripted";
    case StepKind::normalize:
        return "normalize";
    case StepKind::eliminate:
        return "eliminate";
    }
    return "?";
}

namespace {

void requireUsable(const System& s)
{
    if (s.equations.empty())
        throw Error("empty system");
    if (s.labels.size() != s.equations.size())
        throw Error("system labels do not match its equations");
    for (const auto& e : s.equations)
        if (!sameRing(e.ring(), s.equations.front().ring()))
            throw Error("system over mixed rings");
}

std::pair<System, ReductionStep> formStep(const System& system, const Ranking& ranking,
                                          const AutoreducedSet* component, StepKind kind)
{
    requireUsable(system);
    const std::size_t n = system.equations.size();
    OrderMatrix a = system.matrix();
    bool ok = kind == StepKind::firstForm ? detectFirstForm(a) : detectSecondForm(a);
    if (!ok)
        throw Error(std::string("order matrix is not in ") + (kind == StepKind::firstForm ? "first" : "second")
                    + " form");
    const std::size_t k = kind == StepKind::firstForm ? 1 : n - 1;
    const std::size_t x1 = system.columns.at(0);
    const DiffPoly& u1 = system.equations[0];

    DiffPoly sep = separant(u1, x1);
    if (!sep.isConstant()) {
        if (!component)
            throw DegenerateSituation("separant " + sep.str() + " of the pivot is not a constant and no component "
                                      "was supplied to certify it does not vanish", 0, x1);
        if (membership(sep, *component))
            throw DegenerateSituation("separant " + sep.str() + " of the pivot vanishes on the component", 0, x1);
    }
    DivisionMode mode = degInLeader(u1, x1) == 1 ? DivisionMode::full : DivisionMode::partial;
    DivisionCertificate cert = rittDivide(system.equations[k], {u1}, mode, ranking, x1);
    if (!verifyCertificate(system.equations[k], {u1}, cert))
        throw InternalInvariantViolation("form step: division certificate identity fails");

    System out = system;
    out.equations[k] = cert.remainder;
    OrderMatrix b = out.matrix();

    ReductionStep st;
    st.kind = kind;
    st.divided = k;
    st.by = 0;
    st.inVar = x1;
    st.certificate = cert;
    st.matrixBefore = a;
    st.matrixAfter = b;
    st.jBefore = tdet(a).value;
    st.jAfter = tdet(b).value;
    st.jWeakBefore = system.jacobi(Convention::weak);
    st.jWeakAfter = out.jacobi(Convention::weak);

    if (st.jAfter > st.jBefore)
        throw InternalInvariantViolation("form step increased the Jacobi number from " + st.jBefore.str() + " to "
                                         + st.jAfter.str());
    if (!(cert.remainder == system.equations[k]) && rittCompare(b, a) >= 0)
        throw InternalInvariantViolation("form step did not lower the order matrix in Ritt's ordering");
    // a_{k,1} ≥ a_{1,1} in both forms, so the shift is a nonnegative integer.
    ExtInt shift(a.at(k, 0).value() - a.at(0, 0).value());
    for (std::size_t j = 0; j < n; ++j)
        if (b.at(k, j) > max(a.at(k, j), a.at(0, j) + shift))
            throw InternalInvariantViolation("division bound violated in column " + std::to_string(j + 1));
    return {out, st};
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return "";
    return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

} // namespace

std::pair<System, ReductionStep> stepFirstForm(const System& system, const Ranking& ranking,
                                               const AutoreducedSet* component)
{
    return formStep(system, ranking, component, StepKind::firstForm);
}

std::pair<System, ReductionStep> stepSecondForm(const System& system, const Ranking& ranking,
                                                const AutoreducedSet* component)
{
    return formStep(system, ranking, component, StepKind::secondForm);
}

std::vector<ScriptEntry> parseScript(const std::string& text, const Ring& ring)
{
    std::vector<ScriptEntry> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty())
            continue;
        auto slash = item.find('/');
        auto at = item.find('@');
        if (slash == std::string::npos || at == std::string::npos || at < slash)
            throw Error("script entry '" + item + "' is not of the form dividend/divisor@var");
        ScriptEntry e;
        try {
            std::size_t used = 0;
            std::string a = trim(item.substr(0, slash)), b = trim(item.substr(slash + 1, at - slash - 1));
            e.dividend = std::stoul(a, &used);
            if (used != a.size())
                throw std::invalid_argument(a);
            e.divisor = std::stoul(b, &used);
            if (used != b.size())
                throw std::invalid_argument(b);
        } catch (const std::logic_error&) {
            throw Error("script entry '" + item + "': equation indices must be nonnegative integers");
        }
        std::string var = trim(item.substr(at + 1));
        auto v = ring.indexOf(var);
        if (!v)
            throw Error("script entry '" + item + "': unknown variable '" + var + "'");
        e.var = *v;
        out.push_back(e);
    }
    return out;
}

Trace scriptedDivide(const System& system, const std::vector<ScriptEntry>& script, const Ranking& ranking)
{
    requireUsable(system);
    Trace tr;
    System cur = system;
    tr.jSequence.push_back(cur.jacobi(Convention::strong));
    tr.jWeakSequence.push_back(cur.jacobi(Convention::weak));
    for (std::size_t s = 0; s < script.size(); ++s) {
        const ScriptEntry& e = script[s];
        std::string where = "script entry " + std::to_string(s + 1) + " (" + std::to_string(e.dividend) + "/"
                            + std::to_string(e.divisor) + ")";
        if (e.dividend >= cur.equations.size() || e.divisor >= cur.equations.size())
            throw Error(where + ": equation index out of range");
        if (e.dividend == e.divisor)
            throw Error(where + ": an equation cannot divide itself");
        const DiffPoly& g = cur.equations[e.divisor];
        const DiffPoly& f = cur.equations[e.dividend];
        if (e.var >= g.ring()->size())
            throw Error(where + ": variable index out of range");
        ExtInt og = ord(g, e.var, Convention::strong), of = ord(f, e.var, Convention::strong);
        if (og.isNegInf())
            throw Error(where + ": divisor does not involve " + g.ring()->name(e.var));
        if (of < og)
            throw Error(where + ": dividend has lower order in " + g.ring()->name(e.var) + " than the divisor");

        ReductionStep st;
        st.kind = StepKind::scripted;
        st.divided = e.dividend;
        st.by = e.divisor;
        st.inVar = e.var;
        st.matrixBefore = cur.matrix();
        st.jBefore = tr.jSequence.back();
        st.jWeakBefore = tr.jWeakSequence.back();
        DivisionCertificate cert = rittDivide(f, {g}, DivisionMode::partial, ranking, e.var);
        if (!verifyCertificate(f, {g}, cert))
            throw InternalInvariantViolation("scripted division: certificate identity fails");
        cur.equations[e.dividend] = cert.remainder;
        st.certificate = std::move(cert);
        st.matrixAfter = cur.matrix();
        st.jAfter = tdet(st.matrixAfter).value;
        st.jWeakAfter = cur.jacobi(Convention::weak);
        tr.jSequence.push_back(st.jAfter);
        tr.jWeakSequence.push_back(st.jWeakAfter);
        tr.steps.push_back(std::move(st));
    }
    return tr;
}

std::size_t linearStepBudget(const System& system)
{
    ExtInt top = system.matrix().maxEntry();
    std::size_t maxOrder = top.isFinite() ? static_cast<std::size_t>(top.value()) : 0;
    return 10 * system.equations.size() * (1 + maxOrder);
}

LinearReduceResult linearReduce(const System& system, const Ranking& ranking)
{
    requireUsable(system);
    const std::size_t n = system.equations.size();
    if (system.columns.size() != n)
        throw Error("linearReduce needs as many equations as variables");
    for (std::size_t i = 0; i < n; ++i)
        if (!system.equations[i].isLinear())
            throw Error("equation " + system.labels[i] + " is not linear");
    ranking.validateFor(system.equations.front().ring()->size());

    LinearReduceResult res;
    res.budget = linearStepBudget(system);
    res.initialJ = system.jacobi();
    System cur = system;
    std::vector<std::size_t> rows = identityPerm(n), cols = identityPerm(n);
    res.trace.jSequence.push_back(res.initialJ);
    res.trace.jWeakSequence.push_back(cur.jacobi(Convention::weak));

    auto subsystem = [&] {
        System s;
        for (std::size_t r : rows) {
            s.equations.push_back(cur.equations[r]);
            s.labels.push_back(cur.labels[r]);
        }
        for (std::size_t c : cols)
            s.columns.push_back(cur.columns[c]);
        return s;
    };
    auto record = [&](ReductionStep st, const OrderMatrix& before) {
        st.matrixBefore = before;
        st.matrixAfter = cur.matrix();
        st.jBefore = res.trace.jSequence.back();
        st.jWeakBefore = res.trace.jWeakSequence.back();
        st.jAfter = tdet(st.matrixAfter).value;
        st.jWeakAfter = cur.jacobi(Convention::weak);
        if (st.jAfter > st.jBefore)
            throw InternalInvariantViolation("linearReduce: Jacobi number increased");
        res.trace.jSequence.push_back(st.jAfter);
        res.trace.jWeakSequence.push_back(st.jWeakAfter);
        res.trace.steps.push_back(std::move(st));
    };

    std::size_t divisions = 0;
    bool stuck = false;
    while (!rows.empty()) {
        for (std::size_t r : rows) {
            const DiffPoly& e = cur.equations[r];
            if (e.isConstant() && !e.isZero())
                throw InconsistentSystem("equation " + cur.labels[r] + " reduced to the nonzero constant "
                                         + e.str());
        }
        System sub = subsystem();
        OrderMatrix a = sub.matrix();
        const std::size_t m = rows.size();

        // Base case: a column with a single finite entry splits off.
        std::optional<std::pair<std::size_t, std::size_t>> single;
        for (std::size_t j = 0; j < m && !single; ++j) {
            std::size_t count = 0, at = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (a.at(i, j).isFinite()) {
                    ++count;
                    at = i;
                }
            if (count == 1)
                single = {at, j};
        }
        if (single) {
            ReductionStep st;
            st.kind = StepKind::eliminate;
            st.divided = rows[single->first];
            st.inVar = cur.columns[cols[single->second]];
            st.note = "equation " + cur.labels[rows[single->first]] + " is the only one involving "
                      + cur.equations.front().ring()->name(st.inVar);
            OrderMatrix before = cur.matrix();
            rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(single->first));
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(single->second));
            record(std::move(st), before);
            continue;
        }
        bool zeroRow = false;
        for (std::size_t r : rows)
            zeroRow = zeroRow || cur.equations[r].isZero();
        if (zeroRow || tdet(a).value.isNegInf()) {
            stuck = true;
            break;
        }
        if (divisions >= res.budget)
            throw NonConvergence("linearReduce exceeded its budget of " + std::to_string(res.budget) + " steps");

        FormCertificate cert;
        StepKind kind = StepKind::firstForm;
        try {
            cert = toFirstForm(a);
        } catch (const HypothesisFailure&) {
            cert = toSecondForm(a);
            kind = StepKind::secondForm;
        }
        Perm newRows, newCols;
        for (std::size_t i : cert.rowPerm)
            newRows.push_back(rows[i]);
        for (std::size_t j : cert.colPerm)
            newCols.push_back(cols[j]);
        rows = newRows;
        cols = newCols;

        OrderMatrix before = cur.matrix();
        auto [next, st] = kind == StepKind::firstForm ? stepFirstForm(subsystem(), ranking)
                                                      : stepSecondForm(subsystem(), ranking);
        for (std::size_t i = 0; i < rows.size(); ++i)
            cur.equations[rows[i]] = next.equations[i];
        st.form = cert;
        st.divided = rows[st.divided];
        st.by = rows[st.by];
        st.note = "on the active " + std::to_string(m) + "x" + std::to_string(m) + " block";
        record(std::move(st), before);
        ++divisions;
    }

    res.finalSystem = cur;
    res.triangular = !stuck && isNestedTriangular(cur.matrix());
    if (!stuck && !res.triangular)
        throw InternalInvariantViolation("linearReduce finished without a nested-triangular matrix");
    std::vector<DiffPoly> nonzero;
    for (const auto& e : cur.equations)
        if (!e.isZero())
            nonzero.push_back(e);
    res.charset = autoreduceLoop(nonzero, ranking);
    if (res.charset.status == CharSetStatus::inconsistent)
        throw InconsistentSystem("the reduced system generates the unit ideal");
    if (res.charset.status == CharSetStatus::notConverged)
        throw NonConvergence("characteristic set computation did not converge");
    res.dims = dimensions(res.charset.charset, cur.equations.front().ring()->size());
    return res;
}

} // namespace diffalg
