#include "diffalg/serialize.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

Json toJson(ExtInt v)
{
    if (v.isNegInf())
        return "-inf";
    return v.value();
}

Json toJson(const OrderMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(toJson(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json permToJson(const Perm& p)
{
    Json a = Json::array();
    for (std::size_t v : p)
        a.push_back(v + 1);
    return a;
}

Json toJson(const TdetResult& t)
{
    Json w = Json::array();
    for (const auto& p : t.witnesses)
        w.push_back(permToJson(p));
    return {{"value", toJson(t.value)}, {"witnesses", w}};
}

Json toJson(const DivisionCertificate& c)
{
    Json qs = Json::array();
    for (const auto& q : c.quotients) {
        Json terms = Json::array();
        for (const auto& [k, coeff] : q.coefficients())
            terms.push_back(Json::array({k, coeff.str()}));
        qs.push_back(terms);
    }
    return {{"s", c.s.str()}, {"quotients", qs}, {"remainder", c.remainder.str()}, {"mode", toString(c.mode)}};
}

Json toJson(const FormCertificate& c)
{
    Json j = {{"form", toString(c.form)}, {"row_perm", permToJson(c.rowPerm)}, {"col_perm", permToJson(c.colPerm)}};
    if (c.searchIndex)
        j["search_index"] = *c.searchIndex;
    return j;
}

Json toJson(const RittPencil& p)
{
    const Ring& ring = *p.separant.ring();
    Json gens = Json::array();
    for (const auto& g : p.generators())
        gens.push_back(g.str());
    Json base = Json::array();
    for (const auto& g : p.baseGenerators)
        base.push_back(g.str());
    return {{"pivot", p.pivot},
            {"var", ring.name(p.var)},
            {"leader", renderDerivative(ring, p.leader)},
            {"degree", p.degree},
            {"separant", p.separant.str()},
            {"coseparant", p.coseparant.str()},
            {"pencil_variable", p.extendedRing->name(p.pencilVar)},
            {"generator", p.generator.str()},
            {"generators", gens},
            {"base_generators", base}};
}

Json toJson(const ReductionStep& s)
{
    Json j = {{"kind", toString(s.kind)},
              {"J_before", toJson(s.jBefore)},
              {"J_after", toJson(s.jAfter)},
              {"J_weak_before", toJson(s.jWeakBefore)},
              {"J_weak_after", toJson(s.jWeakAfter)},
              {"matrix_after", toJson(s.matrixAfter)}};
    if (s.kind != StepKind::eliminate) {
        j["divided"] = s.divided;
        j["by"] = s.by;
    }
    if (s.certificate) {
        j["var"] = s.certificate->s.ring()->name(s.inVar);
        j["certificate"] = toJson(*s.certificate);
    }
    if (s.form)
        j["form_certificate"] = toJson(*s.form);
    if (!s.note.empty())
        j["note"] = s.note;
    return j;
}

Json toJson(const Trace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back(toJson(s));
    Json seq = Json::array(), weak = Json::array();
    for (ExtInt v : t.jSequence)
        seq.push_back(toJson(v));
    for (ExtInt v : t.jWeakSequence)
        weak.push_back(toJson(v));
    return {{"steps", steps}, {"J_sequence", seq}, {"J_weak_sequence", weak}};
}

Json toJson(const AutoreducedSet& a)
{
    Json el = Json::array();
    for (const auto& e : a.elements)
        el.push_back(e.str());
    return el;
}

Json toJson(const Dimensions& d)
{
    Json j = {{"diff_dim", d.diffDim}};
    j["abs_dim_bound"] = d.absDimBound ? Json(*d.absDimBound) : Json("inf");
    return j;
}

ExtInt extIntFromJson(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "-inf")
        return ExtInt::negInf();
    if (j.is_number_integer())
        return ExtInt(j.get<std::int64_t>());
    throw Error("matrix entry must be an integer or \"-inf\"");
}

OrderMatrix matrixFromJson(const Json& j, Convention convention)
{
    if (!j.is_array())
        throw Error("matrix must be a JSON array of rows");
    std::vector<std::vector<ExtInt>> rows;
    for (const auto& r : j) {
        if (!r.is_array())
            throw Error("matrix row must be an array");
        std::vector<ExtInt> row;
        for (const auto& v : r)
            row.push_back(extIntFromJson(v));
        rows.push_back(row);
    }
    return OrderMatrix::fromRows(rows, convention);
}

} // namespace diffalg
