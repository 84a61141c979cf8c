#include "diffalg/pencil.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

Coseparant coseparant(const DiffPoly& u, std::size_t var)
{
    Derivative l = leaderIn(u, var);
    std::uint32_t d = u.degreeIn(l);
    DiffPoly s = u.partial(l);
    DiffPoly t = Rational(d) * u - DiffPoly::monomial(u.ring(), Monomial(l)) * s;
    return {t, s, l, d};
}

bool isDegenerate(const DiffPoly& u, std::size_t var, const AutoreducedSet& charset)
{
    return membership(separant(u, var), charset);
}

std::string freshVariableName(const Ring& ring)
{
    if (!ring.indexOf("w"))
        return "w";
    for (std::size_t k = 1;; ++k) {
        std::string name = "w" + std::to_string(k);
        if (!ring.indexOf(name))
            return name;
    }
}

std::vector<DiffPoly> RittPencil::generators() const
{
    std::vector<DiffPoly> out{generator};
    for (std::size_t j = 0; j < system.size(); ++j)
        if (j != pivot)
            out.push_back(system[j].liftTo(extendedRing));
    return out;
}

RittPencil buildPencil(const std::vector<DiffPoly>& system, std::size_t pivot, std::size_t var)
{
    if (pivot >= system.size())
        throw Error("pencil pivot index out of range");
    const DiffPoly& u = system[pivot];
    if (var >= u.ring()->size())
        throw Error("pencil variable index out of range");
    if (!u.involvesVar(var))
        throw Error("pivot equation does not involve " + u.ring()->name(var));
    for (const auto& p : system)
        if (!sameRing(p.ring(), u.ring()))
            throw Error("pencil system over mixed rings");

    Coseparant c = coseparant(u, var);
    auto names = u.ring()->names();
    names.push_back(freshVariableName(*u.ring()));
    RingPtr extended = Ring::make(names);
    std::size_t w = names.size() - 1;
    DiffPoly generator = c.t.liftTo(extended) + DiffPoly::derivative(extended, w, 0) * c.s.liftTo(extended);
    RittPencil p{pivot, var, c.leader, c.degree, c.s, c.t, extended, w, generator, system, {}};

    p.baseGenerators = {c.t, c.s};
    for (std::size_t j = 0; j < system.size(); ++j)
        if (j != pivot)
            p.baseGenerators.push_back(system[j]);
    return p;
}

std::vector<DiffPoly> fiberAt(const RittPencil& pencil, const Rational& mu)
{
    std::vector<DiffPoly> out = pencil.system;
    out[pencil.pivot] = pencil.coseparant + mu * pencil.separant;
    return out;
}

} // namespace diffalg
