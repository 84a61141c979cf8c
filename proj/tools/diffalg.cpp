// diffalg: command-line front end for the differential-algebra workbench.

#include "diffalg/corpus.hpp"
#include "diffalg/engine.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/parser.hpp"
#include "diffalg/pencil.hpp"
#include "diffalg/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace diffalg;

namespace {

struct Common {
    std::string file;
    std::string vars;
    std::string convention = "strong";
    std::string ranking = "orderly";
    bool json = false;
};

struct Loaded {
    ParsedSystem parsed;
    System system;
    Ranking ranking;
    Convention convention;
};

std::string readInput(const std::string& path)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

Ranking parseRanking(const std::string& spec, const Ring& ring)
{
    if (spec == "orderly")
        return Ranking::orderly();
    if (spec.rfind("elim:", 0) != 0)
        throw Error("unknown ranking '" + spec + "' (expected orderly or elim:block1;block2)");
    std::vector<std::vector<std::size_t>> blocks;
    std::stringstream ss(spec.substr(5));
    std::string block;
    while (std::getline(ss, block, ';')) {
        std::vector<std::size_t> b;
        for (const auto& name : splitVarList(block)) {
            auto v = ring.indexOf(name);
            if (!v)
                throw Error("ranking refers to unknown variable '" + name + "'");
            b.push_back(*v);
        }
        blocks.push_back(b);
    }
    Ranking r = Ranking::blockElimination(blocks);
    r.validateFor(ring.size());
    return r;
}

Loaded load(const Common& c)
{
    std::optional<std::vector<std::string>> declared;
    if (!c.vars.empty())
        declared = splitVarList(c.vars);
    Loaded l{parseSystem(readInput(c.file), declared), {}, Ranking::orderly(), Convention::strong};
    if (l.parsed.equations.empty())
        throw Error("usage: '" + c.file + "' contains no equations");
    l.system = System::of(l.parsed.equations, l.parsed.labels);
    l.ranking = parseRanking(c.ranking, *l.parsed.ring);
    if (c.convention == "weak")
        l.convention = Convention::weak;
    else if (c.convention != "strong")
        throw Error("unknown convention '" + c.convention + "'");
    return l;
}

std::size_t varIndex(const Ring& ring, const std::string& name)
{
    auto v = ring.indexOf(name);
    if (!v)
        throw Error("unknown variable '" + name + "'");
    return *v;
}

void emit(const Common& c, const Json& j, const std::string& text)
{
    if (c.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string perms(const std::vector<Perm>& ws)
{
    std::string s;
    for (std::size_t i = 0; i < ws.size(); ++i)
        s += (i ? " " : "") + permToString(ws[i]);
    return s;
}

std::string traceText(const Trace& t)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        os << "step " << i + 1 << " [" << toString(s.kind) << "]";
        if (s.certificate)
            os << " u" << s.divided + 1 << " by u" << s.by + 1 << " in " << s.certificate->s.ring()->name(s.inVar);
        if (!s.note.empty())
            os << " (" << s.note << ")";
        os << ": J " << s.jBefore << " -> " << s.jAfter << "\n" << s.matrixAfter.render();
    }
    auto join = [](const std::vector<ExtInt>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i].str();
        return s;
    };
    os << "J(strong) sequence: " << join(t.jSequence) << "\n";
    os << "J(weak) sequence: " << join(t.jWeakSequence) << "\n";
    return os.str();
}

void addCommon(CLI::App* sub, Common& c, bool needsFile = true)
{
    if (needsFile)
        sub->add_option("file", c.file, "system file ('-' for stdin)")->required();
    sub->add_option("--vars", c.vars, "column order, e.g. x,y,z");
    sub->add_option("--convention", c.convention, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
    sub->add_option("--ranking", c.ranking, "orderly or elim:block1;block2 (later blocks rank higher)");
    sub->add_flag("--json", c.json, "machine-readable output");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Differential-algebra workbench: order matrices, Jacobi numbers, Ritt reduction"};
    app.require_subcommand(1);
    Common c;

    auto* jacobi = app.add_subcommand("jacobi", "Jacobi number and maximal transversals, both conventions");
    addCommon(jacobi, c);
    auto* matrix = app.add_subcommand("matrix", "order matrix");
    addCommon(matrix, c);

    std::size_t dividend = 0, divisor = 1;
    std::string divVar, modeName = "partial";
    auto* divide = app.add_subcommand("divide", "one Ritt division with its certificate");
    addCommon(divide, c);
    divide->add_option("--dividend", dividend, "0-based equation index")->required();
    divide->add_option("--divisor", divisor, "0-based equation index")->required();
    divide->add_option("--var", divVar, "divide in this variable (default: leaders from the ranking)");
    divide->add_option("--mode", modeName, "partial or full")->check(CLI::IsMember({"partial", "full"}));

    std::size_t maxRounds = 64;
    auto* autoreduce = app.add_subcommand("autoreduce", "characteristic set of one saturation branch");
    addCommon(autoreduce, c);
    autoreduce->add_option("--max-rounds", maxRounds);
    auto* dims = app.add_subcommand("dims", "differential dimension and absolute dimension bound");
    addCommon(dims, c);
    dims->add_option("--max-rounds", maxRounds);

    auto* forms = app.add_subcommand("forms", "detect and normalize Ritt's first/second forms");
    addCommon(forms, c);
    auto* reduceLinear = app.add_subcommand("reduce-linear", "Ritt's reduction of a linear system");
    addCommon(reduceLinear, c);

    std::string script;
    auto* trace = app.add_subcommand("trace", "scripted divisions, e.g. --script \"0/2@x;1/2@x\"");
    addCommon(trace, c);
    trace->add_option("--script", script, "dividend/divisor@var entries separated by ';'")->required();

    std::size_t pivot = 0;
    std::string pencilVar;
    std::vector<std::string> mus;
    auto* pencil = app.add_subcommand("pencil", "Ritt pencil of a pivot equation and some fibers");
    addCommon(pencil, c);
    pencil->add_option("--pivot", pivot, "0-based equation index");
    pencil->add_option("--var", pencilVar, "pivot variable")->required();
    pencil->add_option("--mu", mus, "fiber parameters (rationals)");

    auto* examples = app.add_subcommand("examples", "recompute the bundled worked examples");
    addCommon(examples, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (examples->parsed()) {
            auto checks = runCorpus();
            bool all = true;
            Json j = Json::array();
            std::ostringstream os;
            for (const auto& ch : checks) {
                all = all && ch.pass;
                os << (ch.pass ? "PASS " : "FAIL ") << ch.name;
                if (!ch.pass)
                    os << " (expected " << ch.expected << ", got " << ch.actual << ")";
                os << "\n";
                j.push_back({{"name", ch.name}, {"expected", ch.expected}, {"actual", ch.actual}, {"pass", ch.pass}});
            }
            emit(c, j, os.str());
            return all ? 0 : 1;
        }

        Loaded l = load(c);
        const Ring& ring = *l.parsed.ring;

        if (jacobi->parsed()) {
            TdetResult w = tdet(l.system.matrix(Convention::weak));
            TdetResult s = tdet(l.system.matrix(Convention::strong));
            std::ostringstream os;
            os << "J(weak)=" << w.value << " J(strong)=" << s.value << "\n";
            os << "weak witnesses: " << perms(w.witnesses) << "\n";
            os << "strong witnesses: " << perms(s.witnesses) << "\n";
            emit(c, {{"J_weak", toJson(w.value)}, {"J_strong", toJson(s.value)}, {"weak", toJson(w)}, {"strong", toJson(s)}},
                 os.str());
        } else if (matrix->parsed()) {
            OrderMatrix m = l.system.matrix(l.convention);
            emit(c, {{"convention", c.convention}, {"columns", m.colLabels}, {"matrix", toJson(m)}}, m.render());
        } else if (divide->parsed()) {
            const auto& eqs = l.system.equations;
            if (dividend >= eqs.size() || divisor >= eqs.size())
                throw Error("equation index out of range");
            std::optional<std::size_t> var;
            if (!divVar.empty())
                var = varIndex(ring, divVar);
            DivisionMode mode = modeName == "full" ? DivisionMode::full : DivisionMode::partial;
            auto cert = rittDivide(eqs[dividend], {eqs[divisor]}, mode, l.ranking, var);
            std::ostringstream os;
            os << "s = " << cert.s << "\nQ = " << cert.quotients.front().str() << "\nr = " << cert.remainder << "\n";
            emit(c, toJson(cert), os.str());
        } else if (autoreduce->parsed() || dims->parsed()) {
            auto res = autoreduceLoop(l.system.equations, l.ranking, maxRounds);
            const char* status = res.status == CharSetStatus::converged    ? "converged"
                                 : res.status == CharSetStatus::inconsistent ? "inconsistent"
                                                                              : "not-converged";
            Json j = {{"status", status}, {"rounds", res.rounds}, {"charset", toJson(res.charset)}};
            Json mult = Json::array();
            for (const auto& m : res.multipliers)
                mult.push_back(m.str());
            j["multipliers"] = mult;
            std::ostringstream os;
            os << "status: " << status << " after " << res.rounds << " round(s)\n";
            if (res.status == CharSetStatus::inconsistent)
                throw InconsistentSystem("the system generates the unit ideal");
            for (const auto& e : res.charset.elements)
                os << "  " << e << "\n";
            if (dims->parsed()) {
                Dimensions d = dimensions(res.charset, ring.size());
                j["dimensions"] = toJson(d);
                os << "diffDim=" << d.diffDim << " absDimBound="
                   << (d.absDimBound ? std::to_string(*d.absDimBound) : std::string("inf")) << "\n";
            }
            emit(c, j, os.str());
            if (res.status == CharSetStatus::notConverged)
                return 1;
        } else if (forms->parsed()) {
            OrderMatrix m = l.system.matrix();
            Json j = {{"first_form", detectFirstForm(m)}, {"second_form", detectSecondForm(m)}};
            std::ostringstream os;
            os << m.render() << "first form: " << (detectFirstForm(m) ? "yes" : "no")
               << ", second form: " << (detectSecondForm(m) ? "yes" : "no") << "\n";
            std::optional<FormCertificate> cert;
            std::string why;
            try {
                cert = toFirstForm(m);
            } catch (const HypothesisFailure& e) {
                why = std::string("first form: ") + e.what();
                try {
                    cert = toSecondForm(m);
                } catch (const HypothesisFailure& e2) {
                    why += std::string("; second form: ") + e2.what();
                }
            }
            if (cert) {
                OrderMatrix out = cert->apply(m);
                j["certificate"] = toJson(*cert);
                j["normalized"] = toJson(out);
                os << "normalized to " << toString(cert->form) << " form with rows " << permToString(cert->rowPerm)
                   << ", columns " << permToString(cert->colPerm) << "\n" << out.render();
            } else {
                j["hypotheses"] = why;
                os << "no normal form: " << why << "\n";
            }
            emit(c, j, os.str());
        } else if (reduceLinear->parsed()) {
            auto res = linearReduce(l.system, l.ranking);
            Json j = toJson(res.trace);
            j["charset"] = toJson(res.charset.charset);
            j["dimensions"] = toJson(res.dims);
            j["initial_J"] = toJson(res.initialJ);
            j["triangular"] = res.triangular;
            std::ostringstream os;
            os << traceText(res.trace) << "final system:\n";
            for (const auto& e : res.finalSystem.equations)
                os << "  " << e << "\n";
            os << "diffDim=" << res.dims.diffDim << " absDimBound="
               << (res.dims.absDimBound ? std::to_string(*res.dims.absDimBound) : std::string("inf"))
               << " (initial J=" << res.initialJ << ")\n";
            emit(c, j, os.str());
        } else if (trace->parsed()) {
            Trace t = scriptedDivide(l.system, parseScript(script, ring), l.ranking);
            emit(c, toJson(t), traceText(t));
        } else if (pencil->parsed()) {
            RittPencil p = buildPencil(l.system.equations, pivot, varIndex(ring, pencilVar));
            Json j = toJson(p);
            std::ostringstream os;
            os << "leader " << renderDerivative(ring, p.leader) << ", degree " << p.degree << "\n"
               << "s1 = " << p.separant << "\nt1 = " << p.coseparant << "\ngenerator: " << p.generator << "\n";
            Json fibers = Json::array();
            for (const auto& text : mus) {
                Rational mu;
                try {
                    mu = Rational(text);
                    mu.canonicalize();
                } catch (const std::invalid_argument&) {
                    throw Error("invalid rational '" + text + "'");
                }
                auto fiber = fiberAt(p, mu);
                Json fj = Json::array();
                os << "fiber at " << mu.get_str() << ":\n";
                for (const auto& e : fiber) {
                    fj.push_back(e.str());
                    os << "  " << e << "\n";
                }
                fibers.push_back({{"mu", mu.get_str()}, {"equations", fj}});
            }
            j["fibers"] = fibers;
            emit(c, j, os.str());
        }
        return 0;
    } catch (const InternalInvariantViolation& e) {
        if (c.json)
            std::cout << Json{{"error", e.what()}, {"kind", "internal-invariant-violation"}}.dump(2) << "\n";
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateSituation& e) {
        if (c.json)
            std::cout << Json{{"error", e.what()}, {"kind", "degenerate-situation"}, {"pivot", e.pivot()}}.dump(2)
                      << "\n";
        std::cerr << "degenerate situation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        if (c.json)
            std::cout << Json{{"error", e.what()}, {"kind", "error"}}.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
