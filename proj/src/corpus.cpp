#include "diffalg/corpus.hpp"
#include "diffalg/engine.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/parser.hpp"
#include "diffalg/pencil.hpp"
#include "diffalg/serialize.hpp"

#include <functional>

namespace diffalg {

const std::vector<CorpusSystem>& corpusSystems()
{
    static const std::vector<CorpusSystem> systems = {
        {"j_increasing",
         "vars x, y, z\n"
         "u1 := x^(100) + y' + z'\n"
         "u2 := x^(50) + y + z\n"
         "u3 := x' + y' + 1\n"},
        {"weak_strong",
         "vars x, y\n"
         "u := x' + y^(18)\n"
         "v := (y')^2 + y\n"},
        {"second_form_counterexample",
         "vars x, y, z\n"
         "u1 := x + x' + y'' + z'''\n"
         "u2 := x' + y' + z'\n"
         "u3 := x'' + y' + z'\n"},
        {"triangular",
         "vars x, y\n"
         "x' - x\n"
         "y' - x\n"},
        {"pencil",
         "vars x, y\n"
         "(x')^2 - x\n"
         "y' - x\n"},
    };
    return systems;
}

const CorpusSystem& corpusSystem(const std::string& name)
{
    for (const auto& s : corpusSystems())
        if (s.name == name)
            return s;
    throw Error("no corpus example named '" + name + "'");
}

namespace {

std::string seq(const std::vector<ExtInt>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].str();
    return s;
}

System load(const std::string& name)
{
    ParsedSystem p = parseSystem(corpusSystem(name).text);
    return System::of(p.equations, p.labels);
}

} // namespace

std::vector<CorpusCheck> runCorpus()
{
    std::vector<CorpusCheck> out;
    auto check = [&](std::string name, std::string expected, const std::function<std::string()>& compute) {
        CorpusCheck c{std::move(name), std::move(expected), "", false};
        try {
            c.actual = compute();
        } catch (const std::exception& e) {
            c.actual = std::string("error: ") + e.what();
        }
        c.pass = c.actual == c.expected;
        out.push_back(std::move(c));
    };
    Ranking orderly = Ranking::orderly();

    check("j_increasing: J strong", "101", [] { return load("j_increasing").jacobi(Convention::strong).str(); });
    check("j_increasing: J weak", "101", [] { return load("j_increasing").jacobi(Convention::weak).str(); });
    check("j_increasing: strong matrix", "[[100,1,1],[50,0,0],[1,1,\"-inf\"]]",
          [] { return toJson(load("j_increasing").matrix()).dump(); });
    check("j_increasing: weak J along 0/2@x;1/2@x", "101,150,101", [&] {
        System s = load("j_increasing");
        auto script = parseScript("0/2@x;1/2@x", *s.equations.front().ring());
        return seq(scriptedDivide(s, script, orderly).jWeakSequence);
    });
    check("weak_strong: weak matrix", "[[1,18],[0,1]]",
          [] { return toJson(load("weak_strong").matrix(Convention::weak)).dump(); });
    check("weak_strong: strong matrix", "[[1,18],[\"-inf\",1]]",
          [] { return toJson(load("weak_strong").matrix()).dump(); });
    check("weak_strong: J weak", "18", [] { return load("weak_strong").jacobi(Convention::weak).str(); });
    check("weak_strong: J strong", "2", [] { return load("weak_strong").jacobi().str(); });
    check("second_form_counterexample: matrix", "[[1,2,3],[1,1,1],[2,1,1]]",
          [] { return toJson(load("second_form_counterexample").matrix()).dump(); });
    check("second_form_counterexample: J", "6", [] { return load("second_form_counterexample").jacobi().str(); });
    check("second_form_counterexample: in second form", "false",
          [] { return detectSecondForm(load("second_form_counterexample").matrix()) ? "true" : "false"; });
    check("second_form_counterexample: matrix after 2/0@x", "[[1,2,3],[1,1,1],[1,3,4]]", [&] {
        System s = load("second_form_counterexample");
        auto tr = scriptedDivide(s, parseScript("2/0@x", *s.equations.front().ring()), orderly);
        return toJson(tr.steps.back().matrixAfter).dump();
    });
    check("second_form_counterexample: J after 2/0@x", "6,7", [&] {
        System s = load("second_form_counterexample");
        return seq(scriptedDivide(s, parseScript("2/0@x", *s.equations.front().ring()), orderly).jSequence);
    });
    check("triangular: dims", "{\"abs_dim_bound\":2,\"diff_dim\":0}", [&] {
        System s = load("triangular");
        return toJson(linearReduce(s, orderly).dims).dump();
    });
    check("pencil: generator", "2*x'*w - 2*x", [] {
        System s = load("pencil");
        return buildPencil(s.equations, 0, 0).generator.str();
    });
    return out;
}

} // namespace diffalg
