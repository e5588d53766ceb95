#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <twistdef/cli.hpp>

#include "support.hpp"

using namespace twistdef;
using namespace tsupport;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string> &args, const std::string &stdin_text = {})
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string doc_line(const VarContext &ctx, doc::Payload p)
{
    return doc::serialize(doc::Document{ctx, std::move(p)});
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("schouten on the command line")
{
    const VarContext ctx({"x", "y"});
    const std::string a = doc_line(ctx, D(2, {1}, X(2, 0)));
    const std::string b = doc_line(ctx, D(2, {0}, X(2, 1)));
    const Run r = run_cli({"schouten"}, a + b);
    CHECK(r.code == 0);
    CHECK(r.out == doc_line(ctx, D(2, {0}, X(2, 0)) - D(2, {1}, X(2, 1))));
    const Run t = run_cli({"schouten", "--emit", "text"}, a + b);
    CHECK(t.out == "(x) D[x] + (-y) D[y]\n");
}

TEST_CASE("canonical documents round-trip byte for byte")
{
    const VarContext ctx = VarContext::numbered(3);
    std::vector<doc::Payload> payloads{
        mono(3, {2, 0, 1}, -7, 3) + C(3, 1),
        D(3, {0, 2}, X(3, 1)) + D(3, {1}, C(3, 1, 2)),
        dx(3, {0, 1, 2}, mono(3, {0, 0, 2})),
        hkr(D(3, {0, 1}, X(3, 2))),
        MultiDiffOp::function(X(3, 0)),
    };
    ArtinSeries s(3, ArtinRing(3));
    s.set(1, D(3, {0, 1}));
    s.set(3, D(3, {1, 2}, X(3, 0)));
    payloads.emplace_back(s);
    for (const auto &p : payloads) {
        const std::string line = doc_line(ctx, p);
        const auto back = doc::parse_one(line);
        CHECK(doc::serialize(back) == line);
        CHECK(line.find('\n') == line.size() - 1);
    }
    // A hand-written, non-canonical document canonicalises.
    const std::string loose = R"({"format_version":"1","context":{"vars":["x"]},"kind":"polynomial",
        "payload":[{"coeff":2,"exp":[1]},{"coeff":"1/2","exp":[0]},{"coeff":"-2","exp":[1]}]})";
    CHECK(doc::serialize(doc::parse_one(loose)) ==
          R"({"format_version":"1","context":{"vars":["x"]},"kind":"polynomial","payload":[{"coeff":"1/2","exp":[0]}]})" "\n");
}

TEST_CASE("shipped corpus documents are canonical after a round trip")
{
    std::size_t seen = 0;
    for (const auto &e : std::filesystem::directory_iterator(cli::default_corpus_dir())) {
        if (e.path().extension() != ".json") continue;
        const auto d = doc::parse_one(slurp(e.path()), e.path().filename().string());
        const std::string once = doc::serialize(d);
        CHECK(doc::serialize(doc::parse_one(once)) == once);
        ++seen;
    }
    CHECK(seen >= 20);
}

TEST_CASE("malformed input exits with 2 and a position")
{
    const Run r = run_cli({"d"}, "{\"format_version\": \"1\",\n \"context\": {\"vars\": [\"x\"]},\n \"kind\": \"form\", \"payload\": [}");
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    const Run s = run_cli({"d"}, R"({"format_version":"1","context":{"vars":["x"]},"kind":"form","payload":[{"coframe":[0,0],"poly":[]}]})");
    CHECK(s.code == 2);
    CHECK(s.err.find("/payload/0/coframe/1") != std::string::npos);

    const Run v = run_cli({"d"}, R"({"format_version":"2","context":{"vars":[]},"kind":"form","payload":[]})");
    CHECK(v.code == 2);
    CHECK(v.err.find("format_version") != std::string::npos);

    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"verify", "--suite", "nonsense"}).code == 2);
    CHECK(run_cli({"schouten", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("wrong kinds and counts are input errors")
{
    const VarContext ctx({"x", "y"});
    const std::string f = doc_line(ctx, dx(2, {0}));
    const std::string v = doc_line(ctx, D(2, {0}));
    CHECK(run_cli({"schouten"}, f + v).code == 2);
    CHECK(run_cli({"schouten"}, v).code == 2);
    CHECK(run_cli({"schouten"}, v + doc_line(VarContext({"x", "z"}), D(2, {0}))).code == 2);
    CHECK(run_cli({"contract"}, doc_line(ctx, dx(2, {0, 1})) + v).code == 2);
}

TEST_CASE("twisted-check exit codes")
{
    const VarContext ctx = VarContext::numbered(4);
    const std::string H = doc_line(ctx, dx(4, {0, 1, 2}));
    const std::string good = doc_line(ctx, D(4, {0, 1}));
    const std::string bad = doc_line(ctx, D(4, {0, 1}) + D(4, {2, 3}));
    CHECK(run_cli({"twisted-check"}, H + good).code == 0);
    const Run r = run_cli({"twisted-check", "--emit", "text"}, H + bad);
    CHECK(r.code == 1);
    CHECK(r.out == "false: defect (-6) D[x1,x2,x4]\n");
    const std::string open = doc_line(ctx, dx(4, {0, 1, 2}, X(4, 3)));
    CHECK(run_cli({"twisted-check"}, open + good).code == 1);
}

TEST_CASE("poly subcommands")
{
    const VarContext ctx({"x", "y"});
    const std::string p = doc_line(ctx, mono(2, {2, 1}));
    CHECK(run_cli({"poly", "derive", "--var", "x"}, p).out == doc_line(ctx, mono(2, {1, 1}, 2)));
    CHECK(run_cli({"poly", "derive", "--var", "1"}, p).out == doc_line(ctx, mono(2, {2, 0})));
    CHECK(run_cli({"poly", "scale", "--by", "1/2"}, p).out == doc_line(ctx, mono(2, {2, 1}, 1, 2)));
    CHECK(run_cli({"poly", "scale"}, p).code == 2);
    CHECK(run_cli({"poly", "derive", "--var", "w"}, p).code == 2);
    CHECK(run_cli({"poly", "add"}, p + p).out == doc_line(ctx, mono(2, {2, 1}, 2)));
}

TEST_CASE("hoch and deformation commands")
{
    const VarContext ctx({"x", "y"});
    const std::string biv = doc_line(ctx, D(2, {0, 1}));
    const Run h = run_cli({"hoch", "hkr"}, biv);
    CHECK(h.code == 0);
    CHECK(h.out == doc_line(ctx, hkr(D(2, {0, 1}))));
    CHECK(run_cli({"hoch", "primitive"}, h.out).code == 1);
    CHECK(run_cli({"hoch", "primitive", "--bounds-degree", "1", "--bounds-order", "1"}, h.out).code == 1);

    const std::string H = doc_line(ctx, DiffForm(2));
    const Run s = run_cli({"mc-solve", "--truncation", "4"}, H + biv);
    CHECK(s.code == 0);
    CHECK(s.out.find("\"status\":\"solved\"") != std::string::npos);

    ArtinSeries g1(2, ArtinRing(3)), g2(2, ArtinRing(3));
    g1.set(1, D(2, {0, 1}));
    g2.set(1, D(2, {0, 1}, C(2, 2)));
    const Run e = run_cli({"gauge-equiv"}, H + doc_line(ctx, g1) + doc_line(ctx, g2));
    CHECK(e.code == 1);
    CHECK(e.out.find("\"failed_order\":1") != std::string::npos);
}

TEST_CASE("identical invocations give identical bytes")
{
    const Run a = run_cli({"verify", "--suite", "corpus"});
    const Run b = run_cli({"verify", "--suite", "corpus"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}
