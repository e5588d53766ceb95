#include <twistdef/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include <twistdef/errors.hpp>
#include <twistdef/suites.hpp>
#include <twistdef/twistcheck.hpp>

#ifndef TWISTDEF_CORPUS_DIR
#define TWISTDEF_CORPUS_DIR "corpus"
#endif

namespace twistdef::cli {

using doc::Document;
using doc::Json;
using doc::ParseError;

namespace {

struct Inputs {
    const std::vector<Document> &docs;
    std::string command;

    std::string label(std::size_t i) const { return command + " input " + std::to_string(i + 1); }

    void count(std::size_t lo, std::size_t hi) const
    {
        const std::size_t n = docs.size();
        if (n < lo || n > hi) {
            const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
            throw ParseError(command, "expected " + want + " input documents, got " + std::to_string(n));
        }
    }

    const VarContext &context() const
    {
        static const VarContext none;
        if (docs.empty()) return none;
        for (std::size_t i = 1; i < docs.size(); ++i)
            if (!(docs[i].context == docs[0].context)) throw ParseError(label(i), "variable context differs from the first input");
        return docs[0].context;
    }

    const Polynomial &poly(std::size_t i) const { return doc::as_polynomial(docs.at(i), label(i)); }
    const PolyVector &mv(std::size_t i) const { return doc::as_multivector(docs.at(i), label(i)); }
    const DiffForm &form(std::size_t i) const { return doc::as_form(docs.at(i), label(i)); }
    const MultiDiffOp &op(std::size_t i) const { return doc::as_multidiffop(docs.at(i), label(i)); }
    const ArtinSeries &series(std::size_t i) const { return doc::as_series(docs.at(i), label(i)); }
};

Outcome single(const VarContext &ctx, doc::Payload p, std::string text)
{
    Outcome o;
    o.documents.push_back(Document{ctx, std::move(p)});
    o.text.push_back(std::move(text));
    return o;
}

Outcome report(const VarContext &ctx, Json body, std::vector<std::string> text, bool passed)
{
    Outcome o;
    o.exit = passed ? ok : check_failed;
    o.documents.push_back(Document{ctx, doc::Report{std::move(body)}});
    o.text = std::move(text);
    return o;
}

Json tuple_json(const std::vector<PolyVector> &t)
{
    Json a = Json::array();
    for (const auto &v : t) a.push_back(doc::multivector_to_json(v));
    return a;
}

std::string tuple_text(const std::vector<PolyVector> &t, const VarContext &ctx)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].to_string(ctx);
    return s + ")";
}

Json equality_json(const std::string &name, const EqualityReport &r)
{
    Json j = Json::object();
    j["name"] = name;
    j["passed"] = r.equal;
    j["tuples_checked"] = r.tuples_checked;
    if (r.witness) {
        Json w = Json::object();
        w["tuple"] = tuple_json(r.witness->tuple);
        w["lhs"] = doc::multivector_to_json(r.witness->lhs);
        w["rhs"] = doc::multivector_to_json(r.witness->rhs);
        j["witness"] = std::move(w);
    }
    return j;
}

std::string equality_text(const std::string &name, const EqualityReport &r, const VarContext &ctx)
{
    std::string s = (r.equal ? "PASS " : "FAIL ") + name + " (" + std::to_string(r.tuples_checked) + " tuples)";
    if (r.witness)
        s += ": on " + tuple_text(r.witness->tuple, ctx) + " got " + r.witness->lhs.to_string(ctx) + ", expected " +
             r.witness->rhs.to_string(ctx);
    return s;
}

BasisBounds basis_bounds(const Flags &f)
{
    BasisBounds b;
    if (f.bounds_degree) b.poly_degree = *f.bounds_degree;
    return b;
}

unsigned degree_bound(const Flags &f, unsigned fallback)
{
    return f.bounds_degree.value_or(fallback);
}

std::size_t variable_index(const std::string &v, const VarContext &ctx)
{
    const auto &names = ctx.names();
    auto it = std::find(names.begin(), names.end(), v);
    if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
    try {
        std::size_t used = 0;
        const unsigned long i = std::stoul(v, &used);
        if (used == v.size() && i < ctx.size()) return i;
    } catch (const std::exception &) {
    }
    throw ParseError("--var", "\"" + v + "\" is neither a variable name nor an index below " + std::to_string(ctx.size()));
}

/// make_twisted, with a closedness failure turned into a failed-check report.
std::optional<TwistedStructure> twisted_or_report(const DiffForm &H, const VarContext &ctx, const std::string &cmd, Outcome &out)
{
    try {
        return make_twisted(H);
    } catch (const NotClosed &e) {
        Json body = Json::object();
        body["command"] = cmd;
        body["closed"] = false;
        body["dH"] = doc::form_to_json(e.dH());
        out = report(ctx, std::move(body), {"FAIL H is not closed: dH = " + e.dH().to_string(ctx)}, false);
        return std::nullopt;
    }
}

Outcome cmd_poly(const Invocation &inv, const Inputs &in)
{
    if (inv.words.size() != 1) throw ParseError("poly", "expected one operation: add, mul, scale or derive");
    const std::string &op = inv.words[0];
    const auto &ctx = in.context();
    Polynomial r;
    if (op == "add" || op == "mul") {
        in.count(2, 2);
        r = poly_arith(op == "add" ? PolyOp::add : PolyOp::mul, in.poly(0), in.poly(1));
    } else if (op == "scale") {
        in.count(1, 1);
        if (!inv.flags.by) throw ParseError("poly scale", "missing --by");
        Rational c;
        try {
            c = Rational::parse(*inv.flags.by);
        } catch (const std::exception &e) {
            throw ParseError("--by", e.what());
        }
        r = poly_arith(PolyOp::scale, in.poly(0), c);
    } else if (op == "derive") {
        in.count(1, 1);
        if (!inv.flags.var) throw ParseError("poly derive", "missing --var");
        r = partial_derive(in.poly(0), variable_index(*inv.flags.var, ctx));
    } else {
        throw ParseError("poly", "unknown operation \"" + op + "\"");
    }
    return single(ctx, r, r.to_string(ctx));
}

Outcome cmd_wedge(const Inputs &in)
{
    in.count(2, 2);
    const auto &ctx = in.context();
    if (std::holds_alternative<DiffForm>(in.docs[0].payload)) {
        const DiffForm w = wedge(in.form(0), in.form(1));
        return single(ctx, w, w.to_string(ctx));
    }
    const PolyVector v = wedge(in.mv(0), in.mv(1));
    return single(ctx, v, v.to_string(ctx));
}

Outcome cmd_phi_eval(const Inputs &in)
{
    if (in.docs.empty()) in.count(1, 1);
    const auto &ctx = in.context();
    const DiffForm &w = in.form(0);
    std::vector<PolyVector> args;
    for (std::size_t i = 1; i < in.docs.size(); ++i) args.push_back(in.mv(i));
    const int k = static_cast<int>(args.size());
    if (!w.is_zero() && w.degree() != k)
        throw DegreeError("phi-eval: a " + (w.degree() ? std::to_string(*w.degree()) + "-form" : std::string("mixed-degree form")) +
                          " needs as many multivector arguments, got " + std::to_string(k));
    const PolyVector v = phi(w, k)(std::span<const PolyVector>(args));
    return single(ctx, v, v.to_string(ctx));
}

Outcome cmd_lemma_check(const Invocation &inv, const Inputs &in)
{
    in.count(1, 2);
    const auto &ctx = in.context();
    const BasisBounds b = basis_bounds(inv.flags);
    Json checks = Json::array();
    std::vector<std::string> text;
    bool passed = true;
    auto record = [&](const std::string &name, const EqualityReport &r) {
        passed = passed && r.equal;
        checks.push_back(equality_json(name, r));
        text.push_back(equality_text(name, r, ctx));
    };
    std::vector<PhiCochain> images;
    for (std::size_t i = 0; i < in.docs.size(); ++i) {
        const DiffForm &w = in.form(i);
        if (!w.is_zero() && !w.degree()) throw DegreeError("lemma-check: " + in.label(i) + " is not homogeneous");
        const int k = w.is_zero() ? 0 : *w.degree();
        images.push_back(phi(w, k));
        record("d phi(a" + std::to_string(i + 1) + ") = phi(d a" + std::to_string(i + 1) + ")",
               cochain_equal_on_basis(cochain_differential(images.back()), phi(d_form(w), k + 1), b));
    }
    if (images.size() == 2) record("[phi(a1), phi(a2)] = 0", cochain_vanishes_on_basis(cochain_bracket(images[0], images[1]), b));
    Json body = Json::object();
    body["command"] = "lemma-check";
    body["passed"] = passed;
    body["checks"] = std::move(checks);
    return report(ctx, std::move(body), std::move(text), passed);
}

Outcome cmd_linfty_check(const Invocation &inv, const Inputs &in)
{
    in.count(1, 1);
    const auto &ctx = in.context();
    const DiffForm &H = in.form(0);
    if (!H.is_zero() && H.degree() != 3) throw DegreeError("linfty-check: H must be a 3-form");
    const auto r = linfty_relations_check(structure_cochain(ctx.size()), phi(H, 3), basis_bounds(inv.flags));
    Json rel = Json::array();
    std::vector<std::string> text;
    for (const auto &x : r.relations) {
        rel.push_back(equality_json(x.name, x.report));
        text.push_back(equality_text(x.name, x.report, ctx));
    }
    Json body = Json::object();
    body["command"] = "linfty-check";
    body["passed"] = r.passed;
    body["relations"] = std::move(rel);
    return report(ctx, std::move(body), std::move(text), r.passed);
}

Outcome cmd_mc_defect(const Inputs &in)
{
    in.count(2, 2);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "mc-defect", out);
    if (!s) return out;
    const PolyVector d = mc_defect(*s, in.mv(1));
    return single(ctx, d, d.to_string(ctx));
}

Outcome cmd_twisted_check(const Inputs &in)
{
    in.count(2, 2);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "twisted-check", out);
    if (!s) return out;
    const PolyVector d = mc_defect(*s, in.mv(1));
    Json body = Json::object();
    body["command"] = "twisted-check";
    body["closed"] = true;
    body["twisted_poisson"] = d.is_zero();
    body["defect"] = doc::multivector_to_json(d);
    return report(ctx, std::move(body), {d.is_zero() ? "true" : "false: defect " + d.to_string(ctx)}, d.is_zero());
}

Outcome cmd_hoch(const Invocation &inv, const Inputs &in)
{
    if (inv.words.size() != 1) throw ParseError("hoch", "expected one operation: delta, gb, cup, brace, ia, hkr or primitive");
    const std::string &op = inv.words[0];
    const auto &ctx = in.context();
    MultiDiffOp r;
    if (op == "delta") {
        in.count(1, 1);
        r = hoch_delta(in.op(0));
    } else if (op == "gb") {
        in.count(2, 2);
        r = gerstenhaber(in.op(0), in.op(1));
    } else if (op == "cup") {
        in.count(2, 2);
        r = cup(in.op(0), in.op(1));
    } else if (op == "brace") {
        in.count(1, 64);
        std::vector<MultiDiffOp> args;
        for (std::size_t i = 1; i < in.docs.size(); ++i) args.push_back(in.op(i));
        r = brace(in.op(0), std::span<const MultiDiffOp>(args));
    } else if (op == "ia") {
        in.count(2, 2);
        r = i_func_hoch(in.poly(0), in.op(1));
    } else if (op == "hkr") {
        in.count(1, 1);
        r = hkr(in.mv(0));
    } else if (op == "primitive") {
        in.count(1, 1);
        PrimitiveBounds b;
        if (inv.flags.bounds_degree) b.poly_degree = *inv.flags.bounds_degree;
        if (inv.flags.bounds_order) b.op_order = *inv.flags.bounds_order;
        const auto res = delta_primitive(in.op(0), b);
        Json body = Json::object();
        body["command"] = "hoch primitive";
        body["found"] = res.found;
        body["unknowns"] = res.unknowns;
        body["rank"] = res.rank;
        body["augmented_rank"] = res.augmented_rank;
        if (res.primitive) body["primitive"] = doc::multidiffop_to_json(*res.primitive);
        else body["residual"] = doc::multidiffop_to_json(res.residual);
        std::vector<std::string> text;
        if (res.found) text.push_back("primitive " + res.primitive->to_string(ctx));
        else
            text.push_back("no primitive within bounds: rank " + std::to_string(res.rank) + ", augmented rank " +
                           std::to_string(res.augmented_rank) + " over " + std::to_string(res.unknowns) + " unknowns");
        return report(ctx, std::move(body), std::move(text), res.found);
    } else {
        throw ParseError("hoch", "unknown operation \"" + op + "\"");
    }
    return single(ctx, r, r.to_string(ctx));
}

Json solve_json(const SolveReport &r)
{
    Json body = Json::object();
    body["command"] = "mc-solve";
    body["status"] = r.status == SolveStatus::Solved ? "solved" : "obstructed";
    body["poly_degree"] = r.poly_degree;
    if (r.status == SolveStatus::Obstructed) {
        body["obstructed_order"] = r.obstructed_order;
        body["residual"] = doc::multivector_to_json(r.residual);
    }
    body["residual_terms"] = r.residual_terms;
    body["solution"] = doc::series_to_json(r.solution);
    return body;
}

std::vector<std::string> series_text(const ArtinSeries &s, const VarContext &ctx, const std::string &name)
{
    std::vector<std::string> out;
    for (int k = 1; k <= s.truncation(); ++k)
        if (!s.coeff(k).is_zero()) out.push_back(name + "_" + std::to_string(k) + " = " + s.coeff(k).to_string(ctx));
    if (out.empty()) out.push_back(name + " = 0");
    return out;
}

Outcome cmd_mc_solve(const Invocation &inv, const Inputs &in)
{
    in.count(2, 2);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "mc-solve", out);
    if (!s) return out;
    const int N = inv.flags.truncation.value_or(3);
    const auto r = mc_solve(*s, in.mv(1), N, degree_bound(inv.flags, 2));
    std::vector<std::string> text;
    if (r.status == SolveStatus::Solved) {
        text.push_back("solved to order " + std::to_string(N));
    } else {
        text.push_back("obstructed at order " + std::to_string(r.obstructed_order) + ": residual " + r.residual.to_string(ctx));
    }
    for (auto &l : series_text(r.solution, ctx, "pi")) text.push_back(std::move(l));
    return report(ctx, solve_json(r), std::move(text), r.status == SolveStatus::Solved);
}

Outcome cmd_gauge(const Inputs &in)
{
    in.count(3, 3);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "gauge", out);
    if (!s) return out;
    const GaugeParam xi(in.series(2));
    const ArtinSeries g = gauge_flow(*s, in.series(1), xi);
    Outcome o;
    o.documents.push_back(Document{ctx, g});
    o.text = series_text(g, ctx, "gamma");
    return o;
}

Outcome cmd_gauge_equiv(const Invocation &inv, const Inputs &in)
{
    in.count(3, 3);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "gauge-equiv", out);
    if (!s) return out;
    Json body = Json::object();
    body["command"] = "gauge-equiv";
    std::vector<std::string> text;
    try {
        const auto r = gauge_equivalent(*s, in.series(1), in.series(2), degree_bound(inv.flags, 2));
        body["equivalent"] = r.equivalent;
        if (r.witness) {
            body["witness"] = doc::series_to_json(*r.witness);
            text.push_back("equivalent");
            for (auto &l : series_text(*r.witness, ctx, "xi")) text.push_back(std::move(l));
        } else {
            body["failed_order"] = r.failed_order;
            body["residual"] = doc::multivector_to_json(r.residual);
            text.push_back("no gauge parameter within bounds; first mismatch at order " + std::to_string(r.failed_order) + ": " +
                           r.residual.to_string(ctx));
        }
        return report(ctx, std::move(body), std::move(text), r.equivalent);
    } catch (const NotMaurerCartan &e) {
        body["equivalent"] = false;
        body["error"] = e.what();
        return report(ctx, std::move(body), {std::string("FAIL ") + e.what()}, false);
    }
}

Outcome cmd_defect_series(const Inputs &in)
{
    in.count(2, 2);
    const auto &ctx = in.context();
    Outcome out;
    const auto s = twisted_or_report(in.form(0), ctx, "defect-series", out);
    if (!s) return out;
    const auto d = defect_series(*s, in.series(1));
    Json orders = Json::array();
    std::vector<std::string> text;
    for (const auto &[k, v] : d) {
        Json o = Json::object();
        o["order"] = k;
        o["value"] = doc::multivector_to_json(v);
        orders.push_back(std::move(o));
        text.push_back("order " + std::to_string(k) + ": " + v.to_string(ctx));
    }
    Json body = Json::object();
    body["command"] = "defect-series";
    body["vanishes"] = defect_vanishes(d);
    body["orders"] = std::move(orders);
    return report(ctx, std::move(body), std::move(text), true);
}

// ---- verify ------------------------------------------------------------

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names{"schouten", "lemma", "linfty", "hochschild", "formality", "deform", "twisted"};
    return names;
}

SuiteResult run_suite(const std::string &name)
{
    if (name == "schouten") return schouten_suite();
    if (name == "lemma") return lemma_suite();
    if (name == "linfty") return linfty_suite();
    if (name == "hochschild") return hochschild_suite();
    if (name == "formality") return formality_suite();
    if (name == "deform") return deform_suite();
    return twisted_suite();
}

Invocation invocation_from_problem(const Json &p, const std::string &label)
{
    auto bad = [&](const std::string &what) -> ParseError { return ParseError(label, what); };
    Invocation inv;
    if (!p.contains("command") || !p["command"].is_string()) throw bad("problem needs a string \"command\"");
    inv.command = p["command"].get<std::string>();
    if (p.contains("words")) {
        if (!p["words"].is_array()) throw bad("\"words\" must be an array of strings");
        for (const auto &w : p["words"]) {
            if (!w.is_string()) throw bad("\"words\" must be an array of strings");
            inv.words.push_back(w.get<std::string>());
        }
    }
    if (p.contains("flags")) {
        const Json &f = p["flags"];
        if (!f.is_object()) throw bad("\"flags\" must be an object");
        for (auto it = f.begin(); it != f.end(); ++it) {
            const Json &v = it.value();
            const std::string &k = it.key();
            if (k == "bounds-degree" && v.is_number_unsigned()) inv.flags.bounds_degree = v.get<unsigned>();
            else if (k == "bounds-order" && v.is_number_unsigned()) inv.flags.bounds_order = v.get<unsigned>();
            else if (k == "truncation" && v.is_number_integer()) inv.flags.truncation = v.get<int>();
            else if (k == "by" && v.is_string()) inv.flags.by = v.get<std::string>();
            else if (k == "var" && v.is_string()) inv.flags.var = v.get<std::string>();
            else throw bad("unsupported flag \"" + k + "\" or wrong value type");
        }
    }
    if (inv.command == "verify") throw bad("a problem cannot run verify");
    return inv;
}

struct CorpusResult {
    std::string file;
    bool passed = false;
    std::string detail;
};

CorpusResult run_problem(const std::filesystem::path &path, const std::string &name)
{
    CorpusResult r{name, false, {}};
    try {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        const Document d = doc::parse_one(ss.str(), name);
        const auto *prob = std::get_if<doc::Problem>(&d.payload);
        if (!prob) throw ParseError(name, "expected a problem document");
        const Json &p = prob->body;
        const Invocation inv = invocation_from_problem(p, name);
        if (p.contains("inputs") && !p["inputs"].is_array()) throw ParseError(name, "\"inputs\" must be an array");
        if (!p.contains("expect") || !p["expect"].is_object()) throw ParseError(name, "problem needs an \"expect\" object");
        const Json &expect = p["expect"];
        const int want_exit = expect.value("exit", 0);
        std::vector<Json> want_docs;
        if (expect.contains("outputs"))
            for (std::size_t i = 0; i < expect["outputs"].size(); ++i)
                want_docs.push_back(doc::to_json(doc::from_json(expect["outputs"][i], name + " expected output " + std::to_string(i + 1))));

        int got_exit = ok;
        std::vector<Json> got_docs;
        try {
            // Inputs are parsed here so that a problem may expect a schema error.
            std::vector<Document> inputs;
            if (p.contains("inputs"))
                for (std::size_t i = 0; i < p["inputs"].size(); ++i)
                    inputs.push_back(doc::from_json(p["inputs"][i], name + " input " + std::to_string(i + 1)));
            const Outcome o = execute(inv, inputs);
            got_exit = o.exit;
            for (const auto &x : o.documents) got_docs.push_back(doc::to_json(x));
        } catch (const ParseError &) {
            got_exit = bad_input;
        } catch (const std::invalid_argument &) {
            got_exit = bad_input;
        } catch (const std::out_of_range &) {
            got_exit = bad_input;
        }
        if (got_exit != want_exit) {
            r.detail = "exit " + std::to_string(got_exit) + ", expected " + std::to_string(want_exit);
        } else if (expect.contains("outputs") && got_docs != want_docs) {
            r.detail = "output differs: got " + (got_docs.empty() ? std::string("nothing") : got_docs.front().dump());
        } else {
            r.passed = true;
            r.detail = "exit " + std::to_string(got_exit);
        }
    } catch (const std::exception &e) {
        r.detail = std::string("could not load: ") + e.what();
    }
    return r;
}

Outcome cmd_verify(const Invocation &inv, const Inputs &in)
{
    in.count(0, 0);
    const std::string &which = inv.flags.suite;
    std::vector<std::string> suites;
    bool corpus = false;
    if (which == "all") {
        suites = suite_names();
        corpus = true;
    } else if (which == "corpus") {
        corpus = true;
    } else if (std::find(suite_names().begin(), suite_names().end(), which) != suite_names().end()) {
        suites = {which};
    } else {
        throw ParseError("--suite", "unknown suite \"" + which + "\"");
    }

    bool passed = true;
    Json sj = Json::array();
    std::vector<std::string> text;
    for (const auto &name : suites) {
        const SuiteResult r = run_suite(name);
        passed = passed && r.passed;
        Json cases = Json::array();
        for (const auto &c : r.cases) {
            Json cj = Json::object();
            cj["name"] = c.name;
            cj["passed"] = c.passed;
            cj["checks"] = c.checks;
            cj["detail"] = c.detail;
            cases.push_back(std::move(cj));
            text.push_back(std::string(c.passed ? "PASS " : "FAIL ") + name + ": " + c.name + " [" + std::to_string(c.checks) +
                           " checks]" + (c.detail.empty() ? "" : " " + c.detail));
        }
        Json s = Json::object();
        s["suite"] = name;
        s["passed"] = r.passed;
        s["cases"] = std::move(cases);
        sj.push_back(std::move(s));
    }

    Json cj = Json::array();
    if (corpus) {
        const std::filesystem::path dir = inv.flags.corpus.empty() ? default_corpus_dir() : inv.flags.corpus;
        if (!std::filesystem::is_directory(dir)) throw ParseError("--corpus", "not a directory: " + dir.string());
        std::vector<std::filesystem::path> files;
        for (const auto &e : std::filesystem::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto &f : files) {
            const CorpusResult r = run_problem(f, f.filename().string());
            passed = passed && r.passed;
            Json x = Json::object();
            x["file"] = r.file;
            x["passed"] = r.passed;
            x["detail"] = r.detail;
            cj.push_back(std::move(x));
            text.push_back(std::string(r.passed ? "PASS " : "FAIL ") + "corpus: " + r.file + " " + r.detail);
        }
    }

    Json body = Json::object();
    body["command"] = "verify";
    body["suite"] = which;
    body["passed"] = passed;
    body["suites"] = std::move(sj);
    if (corpus) body["corpus"] = std::move(cj);
    text.push_back(passed ? "verify: all passed" : "verify: FAILED");
    return report(VarContext{}, std::move(body), std::move(text), passed);
}

std::string read_stream(std::istream &in)
{
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string default_corpus_dir()
{
    return TWISTDEF_CORPUS_DIR;
}

Outcome execute(const Invocation &inv, const std::vector<Document> &inputs)
{
    const Inputs in{inputs, inv.command};
    const std::string &c = inv.command;
    if (c != "poly" && c != "hoch" && !inv.words.empty()) throw ParseError(c, "unexpected operation word \"" + inv.words[0] + "\"");
    if (c == "poly") return cmd_poly(inv, in);
    if (c == "wedge") return cmd_wedge(in);
    if (c == "schouten") {
        in.count(2, 2);
        const PolyVector v = schouten(in.mv(0), in.mv(1));
        return single(in.context(), v, v.to_string(in.context()));
    }
    if (c == "d") {
        in.count(1, 1);
        const DiffForm w = d_form(in.form(0));
        return single(in.context(), w, w.to_string(in.context()));
    }
    if (c == "contract") {
        in.count(2, 2);
        const PolyVector v = contract(in.form(0), in.mv(1));
        return single(in.context(), v, v.to_string(in.context()));
    }
    if (c == "ia") {
        in.count(2, 2);
        const PolyVector v = i_func_mv(in.poly(0), in.mv(1));
        return single(in.context(), v, v.to_string(in.context()));
    }
    if (c == "phi-eval") return cmd_phi_eval(in);
    if (c == "lemma-check") return cmd_lemma_check(inv, in);
    if (c == "linfty-check") return cmd_linfty_check(inv, in);
    if (c == "mc-defect") return cmd_mc_defect(in);
    if (c == "twisted-check") return cmd_twisted_check(in);
    if (c == "hoch") return cmd_hoch(inv, in);
    if (c == "mc-solve") return cmd_mc_solve(inv, in);
    if (c == "gauge") return cmd_gauge(in);
    if (c == "gauge-equiv") return cmd_gauge_equiv(inv, in);
    if (c == "defect-series") return cmd_defect_series(in);
    if (c == "verify") return cmd_verify(inv, in);
    throw ParseError("command line", "unknown command \"" + c + "\"");
}

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact graded deformation calculus on polynomial models", "twistdef"};
    app.require_subcommand(1, 1);
    Invocation inv;
    Flags &f = inv.flags;
    unsigned bd = 0, bo = 0;
    int trunc = 0;
    std::string by, var;
    auto *o_bd = app.add_option("--bounds-degree", bd, "Coefficient degree bound");
    auto *o_bo = app.add_option("--bounds-order", bo, "Operator order bound (per slot)");
    auto *o_tr = app.add_option("--truncation", trunc, "Truncation order N of Q[t]/t^{N+1}")->check(CLI::Range(1, 64));
    app.add_option("--suite", f.suite, "Suite for verify")
        ->check(CLI::IsMember({"schouten", "lemma", "linfty", "hochschild", "formality", "deform", "twisted", "corpus", "all"}));
    app.add_option("--emit", f.emit, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--corpus", f.corpus, "Corpus directory for verify");
    auto *o_by = app.add_option("--by", by, "Scalar for poly scale");
    auto *o_var = app.add_option("--var", var, "Variable (name or index) for poly derive");

    std::vector<std::string> files;
    std::string word;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"poly", "Polynomial arithmetic: add | mul | scale | derive"},
        {"wedge", "Wedge product of two multivectors or two forms"},
        {"schouten", "Schouten bracket of two multivector fields"},
        {"d", "Exterior derivative of a form"},
        {"contract", "Contraction of a one-form with a multivector"},
        {"ia", "i_a of a multivector by a function"},
        {"phi-eval", "Evaluate phi(form) on multivector arguments"},
        {"lemma-check", "Check d phi(a) = phi(da) and, for two forms, [phi(a), phi(b)] = 0"},
        {"linfty-check", "Check the three L-infinity relations for l2 = m, l3 = phi(H)"},
        {"mc-defect", "Defect [pi,pi] - phi(H)(pi,pi,pi)"},
        {"twisted-check", "Decide whether pi is H-twisted Poisson"},
        {"hoch", "Hochschild operations: delta | gb | cup | brace | ia | hkr | primitive"},
        {"mc-solve", "Extend a first-order bivector to a formal solution"},
        {"gauge", "Apply a gauge parameter to a formal solution"},
        {"gauge-equiv", "Search a gauge parameter between two formal solutions"},
        {"defect-series", "Order-by-order defect of a formal bivector"},
        {"verify", "Run the identity suites and the corpus"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->fallthrough();
        if (name == "poly" || name == "hoch") sub->add_option("operation", word, "Operation")->required();
        if (name != "verify") sub->add_option("inputs", files, "Input document files ('-' for stdin)");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "twistdef: " << e.what() << "\n";
        return bad_input;
    }
    inv.command = app.get_subcommands().front()->get_name();
    if (!word.empty()) inv.words.push_back(word);
    if (o_bd->count()) f.bounds_degree = bd;
    if (o_bo->count()) f.bounds_order = bo;
    if (o_tr->count()) f.truncation = trunc;
    if (o_by->count()) f.by = by;
    if (o_var->count()) f.var = var;

    try {
        std::vector<Document> docs;
        const bool wants_input = inv.command != "verify";
        if (wants_input && files.empty()) files.push_back("-");
        for (const auto &file : files) {
            std::string text;
            if (file == "-") {
                text = read_stream(in);
            } else {
                std::ifstream fin(file, std::ios::binary);
                if (!fin) throw ParseError(file, "cannot open file");
                text = read_stream(fin);
            }
            for (auto &d : doc::parse_all(text, file == "-" ? "stdin" : file)) docs.push_back(std::move(d));
        }
        const Outcome o = execute(inv, docs);
        if (f.emit == "text") {
            for (const auto &l : o.text) out << l << "\n";
        } else {
            for (const auto &d : o.documents) out << doc::serialize(d);
        }
        return o.exit;
    } catch (const ParseError &e) {
        err << "twistdef: parse error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::invalid_argument &e) {
        err << "twistdef: invalid input: " << e.what() << "\n";
        return bad_input;
    } catch (const std::out_of_range &e) {
        err << "twistdef: invalid input: " << e.what() << "\n";
        return bad_input;
    }
}

} // namespace twistdef::cli
