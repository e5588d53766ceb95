#include <twistdef/document.hpp>

#include <set>
#include <sstream>

namespace twistdef::doc {

namespace {

struct Reader {
    std::string label;

    [[noreturn]] void fail(const Json::json_pointer &at, const std::string &what) const
    {
        const std::string p = at.to_string();
        throw ParseError(label + " at " + (p.empty() ? "/" : p), what);
    }

    const Json &field(const Json &obj, const Json::json_pointer &at, const char *key) const
    {
        if (!obj.is_object()) fail(at, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(at, std::string("missing field \"") + key + "\"");
        return *it;
    }

    void only_fields(const Json &obj, const Json::json_pointer &at, std::initializer_list<const char *> keys) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char *k : keys) known = known || it.key() == k;
            if (!known) fail(at, "unknown field \"" + it.key() + "\"");
        }
    }

    const Json &array(const Json &j, const Json::json_pointer &at) const
    {
        if (!j.is_array()) fail(at, "expected an array");
        return j;
    }

    Rational rational(const Json &j, const Json::json_pointer &at) const
    {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (!j.is_string()) fail(at, "expected a rational string \"p/q\"");
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception &e) {
            fail(at, std::string("bad rational: ") + e.what());
        }
    }

    std::size_t index(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(at, "expected a nonnegative integer index");
        const auto i = static_cast<std::size_t>(j.get<std::int64_t>());
        if (i >= n) fail(at, "index " + std::to_string(i) + " out of range for " + std::to_string(n) + " variables");
        return i;
    }

    Monomial exponents(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        array(j, at);
        if (j.size() != n) fail(at, "exponent array has length " + std::to_string(j.size()) + ", expected " + std::to_string(n));
        std::vector<unsigned> e(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Json &x = j[i];
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 65535)
                fail(at / i, "exponent must be an integer in [0, 65535]");
            e[i] = static_cast<unsigned>(x.get<std::int64_t>());
        }
        return Monomial(n, e);
    }

    Polynomial polynomial(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        array(j, at);
        std::vector<Polynomial::Term> terms;
        for (std::size_t k = 0; k < j.size(); ++k) {
            const auto here = at / k;
            only_fields(j[k], here, {"coeff", "exp"});
            terms.emplace_back(exponents(field(j[k], here, "exp"), here / "exp", n),
                               rational(field(j[k], here, "coeff"), here / "coeff"));
        }
        return Polynomial(n, std::move(terms));
    }

    Frame frame(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        array(j, at);
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < j.size(); ++k) {
            idx.push_back(index(j[k], at / k, n));
            if (k > 0 && idx[k] <= idx[k - 1]) fail(at / k, "indices must be strictly increasing");
        }
        return frame_from_indices(idx, n);
    }

    template <class Sum>
    Sum frame_sum(const Json &j, const Json::json_pointer &at, std::size_t n, const char *key) const
    {
        array(j, at);
        std::vector<typename Sum::Term> terms;
        for (std::size_t k = 0; k < j.size(); ++k) {
            const auto here = at / k;
            only_fields(j[k], here, {key, "poly"});
            terms.emplace_back(frame(field(j[k], here, key), here / key, n), polynomial(field(j[k], here, "poly"), here / "poly", n));
        }
        return Sum::from_unsorted(n, std::move(terms));
    }

    MultiDiffOp multidiffop(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        only_fields(j, at, {"arity", "terms"});
        const Json &a = field(j, at, "arity");
        if (!a.is_number_integer() || a.get<std::int64_t>() < 0 || a.get<std::int64_t>() > 16) fail(at / "arity", "arity must be an integer in [0, 16]");
        const int arity = static_cast<int>(a.get<std::int64_t>());
        MultiDiffOp out(n, arity);
        const Json &terms = array(field(j, at, "terms"), at / "terms");
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const auto here = at / "terms" / k;
            only_fields(terms[k], here, {"poly", "orders"});
            const Json &orders = array(field(terms[k], here, "orders"), here / "orders");
            if (orders.size() != static_cast<std::size_t>(arity))
                fail(here / "orders", "expected " + std::to_string(arity) + " order arrays, got " + std::to_string(orders.size()));
            MultiDiffOp::Orders o;
            for (std::size_t s = 0; s < orders.size(); ++s) o.push_back(exponents(orders[s], here / "orders" / s, n));
            out.add_term(o, polynomial(field(terms[k], here, "poly"), here / "poly", n));
        }
        return out;
    }

    ArtinSeries series(const Json &j, const Json::json_pointer &at, std::size_t n) const
    {
        only_fields(j, at, {"truncation", "terms"});
        const Json &t = field(j, at, "truncation");
        if (!t.is_number_integer() || t.get<std::int64_t>() < 1 || t.get<std::int64_t>() > 64)
            fail(at / "truncation", "truncation must be an integer in [1, 64]");
        const int N = static_cast<int>(t.get<std::int64_t>());
        ArtinSeries out(n, ArtinRing(N));
        const Json &terms = array(field(j, at, "terms"), at / "terms");
        std::set<int> seen;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const auto here = at / "terms" / k;
            only_fields(terms[k], here, {"order", "value"});
            const Json &o = field(terms[k], here, "order");
            if (!o.is_number_integer() || o.get<std::int64_t>() < 1 || o.get<std::int64_t>() > N)
                fail(here / "order", "order must be an integer in [1, " + std::to_string(N) + "]");
            const int order = static_cast<int>(o.get<std::int64_t>());
            if (!seen.insert(order).second) fail(here / "order", "order " + std::to_string(order) + " given twice");
            out.set(order, frame_sum<PolyVector>(field(terms[k], here, "value"), here / "value", n, "frame"));
        }
        return out;
    }
};

Json exps_json(const Monomial &m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.nvars(); ++i) a.push_back(m[i]);
    return a;
}

template <class Sum>
Json frame_sum_json(const Sum &v, const char *key)
{
    Json a = Json::array();
    for (const auto &[f, p] : v.terms()) {
        Json idx = Json::array();
        for (std::size_t i : frame_indices(f)) idx.push_back(i);
        Json t = Json::object();
        t[key] = std::move(idx);
        t["poly"] = polynomial_to_json(p);
        a.push_back(std::move(t));
    }
    return a;
}

} // namespace

Json rational_to_json(const Rational &r)
{
    return r.to_string();
}

Json polynomial_to_json(const Polynomial &p)
{
    Json a = Json::array();
    for (const auto &[m, c] : p.terms()) {
        Json t = Json::object();
        t["coeff"] = rational_to_json(c);
        t["exp"] = exps_json(m);
        a.push_back(std::move(t));
    }
    return a;
}

Json multivector_to_json(const PolyVector &v)
{
    return frame_sum_json(v, "frame");
}

Json form_to_json(const DiffForm &w)
{
    return frame_sum_json(w, "coframe");
}

Json multidiffop_to_json(const MultiDiffOp &d)
{
    Json out = Json::object();
    out["arity"] = d.arity();
    Json terms = Json::array();
    for (const auto &[orders, p] : d.terms()) {
        Json o = Json::array();
        for (const auto &m : orders) o.push_back(exps_json(m));
        Json t = Json::object();
        t["poly"] = polynomial_to_json(p);
        t["orders"] = std::move(o);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Json series_to_json(const ArtinSeries &s)
{
    Json out = Json::object();
    out["truncation"] = s.truncation();
    Json terms = Json::array();
    for (int k = 1; k <= s.truncation(); ++k) {
        if (s.coeff(k).is_zero()) continue;
        Json t = Json::object();
        t["order"] = k;
        t["value"] = multivector_to_json(s.coeff(k));
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

std::string Document::kind() const
{
    static const char *names[] = {"polynomial", "multivector", "form", "multidiffop", "artin-series", "problem", "report"};
    return names[payload.index()];
}

Json to_json(const Document &d)
{
    Json out = Json::object();
    out["format_version"] = format_version;
    Json ctx = Json::object();
    ctx["vars"] = d.context.names();
    out["context"] = std::move(ctx);
    out["kind"] = d.kind();
    out["payload"] = std::visit(
        [](const auto &p) -> Json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Polynomial>) return polynomial_to_json(p);
            else if constexpr (std::is_same_v<T, PolyVector>) return multivector_to_json(p);
            else if constexpr (std::is_same_v<T, DiffForm>) return form_to_json(p);
            else if constexpr (std::is_same_v<T, MultiDiffOp>) return multidiffop_to_json(p);
            else if constexpr (std::is_same_v<T, ArtinSeries>) return series_to_json(p);
            else return p.body;
        },
        d.payload);
    return out;
}

std::string serialize(const Document &d)
{
    return to_json(d).dump() + "\n";
}

Document from_json(const Json &j, const std::string &label)
{
    const Reader r{label};
    const Json::json_pointer root;
    if (!j.is_object()) r.fail(root, "a document must be an object");
    r.only_fields(j, root, {"format_version", "context", "kind", "payload"});
    const Json &v = r.field(j, root, "format_version");
    if (!v.is_string() || v.get<std::string>() != format_version)
        r.fail(root / "format_version", std::string("unsupported format_version, expected \"") + format_version + "\"");

    const Json &ctx = r.field(j, root, "context");
    r.only_fields(ctx, root / "context", {"vars"});
    const Json &vars = r.array(r.field(ctx, root / "context", "vars"), root / "context" / "vars");
    if (vars.size() > max_vars) r.fail(root / "context" / "vars", "at most " + std::to_string(max_vars) + " variables are supported");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!vars[i].is_string() || vars[i].get<std::string>().empty())
            r.fail(root / "context" / "vars" / i, "variable names must be nonempty strings");
        if (!seen.insert(vars[i].get<std::string>()).second) r.fail(root / "context" / "vars" / i, "duplicate variable name");
        names.push_back(vars[i].get<std::string>());
    }
    const std::size_t n = names.size();

    const Json &kind = r.field(j, root, "kind");
    if (!kind.is_string()) r.fail(root / "kind", "kind must be a string");
    const std::string k = kind.get<std::string>();
    const Json &p = r.field(j, root, "payload");
    const auto at = root / "payload";
    Document d{VarContext(std::move(names)), Report{}};
    if (k == "polynomial") d.payload = r.polynomial(p, at, n);
    else if (k == "multivector") d.payload = r.frame_sum<PolyVector>(p, at, n, "frame");
    else if (k == "form") d.payload = r.frame_sum<DiffForm>(p, at, n, "coframe");
    else if (k == "multidiffop") d.payload = r.multidiffop(p, at, n);
    else if (k == "artin-series") d.payload = r.series(p, at, n);
    else if (k == "problem") {
        if (!p.is_object()) r.fail(at, "a problem payload must be an object");
        d.payload = Problem{p};
    } else if (k == "report") {
        d.payload = Report{p};
    } else {
        r.fail(root / "kind", "unknown kind \"" + k + "\"");
    }
    return d;
}

std::vector<Document> parse_all(const std::string &text, const std::string &label)
{
    std::vector<Document> out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        // Line and column of the document start, for error messages.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        const std::string doc_label = label + " document " + std::to_string(out.size() + 1);
        std::istringstream in(text.substr(pos));
        Json j;
        try {
            in >> j;
        } catch (const Json::parse_error &e) {
            throw ParseError(doc_label + " (starting at line " + std::to_string(line) + ", column " + std::to_string(col) +
                                 ", byte " + std::to_string(e.byte) + " within it)",
                             e.what());
        }
        out.push_back(from_json(j, doc_label));
        const auto consumed = in.eof() ? text.size() - pos : static_cast<std::size_t>(in.tellg());
        pos += consumed;
        skip_ws();
    }
    return out;
}

Document parse_one(const std::string &text, const std::string &label)
{
    auto all = parse_all(text, label);
    if (all.size() != 1) throw ParseError(label, "expected exactly one document, found " + std::to_string(all.size()));
    return std::move(all.front());
}

namespace {

template <class T>
const T &expect(const Document &d, const std::string &label, const char *kind)
{
    if (const T *p = std::get_if<T>(&d.payload)) return *p;
    throw ParseError(label, std::string("expected a ") + kind + " document, got " + d.kind());
}

} // namespace

const Polynomial &as_polynomial(const Document &d, const std::string &label)
{
    return expect<Polynomial>(d, label, "polynomial");
}
const PolyVector &as_multivector(const Document &d, const std::string &label)
{
    return expect<PolyVector>(d, label, "multivector");
}
const DiffForm &as_form(const Document &d, const std::string &label)
{
    return expect<DiffForm>(d, label, "form");
}
const MultiDiffOp &as_multidiffop(const Document &d, const std::string &label)
{
    return expect<MultiDiffOp>(d, label, "multidiffop");
}
const ArtinSeries &as_series(const Document &d, const std::string &label)
{
    return expect<ArtinSeries>(d, label, "artin-series");
}

} // namespace twistdef::doc
