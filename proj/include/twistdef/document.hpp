#ifndef TWISTDEF_DOCUMENT_HPP
#define TWISTDEF_DOCUMENT_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <twistdef/deform.hpp>
#include <twistdef/hochschild.hpp>
#include <twistdef/multivector.hpp>

namespace twistdef::doc {

using Json = nlohmann::ordered_json;

inline constexpr const char *format_version = "1";

/// Malformed or schema-invalid input. `where` locates the problem: a line and
/// column for syntax errors, a JSON pointer for schema errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string &what)
        : std::runtime_error(where + ": " + what), where_(std::move(where))
    {
    }
    [[nodiscard]] const std::string &where() const { return where_; }

private:
    std::string where_;
};

/// Payload alternatives. `Problem` and `Report` stay as raw JSON: they are
/// only interpreted by the command layer.
struct Problem {
    Json body;
};
struct Report {
    Json body;
};
using Payload = std::variant<Polynomial, PolyVector, DiffForm, MultiDiffOp, ArtinSeries, Problem, Report>;

struct Document {
    VarContext context;
    Payload payload;

    [[nodiscard]] std::string kind() const;
};

Json rational_to_json(const Rational &r);
Json polynomial_to_json(const Polynomial &p);
Json multivector_to_json(const PolyVector &v);
Json form_to_json(const DiffForm &w);
Json multidiffop_to_json(const MultiDiffOp &d);
Json series_to_json(const ArtinSeries &s);

Json to_json(const Document &d);
/// Single line, canonical key order, trailing newline.
std::string serialize(const Document &d);

/// Schema-checks one parsed JSON value. `label` prefixes error locations.
Document from_json(const Json &j, const std::string &label = "document");
/// Parses every document in `text` (whitespace separated, any layout).
std::vector<Document> parse_all(const std::string &text, const std::string &label = "input");
Document parse_one(const std::string &text, const std::string &label = "input");

/// Payload accessors that raise ParseError naming the expected kind.
const Polynomial &as_polynomial(const Document &d, const std::string &label);
const PolyVector &as_multivector(const Document &d, const std::string &label);
const DiffForm &as_form(const Document &d, const std::string &label);
const MultiDiffOp &as_multidiffop(const Document &d, const std::string &label);
const ArtinSeries &as_series(const Document &d, const std::string &label);

} // namespace twistdef::doc

#endif
