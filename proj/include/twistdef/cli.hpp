#ifndef TWISTDEF_CLI_HPP
#define TWISTDEF_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <twistdef/document.hpp>

namespace twistdef::cli {

enum Exit : int { ok = 0, check_failed = 1, bad_input = 2 };

struct Flags {
    std::optional<unsigned> bounds_degree;
    std::optional<unsigned> bounds_order;
    std::optional<int> truncation;
    std::string suite = "all";
    std::string emit = "json";
    std::string corpus;
    std::optional<std::string> by;
    std::optional<std::string> var;
};

/// A parsed command line minus its input documents. `words` holds the
/// operation name for `poly` and `hoch`.
struct Invocation {
    std::string command;
    std::vector<std::string> words;
    Flags flags;
};

struct Outcome {
    int exit = ok;
    std::vector<doc::Document> documents;
    std::vector<std::string> text;
};

/// Runs one command on already parsed input documents. Throws
/// doc::ParseError for inputs of the wrong kind or count.
Outcome execute(const Invocation &inv, const std::vector<doc::Document> &inputs);

/// Full command line entry point (argv without the program name). Input
/// documents come from the named files, or from `in` when none are given
/// or a file is "-".
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

/// Directory of the corpus shipped with the sources.
std::string default_corpus_dir();

} // namespace twistdef::cli

#endif
