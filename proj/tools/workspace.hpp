#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sigmapi/error.hpp"
#include "sigmapi/protocol.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/sequent.hpp"
#include "sigmapi/typing.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi::cli {

// A parse error located in a source file.  line and column are 1-based;
// column is 0 when unknown.
class SourceError : public Error {
public:
    SourceError(const std::string& file, std::size_t line, std::size_t column, const std::string& msg);
    std::string file;
    std::size_t line;
    std::size_t column;
};

// A process source file:
//
//   % comment
//   atoms: theory.atoms          generators from a file, one per line
//   gen f : A -> B               an inline generator
//   sequent: x:A |- y:B
//   term:
//   ... the term, up to the end of the file
//
// Relative paths are resolved against the directory of the file.
struct ProcessFile {
    std::string path;
    AtomTheory theory;
    Sequent sequent;
    std::string term_text;
    std::size_t term_line = 0;
};

// The same header without the term section.  A sequent file may list
// entailments with output conclusions, one per line:
//
//   entailment: alpha:<a> |- !beta[a]
struct SequentFile {
    std::string path;
    AtomTheory theory;
    Sequent sequent;
    EntailmentSet entailments;
};

ProcessFile load_process_file(const std::filesystem::path& path);
SequentFile load_sequent_file(const std::filesystem::path& path);
// The whole file, '%' comment lines dropped, as one protocol.
Protocol load_protocol_file(const std::filesystem::path& path);

// Parse and type-check the term of f.  Parse errors become SourceError;
// type errors are rethrown as TypeError.
TypedTerm parse_process(const ProcessFile& f);

// A theory containing the generators of both.  Throws Error when the same
// name has two different types.
AtomTheory merge_theories(const AtomTheory& a, const AtomTheory& b);

}  // namespace sigmapi::cli
