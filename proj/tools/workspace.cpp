#include "workspace.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "sigmapi/syntax.hpp"

namespace sigmapi::cli {

namespace fs = std::filesystem;

SourceError::SourceError(const std::string& f, std::size_t l, std::size_t c, const std::string& msg)
    : Error(f + ":" + std::to_string(l) + (c ? ":" + std::to_string(c) : "") + ": " + msg),
      file(f),
      line(l),
      column(c) {}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// ParseError messages end in " at offset N"; the location is reported
// separately.
std::string bare_message(const ParseError& e) {
    std::string m = e.what();
    auto at = m.rfind(" at offset ");
    return at == std::string::npos ? m : m.substr(0, at);
}

struct Header {
    std::string theory_text;
    std::optional<Sequent> sequent;
    std::size_t sequent_line = 0;
    std::optional<std::size_t> term_line;
    std::string term_text;
    std::vector<std::pair<std::size_t, std::string>> entailments;
};

Header read_header(const fs::path& path, bool allow_term) {
    std::string text = read_file(path);
    std::istringstream in(text);
    Header h;
    std::string line;
    std::size_t n = 0;
    const std::string file = path.string();
    while (std::getline(in, line)) {
        ++n;
        std::string s = trim(line);
        if (s.empty() || s[0] == '%') continue;
        if (s.rfind("gen ", 0) == 0) {
            h.theory_text += s.substr(4) + "\n";
        } else if (s.rfind("atoms:", 0) == 0) {
            fs::path ref = trim(s.substr(6));
            if (ref.is_relative()) ref = path.parent_path() / ref;
            try {
                h.theory_text += read_file(ref) + "\n";
            } catch (const Error& e) {
                throw SourceError(file, n, 0, e.what());
            }
        } else if (s.rfind("sequent:", 0) == 0) {
            if (h.sequent) throw SourceError(file, n, 0, "second sequent line");
            std::string body = s.substr(8);
            try {
                h.sequent = parse_sequent(body);
            } catch (const ParseError& e) {
                throw SourceError(file, n, 0, bare_message(e));
            }
            h.sequent_line = n;
        } else if (s.rfind("entailment:", 0) == 0) {
            if (allow_term) throw SourceError(file, n, 0, "entailments belong in a sequent file");
            h.entailments.emplace_back(n, trim(s.substr(11)));
        } else if (s.rfind("term:", 0) == 0) {
            if (!allow_term) throw SourceError(file, n, 0, "unexpected term section in a sequent file");
            h.term_line = n + 1;
            std::string first = trim(s.substr(5));
            std::ostringstream rest;
            if (!first.empty()) {
                rest << first << "\n";
                h.term_line = n;
            }
            rest << in.rdbuf();
            h.term_text = rest.str();
            break;
        } else {
            throw SourceError(file, n, 0, "expected 'atoms:', 'gen', 'sequent:', 'entailment:' or 'term:'");
        }
    }
    if (!h.sequent) throw SourceError(file, n, 0, "missing 'sequent:' line");
    return h;
}

AtomTheory theory_of(const Header& h, const std::string& file) {
    try {
        return AtomTheory::parse(h.theory_text);
    } catch (const Error& e) {
        throw SourceError(file, 0, 0, std::string("atom theory: ") + e.what());
    }
}

}  // namespace

ProcessFile load_process_file(const fs::path& path) {
    Header h = read_header(path, true);
    if (!h.term_line) throw SourceError(path.string(), 0, 0, "missing 'term:' section");
    ProcessFile f;
    f.path = path.string();
    f.theory = theory_of(h, f.path);
    f.sequent = *h.sequent;
    f.term_text = h.term_text;
    f.term_line = *h.term_line;
    return f;
}

SequentFile load_sequent_file(const fs::path& path) {
    Header h = read_header(path, false);
    SequentFile f;
    f.path = path.string();
    f.theory = theory_of(h, f.path);
    f.sequent = *h.sequent;
    f.entailments.sequent = f.sequent;
    for (const auto& [line, text] : h.entailments) {
        auto turnstile = text.find("|-");
        std::string concl = turnstile == std::string::npos ? "" : trim(text.substr(turnstile + 2));
        auto open = concl.find('[');
        if (concl.size() < 4 || concl[0] != '!' || open == std::string::npos || concl.back() != ']')
            throw SourceError(f.path, line, 0, "expected 'BEHAVIOUR |- !channel[event]'");
        try {
            Behaviour b = parse_behaviour(text.substr(0, turnstile));
            f.entailments.entailments.insert(Entailment{
                b, Conclusion::output(concl.substr(1, open - 1), concl.substr(open + 1, concl.size() - open - 2))});
        } catch (const ParseError& e) {
            throw SourceError(f.path, line, 0, bare_message(e));
        }
    }
    return f;
}

Protocol load_protocol_file(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line, text;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (!s.empty() && s[0] != '%') text += s + " ";
    }
    try {
        return parse_protocol(text);
    } catch (const ParseError& e) {
        throw SourceError(path.string(), 0, 0, bare_message(e));
    }
}

TypedTerm parse_process(const ProcessFile& f) {
    Term t = [&] {
        try {
            return parse_term(f.term_text, f.sequent, f.theory);
        } catch (const ParseError& e) {
            std::size_t pos = std::min(e.position, f.term_text.size());
            std::size_t line = f.term_line, col = 1;
            for (std::size_t i = 0; i < pos; ++i) {
                if (f.term_text[i] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            throw SourceError(f.path, line, col, bare_message(e));
        }
    }();
    return check(t, f.sequent, f.theory);
}

AtomTheory merge_theories(const AtomTheory& a, const AtomTheory& b) {
    AtomTheory r = a;
    for (const auto& atom : b.atoms()) r.add_atom(atom);
    for (const auto& [name, g] : b.generators()) {
        if (const Generator* old = a.find(name)) {
            if (old->dom != g.dom || old->cod != g.cod) throw Error("generator '" + name + "' has two types");
            continue;
        }
        r.add_generator(g);
    }
    return r;
}

}  // namespace sigmapi::cli
