// Command-line front end.  Exit status: 0 on success or "equal", 1 on
// "unequal" or a failed check, 2 on usage and parse errors.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sigmapi/equivalence.hpp"
#include "sigmapi/error.hpp"
#include "sigmapi/export.hpp"
#include "sigmapi/rewriter.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/syntax.hpp"
#include "sigmapi/typing.hpp"
#include "workspace.hpp"

#ifndef SIGMAPI_DEMO_DIR
#define SIGMAPI_DEMO_DIR "demos"
#endif

namespace fs = std::filesystem;
using namespace sigmapi;
using namespace sigmapi::cli;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Context {
    std::ostream& out;
    std::ostream& err;
    fs::path base;
    Syntax syntax = Syntax::Compact;
    bool json = false;

    fs::path resolve(const std::string& p) const {
        fs::path f = p;
        return f.is_relative() && !base.empty() ? base / f : f;
    }
};

// A term with its cuts eliminated, for operations that need cut-free input.
TypedTerm cut_free(const TypedTerm& t) { return t.term.has_cut() ? normalize(t) : t; }

void print_json(Context& cx, const Json& j) { cx.out << j.dump(2) << "\n"; }

int cmd_check(Context& cx, const std::string& file) {
    ProcessFile f = load_process_file(cx.resolve(file));
    try {
        TypedTerm t = parse_process(f);
        if (cx.json) {
            print_json(cx, Json{{"ok", true}, {"term", to_json(t)}});
        } else {
            cx.out << "ok: " << t.sequent.str() << "\n";
        }
        return kOk;
    } catch (const TypeError& e) {
        if (cx.json) {
            print_json(cx, Json{{"ok", false},
                                {"path", path_to_string(e.path)},
                                {"rule", e.rule},
                                {"message", e.what()}});
        } else {
            cx.out << f.path << ": " << e.what() << "\n";
        }
        return kFailed;
    }
}

Strategy parse_strategy(const std::string& s) {
    if (s == "li") return Strategy::LeftmostInnermost;
    if (s == "ro") return Strategy::RightmostOutermost;
    throw CLI::ValidationError("--strategy", "expected li or ro");
}

int cmd_normalize(Context& cx, const std::string& file, bool trace, const std::string& strategy) {
    ProcessFile f = load_process_file(cx.resolve(file));
    TypedTerm t = parse_process(f);
    NormalizeOptions opts;
    opts.strategy = parse_strategy(strategy);
    Json steps = Json::array();
    std::size_t count = 0;
    if (trace) {
        opts.on_step = [&](const Step& s) {
            ++count;
            if (cx.json) {
                steps.push_back(Json{{"rule", s.rule}, {"path", path_to_string(s.path)},
                                     {"term", print_term(s.term, cx.syntax)}});
            } else {
                cx.out << "step " << count << ": rule " << s.rule << " at " << path_to_string(s.path) << ": "
                       << print_term(s.term, cx.syntax) << "\n";
            }
        };
    }
    TypedTerm n = normalize(t, opts);
    if (cx.json) {
        Json j{{"normal_form", to_json(n)}};
        if (trace) j["steps"] = std::move(steps);
        print_json(cx, j);
    } else {
        cx.out << print_term(n, cx.syntax) << "\n";
    }
    return kOk;
}

int cmd_eq(Context& cx, const std::string& file1, const std::string& file2) {
    TypedTerm a = cut_free(parse_process(load_process_file(cx.resolve(file1))));
    TypedTerm b = cut_free(parse_process(load_process_file(cx.resolve(file2))));
    if (!(a.sequent == b.sequent))
        throw Error("sequents differ: " + a.sequent.str() + " vs " + b.sequent.str());
    EqualityResult r = decide_equal_explained(a, b);
    if (cx.json) {
        print_json(cx, to_json(r));
    } else if (r.equal) {
        cx.out << "equal\n";
    } else {
        cx.out << "unequal\n";
        if (r.witness) {
            cx.out << "witness: at " << path_to_string(r.witness->path);
            if (!r.witness->channel.empty()) cx.out << " output " << r.witness->event << " on " << r.witness->channel;
            cx.out << ": " << r.witness->reason << "\n";
        }
    }
    return r.equal ? kOk : kFailed;
}

void print_ep(Context& cx, const EntailmentSet& q, bool lines) {
    if (cx.json) {
        print_json(cx, to_json(q));
    } else if (lines) {
        for (const auto& e : q.entailments) cx.out << format_entailment_line(e) << "\n";
    } else {
        cx.out << format_ep(q);
    }
}

int cmd_translate(Context& cx, const std::string& file, bool closed, bool lines) {
    TypedTerm t = cut_free(parse_process(load_process_file(cx.resolve(file))));
    EntailmentSet q = translate(t);
    if (closed) q = close(q);
    print_ep(cx, q, lines);
    return kOk;
}

int cmd_compose(Context& cx, const std::string& file1, const std::string& ch1, const std::string& file2,
                const std::string& ch2, bool semantic, bool lines) {
    ProcessFile f1 = load_process_file(cx.resolve(file1));
    ProcessFile f2 = load_process_file(cx.resolve(file2));
    TypedTerm a = parse_process(f1);
    TypedTerm b = parse_process(f2);
    if (semantic) {
        EntailmentSet q = compose_ep(close(translate(cut_free(a))), ch1, close(translate(cut_free(b))), ch2);
        print_ep(cx, q, lines);
        return kOk;
    }
    TypedTerm n = normalize(cut(a, ch1, b, ch2));
    if (auto e = typing_error(n, merge_theories(f1.theory, f2.theory))) throw *e;
    if (cx.json) {
        print_json(cx, to_json(n));
    } else {
        cx.out << print_term(n, cx.syntax) << "\n";
    }
    return kOk;
}

int cmd_enum(Context& cx, const std::string& file, std::size_t max_nodes) {
    SequentFile f = load_sequent_file(cx.resolve(file));
    std::vector<TypedTerm> terms = enumerate_cut_free(f.sequent, f.theory, max_nodes);
    if (cx.json) {
        Json arr = Json::array();
        for (const auto& t : terms) arr.push_back(print_term(t, cx.syntax));
        print_json(cx, Json{{"sequent", to_json(f.sequent)}, {"max_nodes", max_nodes}, {"terms", std::move(arr)}});
    } else {
        for (const auto& t : terms) cx.out << print_term(t, cx.syntax) << "\n";
        cx.out << terms.size() << (terms.size() == 1 ? " term\n" : " terms\n");
    }
    return kOk;
}

int cmd_ep_check(Context& cx, const std::string& file) {
    SequentFile f = load_sequent_file(cx.resolve(file));
    EPReport r = check_extensional(f.entailments);
    if (cx.json) {
        print_json(cx, to_json(r));
    } else {
        for (std::size_t i = 0; i < r.passed.size(); ++i) {
            cx.out << "EP-" << i + 1 << " ";
            if (!r.passed[i]) {
                cx.out << "unchecked\n";
            } else if (*r.passed[i]) {
                cx.out << "holds\n";
            } else {
                cx.out << "fails: " << r.counterexample[i] << "\n";
            }
        }
        if (r.hanging) cx.out << r.hanging << " hanging entailments\n";
        cx.out << (r.ok() ? "extensional process\n" : "not an extensional process\n");
    }
    return r.ok() ? kOk : kFailed;
}

Json role_json(const Protocol& p, Side side) {
    Json j{{"role", role_name(role(p, side))}, {"protocol", p.str()}};
    if (p.is_compound()) {
        Json bs = Json::array();
        for (const auto& b : p.branches()) {
            Json c = role_json(b.proto, side);
            c["event"] = b.event;
            bs.push_back(std::move(c));
        }
        j["branches"] = std::move(bs);
    }
    return j;
}

void print_roles(Context& cx, const Protocol& p, Side side, const std::string& indent) {
    for (const auto& b : p.branches()) {
        cx.out << indent << b.event << ": " << role_name(role(b.proto, side));
        if (b.proto.is_atom()) cx.out << " " << b.proto.atom_name();
        cx.out << "\n";
        print_roles(cx, b.proto, side, indent + "  ");
    }
}

int cmd_roles(Context& cx, const std::string& file, const std::string& side_name) {
    Protocol p = load_protocol_file(cx.resolve(file));
    Side side = side_name == "codomain" ? Side::Codomain : Side::Domain;
    if (cx.json) {
        print_json(cx, role_json(p, side));
        return kOk;
    }
    cx.out << role_name(role(p, side)) << "\n";
    print_roles(cx, p, side, "  ");
    return kOk;
}

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const fs::path& base);

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Replay NAME.demo, one command per line, and compare the transcript with
// NAME.expected.
int cmd_demo(Context& cx, const std::string& name, const std::string& dir_opt, bool bless) {
    fs::path dir = dir_opt.empty() ? fs::path(SIGMAPI_DEMO_DIR) : fs::path(dir_opt);
    fs::path script = dir / (name + ".demo");
    std::istringstream lines(read_text(script));
    std::ostringstream transcript;
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> words = split_words(line);
        if (words.empty() || words[0][0] == '%') continue;
        transcript << "$ sigmapi " << line << "\n";
        std::ostringstream err;
        int status = run(words, transcript, err, dir);
        transcript << err.str();
        if (status != kOk) transcript << "[exit " << status << "]\n";
    }
    const std::string got = transcript.str();
    fs::path expected_path = dir / (name + ".expected");
    if (bless) {
        std::ofstream(expected_path, std::ios::binary) << got;
    }
    const std::string want = read_text(expected_path);
    cx.out << got;
    if (got == want) return kOk;
    std::istringstream g(got), w(want);
    std::string gl, wl;
    std::size_t n = 0;
    for (;;) {
        ++n;
        bool more_g = static_cast<bool>(std::getline(g, gl));
        bool more_w = static_cast<bool>(std::getline(w, wl));
        if (!more_g && !more_w) break;
        if (!more_g) gl = "<end of output>";
        if (!more_w) wl = "<end of expected output>";
        if (gl != wl) {
            cx.err << "demo " << name << ": line " << n << " differs from " << expected_path.string() << "\n"
                   << "  expected: " << wl << "\n"
                   << "  got:      " << gl << "\n";
            break;
        }
    }
    return kFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const fs::path& base) {
    CLI::App app{"Typing, cut elimination, equality and process semantics for the sum-product term calculus"};
    app.name("sigmapi");
    app.require_subcommand(1);
    app.fallthrough();
    std::string syntax_name = "compact";
    std::string format = "text";
    app.add_option("--syntax", syntax_name, "Term syntax for printing: compact, verbose or math")
        ->check(CLI::IsMember({"compact", "verbose", "math"}));
    app.add_option("--format", format, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));

    std::string file1, file2, ch1, ch2, strategy = "li", side = "domain", demo_dir;
    bool trace = false, closed = false, semantic = false, lines = false, bless = false;
    std::size_t max_nodes = 7;

    auto* check = app.add_subcommand("check", "Type-check a term against its declared sequent");
    check->add_option("FILE", file1)->required();
    auto* norm = app.add_subcommand("normalize", "Eliminate the cuts of a term");
    norm->add_option("FILE", file1)->required();
    norm->add_flag("--trace", trace, "Print every reduction step");
    norm->add_option("--strategy", strategy, "li (leftmost-innermost) or ro (rightmost-outermost)");
    auto* eq = app.add_subcommand("eq", "Decide equality of two terms up to the permuting conversions");
    eq->add_option("FILE1", file1)->required();
    eq->add_option("FILE2", file2)->required();
    auto* tr = app.add_subcommand("translate", "Translate a term into a set of entailments");
    tr->add_option("FILE", file1)->required();
    tr->add_flag("--close", closed, "Close the set under EP-4 to EP-7");
    tr->add_flag("--lines", lines, "One entailment per line");
    auto* comp = app.add_subcommand("compose", "Compose two terms on a shared channel");
    comp->add_option("FILE1", file1)->required();
    comp->add_option("CH1", ch1)->required();
    comp->add_option("FILE2", file2)->required();
    comp->add_option("CH2", ch2)->required();
    comp->add_flag("--semantic", semantic, "Compose the closed translations instead of cutting");
    comp->add_flag("--lines", lines, "One entailment per line");
    auto* en = app.add_subcommand("enum", "List the cut-free terms of a sequent");
    en->add_option("SEQFILE", file1)->required();
    en->add_option("--max-nodes", max_nodes, "Largest term size")->required();
    auto* epc = app.add_subcommand("ep-check", "Check the entailments of a sequent file against EP-1 to EP-7");
    epc->add_option("SEQFILE", file1)->required();
    auto* ro = app.add_subcommand("roles", "Print the role of every state of a protocol");
    ro->add_option("PROTOFILE", file1)->required();
    ro->add_option("--side", side, "domain or codomain")->check(CLI::IsMember({"domain", "codomain"}));
    auto* demo = app.add_subcommand("demo", "Replay a stored example and compare with its expected output");
    demo->add_option("NAME", file1)->required();
    demo->add_option("--demo-dir", demo_dir, "Directory holding NAME.demo and NAME.expected");
    demo->add_flag("--bless", bless, "Overwrite NAME.expected with the current output");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "sigmapi: " << e.what() << "\n";
        return kUsage;
    }

    Context cx{out, err, base};
    cx.syntax = parse_syntax_name(syntax_name);
    cx.json = format == "json";
    try {
        if (check->parsed()) return cmd_check(cx, file1);
        if (norm->parsed()) return cmd_normalize(cx, file1, trace, strategy);
        if (eq->parsed()) return cmd_eq(cx, file1, file2);
        if (tr->parsed()) return cmd_translate(cx, file1, closed, lines);
        if (comp->parsed()) return cmd_compose(cx, file1, ch1, file2, ch2, semantic, lines);
        if (en->parsed()) return cmd_enum(cx, file1, max_nodes);
        if (epc->parsed()) return cmd_ep_check(cx, file1);
        if (ro->parsed()) return cmd_roles(cx, file1, side);
        if (demo->parsed()) return cmd_demo(cx, file1, demo_dir, bless);
    } catch (const CLI::ValidationError& e) {
        err << "sigmapi: " << e.what() << "\n";
        return kUsage;
    } catch (const TypeError& e) {
        err << "sigmapi: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        err << "sigmapi: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr, fs::path());
}
