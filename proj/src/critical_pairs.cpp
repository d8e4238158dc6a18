#include "sigmapi/critical_pairs.hpp"

#include <functional>
#include <sstream>

#include "sigmapi/error.hpp"
#include "sigmapi/syntax.hpp"

namespace sigmapi {

namespace {

using Paths = std::vector<std::vector<int>>;

void outermost(const Term& t, std::vector<int>& path, const std::function<bool(const Term&)>& pick, Paths& out) {
    if (pick(t)) {
        out.push_back(path);
        return;
    }
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        outermost(t.child(i), path, pick, out);
        path.pop_back();
    }
}

Paths outermost(const Term& t, const std::function<bool(const Term&)>& pick) {
    Paths out;
    std::vector<int> path;
    outermost(t, path, pick, out);
    return out;
}

std::vector<int> parse_path(const std::string& text) {
    std::vector<int> path;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '.')) path.push_back(std::stoi(part));
    return path;
}

TypedTerm run_token(const TypedTerm& t, const std::string& tok) {
    std::size_t at = tok.find('@');
    int rule = std::stoi(tok.substr(0, at));
    bool conversion = rule >= 13;
    if (at == std::string::npos) {
        if (conversion) throw Error("conversion " + tok + " needs a position");
        Paths ps = outermost(t.term, [&](const Term& n) { return rule_applies(n, rule); });
        if (ps.empty()) throw Error("rule " + tok + " applies nowhere");
        TypedTerm cur = t;
        for (const auto& p : ps) cur = apply_rule(cur, p, rule);
        return cur;
    }
    std::string where = tok.substr(at + 1);
    if (where == "L" || where == "R") {
        Paths ps = outermost(t.term, [](const Term& n) { return n.is_cut(); });
        if (ps.empty()) throw Error("no cut for " + tok);
        TypedTerm cur = t;
        for (auto p : ps) {
            p.push_back(where == "L" ? 0 : 1);
            cur = convert(cur, rule, p);
        }
        return cur;
    }
    std::vector<int> p = parse_path(where);
    return conversion ? convert(t, rule, p) : apply_rule(t, p, rule);
}

}  // namespace

TypedTerm run_script(const TypedTerm& t, std::string_view script) {
    std::stringstream ss{std::string(script)};
    std::string tok;
    TypedTerm cur = t;
    while (ss >> tok) cur = run_token(cur, tok);
    return cur;
}

JoinResult join(const CriticalPair& cp) {
    JoinResult r;
    try {
        AtomTheory th = AtomTheory::parse(cp.theory);
        TypedTerm peak = parse_typed(cp.peak, parse_sequent(cp.sequent), th);
        r.left = run_script(peak, cp.left);
        r.right = run_script(peak, cp.right);
        if (auto e = typing_error(*r.left, th)) throw Error(std::string("left side: ") + e->what());
        if (auto e = typing_error(*r.right, th)) throw Error(std::string("right side: ") + e->what());
        r.joined = *r.left == *r.right;
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

const std::vector<CriticalPair>& critical_pairs() {
    static const std::vector<CriticalPair> kPairs = {
        // Identity on the right against an input or output on the left.
        {"1-3/1", "f1 : A -> B", "x:{a:A} |- u:B", "cut k:B (x{a => #f1[x|k]})(id)", "1", "3 1"},
        {"1-3/2", "f1 : A -> B\nf2 : C -> B", "x:{a:A,b:C} |- u:B",
         "cut k:B (x{a => #f1[x|k], b => #f2[x|k]})(id)", "1", "3 1"},
        {"1-5/1", "f : A -> B C", "x:A |- u:{a:B}, v:C", "cut k:C (u![a](#f[x|u,k]))(id)", "1", "5 1"},
        {"1-5/2", "f1 : A -> B C\nf2 : D -> B C", "x:{c:A,d:D} |- u:{a:B}, v:C",
         "cut k:C (u![a](x{c => #f1[x|u,k], d => #f2[x|u,k]}))(id)", "1", "5 1"},
        {"1-7/1", "f : A -> C", "x:(a:A) |- v:C", "cut k:C (x![a](#f[x|k]))(id)", "1", "7 1"},
        {"1-7/2", "f1 : A -> C\nf2 : D -> C", "x:(a:{c:A,d:D}) |- v:C",
         "cut k:C (x![a](x{c => #f1[x|k], d => #f2[x|k]}))(id)", "1", "7 1"},
        {"1-9/1", "f1 : A -> B C", "x:A |- u:(a:B), v:C", "cut k:C (u(a => #f1[x|u,k]))(id)", "1", "9 1"},
        {"1-9/2", "f1 : A -> B C\nf2 : A -> D C", "x:A |- u:(a:B,b:D), v:C",
         "cut k:C (u(a => #f1[x|u,k], b => #f2[x|u,k]))(id)", "1", "9 1"},

        // Cotuple on the left.
        {"3-4/1", "f1 : A -> B\ng1 : B -> C", "x:{a:A} |- v:(c:C)", "cut k:B (x{a => #f1[x|k]})(v(c => #g1[k|v]))",
         "3 4 19@", "4 3"},
        {"3-4/2", "f1 : A -> B\nf2 : D -> B\ng1 : B -> C\ng2 : B -> E", "x:{a:A,b:D} |- v:(c:C,d:E)",
         "cut k:B (x{a => #f1[x|k], b => #f2[x|k]})(v(c => #g1[k|v], d => #g2[k|v]))", "3 4 19@", "4 3"},
        {"3-6/1", "f1 : A -> B\ng : B C -> D", "x:{a:A}, y:(b:C) |- v:D",
         "cut k:B (x{a => #f1[x|k]})(y![b](#g[k,y|v]))", "3 6 17@", "6 3"},
        {"3-6/2", "f1 : A -> B\nf2 : E -> B\ng : B C -> D", "x:{a:A,b:E}, y:(b:C,c:F) |- v:D",
         "cut k:B (x{a => #f1[x|k], b => #f2[x|k]})(y![b](#g[k,y|v]))", "3 6 17@", "6 3"},
        {"3-8/1", "f1 : A -> B\ng : B -> C", "x:{a:A} |- v:{b:C}", "cut k:B (x{a => #f1[x|k]})(v![b](#g[k|v]))",
         "3 8 15@", "8 3"},
        {"3-8/2", "f1 : A -> B\nf2 : E -> B\ng : B -> C", "x:{a:A,b:E} |- v:{b:C,c:F}",
         "cut k:B (x{a => #f1[x|k], b => #f2[x|k]})(v![b](#g[k|v]))", "3 8 15@", "8 3"},
        {"3-10/1", "f1 : A -> B\ng1 : B C -> D", "x:{a:A}, y:{c:C} |- v:D",
         "cut k:B (x{a => #f1[x|k]})(y{c => #g1[k,y|v]})", "3 10 13@", "10 3"},
        {"3-10/2", "f1 : A -> B\nf2 : E -> B\ng1 : B C -> D\ng2 : B F -> D", "x:{a:A,b:E}, y:{c:C,d:F} |- v:D",
         "cut k:B (x{a => #f1[x|k], b => #f2[x|k]})(y{c => #g1[k,y|v], d => #g2[k,y|v]})", "3 10 13@", "10 3"},
        {"3-13/1", "f11 : A C -> B\ng : B -> D", "x:{a:A}, y:{c:C} |- v:D",
         "cut k:B (x{a => y{c => #f11[x,y|k]}})(#g[k|v])", "3 3 13@", "13@L 3 3"},
        {"3-13/2", "f11 : A C -> B\nf12 : A F -> B\nf21 : E C -> B\nf22 : E F -> B\ng : B -> D",
         "x:{a:A,b:E}, y:{c:C,d:F} |- v:D",
         "cut k:B (x{a => y{c => #f11[x,y|k], d => #f12[x,y|k]}, b => y{c => #f21[x,y|k], d => #f22[x,y|k]}})"
         "(#g[k|v])",
         "3 3 13@", "13@L 3 3"},
        {"3-15a/1", "f1 : A -> C B\ng : B -> D", "x:{a:A} |- u:{b:C}, v:D",
         "cut k:B (x{a => u![b](#f1[x|u,k])})(#g[k|v])", "3 5 15@", "15@L 5 3"},
        {"3-15a/2", "f1 : A -> C B\nf2 : E -> C B\ng : B -> D", "x:{a:A,b:E} |- u:{b:C,c:F}, v:D",
         "cut k:B (x{a => u![b](#f1[x|u,k]), b => u![b](#f2[x|u,k])})(#g[k|v])", "3 5 15@", "15@L 5 3"},
        {"3-15b/1", "f1 : A -> B\ng1 : B -> D", "x:{a:A} |- v:D",
         "cut k:{b:B} (x{a => k![b](#f1[x|k])})(k{b => #g1[k|v]})", "3 11", "15@L 11 3"},
        {"3-15b/2", "f1 : A -> B\nf2 : E -> B\ng1 : B -> D\ng2 : F -> D", "x:{a:A,b:E} |- v:D",
         "cut k:{b:B,c:F} (x{a => k![b](#f1[x|k]), b => k![b](#f2[x|k])})(k{b => #g1[k|v], c => #g2[k|v]})",
         "3 11", "15@L 11 3"},
        {"3-17/1", "f1 : A C -> B\ng : B -> D", "x:{a:A}, y:(b:C) |- v:D",
         "cut k:B (x{a => y![b](#f1[x,y|k])})(#g[k|v])", "3 7 17@", "17@L 7 3"},
        {"3-17/2", "f1 : A C -> B\nf2 : E C -> B\ng : B -> D", "x:{a:A,b:E}, y:(b:C,c:F) |- v:D",
         "cut k:B (x{a => y![b](#f1[x,y|k]), b => y![b](#f2[x,y|k])})(#g[k|v])", "3 7 17@", "17@L 7 3"},
        {"3-19a/1", "f11 : A -> C B\ng : B -> D", "x:{a:A} |- u:(c:C), v:{e:D}",
         "cut k:B (x{a => u(c => #f11[x|u,k])})(v![e](#g[k|v]))", "3 9 19@", "19@L 9 3"},
        {"3-19a/2", "f11 : A -> C B\nf12 : A -> F B\nf21 : E -> C B\nf22 : E -> F B\ng1 : B G -> D\ng2 : B H -> D",
         "x:{a:A,b:E}, y:{e:G,f:H} |- u:(c:C,d:F), v:D",
         "cut k:B (x{a => u(c => #f11[x|u,k], d => #f12[x|u,k]), b => u(c => #f21[x|u,k], d => #f22[x|u,k])})"
         "(y{e => #g1[k,y|v], f => #g2[k,y|v]})",
         "3 9 19@", "19@L 9 3"},
        {"3-19b/1t", "f11 : A -> B\nh : B -> D", "x:{a:A} |- v:(e:D)",
         "cut k:(c:B) (x{a => k(c => #f11[x|k])})(v(e => k![c](#h[k|v])))", "3 4 19@", "19@L 4 19@L 3"},
        {"3-19b/1p", "f11 : A -> B\nh : B C -> D", "x:{a:A}, y:(e:C) |- v:D",
         "cut k:(c:B) (x{a => k(c => #f11[x|k])})(y![e](k![c](#h[k,y|v])))", "3 6 17@", "19@L 6 19@L 3"},
        {"3-19b/2i", "f11 : A -> B\nf12 : A -> F\nf21 : E -> B\nf22 : E -> F\nh : F -> D", "x:{a:A,b:E} |- v:{e:D}",
         "cut k:(c:B,d:F) (x{a => k(c => #f11[x|k], d => #f12[x|k]), b => k(c => #f21[x|k], d => #f22[x|k])})"
         "(v![e](k![d](#h[k|v])))",
         "3 8 15@", "19@L 8 19@L 3"},
        {"3-19b/2c", "f11 : A -> B\nf12 : A -> F\nf21 : E -> B\nf22 : E -> F\nh1 : B C -> D\nh2 : F G -> D",
         "x:{a:A,b:E}, y:{e:C,f:G} |- v:D",
         "cut k:(c:B,d:F) (x{a => k(c => #f11[x|k], d => #f12[x|k]), b => k(c => #f21[x|k], d => #f22[x|k])})"
         "(y{e => k![c](#h1[k,y|v]), f => k![d](#h2[k,y|v])})",
         "3 10 13@", "19@L 10 19@L 3"},
        {"3-19c/1", "f11 : A -> B\nh : B -> D", "x:{a:A} |- v:D",
         "cut k:(c:B) (x{a => k(c => #f11[x|k])})(k![c](#h[k|v]))", "3 12", "19@L 12 3"},
        {"3-19c/2", "f11 : A -> B\nf12 : A -> F\nf21 : E -> B\nf22 : E -> F\nh : F -> D", "x:{a:A,b:E} |- v:D",
         "cut k:(c:B,d:F) (x{a => k(c => #f11[x|k], d => #f12[x|k]), b => k(c => #f21[x|k], d => #f22[x|k])})"
         "(k![d](#h[k|v]))",
         "3 12", "19@L 12 3"},

        // Injection on the left.
        {"5-6/1", "f : A -> B E\ng : E C -> D", "x:A, y:(b:C) |- u:{a:B}, v:D",
         "cut k:E (u![a](#f[x|u,k]))(y![b](#g[k,y|v]))", "5 6 22@", "6 5"},
        {"5-6/2", "f1 : A -> B E\nf2 : F -> B E\ng : E C -> D", "x:{c:A,d:F}, y:(b:C) |- u:{a:B}, v:D",
         "cut k:E (u![a](x{c => #f1[x|u,k], d => #f2[x|u,k]}))(y![b](#g[k,y|v]))", "5 6 22@", "6 5"},
        {"5-8/1", "f : A -> B E\ng : E -> D", "x:A |- u:{a:B}, v:{b:D}",
         "cut k:E (u![a](#f[x|u,k]))(v![b](#g[k|v]))", "5 8 20@", "8 5"},
        {"5-8/2", "f1 : A -> B E\nf2 : F -> B E\ng : E -> D", "x:{c:A,d:F} |- u:{a:B}, v:{b:D}",
         "cut k:E (u![a](x{c => #f1[x|u,k], d => #f2[x|u,k]}))(v![b](#g[k|v]))", "5 8 20@", "8 5"},
        {"5-10/1", "f : A -> B E\ng1 : E C -> D", "x:A, y:{b:C} |- u:{a:B}, v:D",
         "cut k:E (u![a](#f[x|u,k]))(y{b => #g1[k,y|v]})", "5 10 15@", "10 5"},
        {"5-10/2", "f : A -> B E\ng1 : E C -> D\ng2 : E F -> D", "x:A, y:{b:C,c:F} |- u:{a:B}, v:D",
         "cut k:E (u![a](#f[x|u,k]))(y{b => #g1[k,y|v], c => #g2[k,y|v]})", "5 10 15@", "10 5"},
        {"5-15/1", "f1 : C -> B E\ng : E -> D", "y:{b:C} |- u:{a:B}, v:D",
         "cut k:E (u![a](y{b => #f1[y|u,k]}))(#g[k|v])", "5 3 15@", "15@L 3 5"},
        {"5-15/2", "f1 : C -> B E\nf2 : F -> B E\ng : E -> D", "y:{b:C,c:F} |- u:{a:B}, v:D",
         "cut k:E (u![a](y{b => #f1[y|u,k], c => #f2[y|u,k]}))(#g[k|v])", "5 3 15@", "15@L 3 5"},
        {"5-18a/1", "f1 : A -> B C E\ng : E -> D", "x:A |- u:{a:B}, w:(b:C), v:{e:D}",
         "cut k:E (u![a](w(b => #f1[x|u,w,k])))(v![e](#g[k|v]))", "5 9 18@", "18@L 9 5"},
        {"5-18a/2", "f1 : A -> B C E\nf2 : A -> B F E\ng1 : E G -> D\ng2 : E H -> D",
         "x:A, y:{e:G,f:H} |- u:{a:B}, w:(b:C,c:F), v:D",
         "cut k:E (u![a](w(b => #f1[x|u,w,k], c => #f2[x|u,w,k])))(y{e => #g1[k,y|v], f => #g2[k,y|v]})",
         "5 9 18@", "18@L 9 5"},
        {"5-18b/1t", "f1 : A -> B E\nh : E -> D", "x:A |- u:{a:B}, v:(e:D)",
         "cut k:(b:E) (u![a](k(b => #f1[x|u,k])))(v(e => k![b](#h[k|v])))", "5 4 18@", "18@L 4 18@L 5"},
        {"5-18b/1p", "f1 : A -> B E\nh : E C -> D", "x:A, y:(e:C) |- u:{a:B}, v:D",
         "cut k:(b:E) (u![a](k(b => #f1[x|u,k])))(y![e](k![b](#h[k,y|v])))", "5 6 22@", "18@L 6 18@L 5"},
        {"5-18b/2i", "f1 : A -> B E\nf2 : A -> B F\nh : F -> D", "x:A |- u:{a:B}, v:{e:D}",
         "cut k:(b:E,c:F) (u![a](k(b => #f1[x|u,k], c => #f2[x|u,k])))(v![e](k![c](#h[k|v])))", "5 8 20@",
         "18@L 8 18@L 5"},
        {"5-18b/2c", "f1 : A -> B E\nf2 : A -> B F\nh1 : E C -> D\nh2 : F G -> D", "x:A, y:{e:C,f:G} |- u:{a:B}, v:D",
         "cut k:(b:E,c:F) (u![a](k(b => #f1[x|u,k], c => #f2[x|u,k])))"
         "(y{e => k![b](#h1[k,y|v]), f => k![c](#h2[k,y|v])})",
         "5 10 15@", "18@L 10 18@L 5"},
        {"5-18c/1", "f1 : A -> B E\nh : E -> D", "x:A |- u:{a:B}, v:D",
         "cut k:(b:E) (u![a](k(b => #f1[x|u,k])))(k![b](#h[k|v]))", "5 12", "18@L 12 5"},
        {"5-18c/2", "f1 : A -> B E\nf2 : A -> B F\nh : F -> D", "x:A |- u:{a:B}, v:D",
         "cut k:(b:E,c:F) (u![a](k(b => #f1[x|u,k], c => #f2[x|u,k])))(k![c](#h[k|v]))", "5 12", "18@L 12 5"},
        {"5-20a/1", "f : A -> B C E\ng : E -> D", "x:A |- u:{a:B}, w:{b:C}, v:D",
         "cut k:E (u![a](w![b](#f[x|u,w,k])))(#g[k|v])", "5 5 20@", "20@L 5 5"},
        {"5-20a/2", "f1 : A -> B C E\nf2 : F -> B C E\ng : E -> D", "x:{c:A,d:F} |- u:{a:B}, w:{b:C,c:G}, v:D",
         "cut k:E (u![a](w![b](x{c => #f1[x|u,w,k], d => #f2[x|u,w,k]})))(#g[k|v])", "5 5 20@", "20@L 5 5"},
        {"5-20b/1", "f : A -> B E\ng1 : E -> D", "x:A |- u:{a:B}, v:D",
         "cut k:{b:E} (u![a](k![b](#f[x|u,k])))(k{b => #g1[k|v]})", "5 11", "20@L 11 5"},
        {"5-20b/2", "f : A -> B F\ng1 : E -> D\ng2 : F -> D", "x:A |- u:{a:B}, v:D",
         "cut k:{b:E,c:F} (u![a](k![c](#f[x|u,k])))(k{b => #g1[k|v], c => #g2[k|v]})", "5 11", "20@L 11 5"},
        {"5-22/1", "f : C -> B E\ng : E -> D", "y:(b:C) |- u:{a:B}, v:D",
         "cut k:E (u![a](y![b](#f[y|u,k])))(#g[k|v])", "5 7 22@", "22@L 7 5"},
        {"5-22/2", "f : C -> B E\ng1 : E -> D\ng2 : E -> G", "y:(b:C,c:F) |- u:{a:B}, v:(e:D,f:G)",
         "cut k:E (u![a](y![b](#f[y|u,k])))(v(e => #g1[k|v], f => #g2[k|v]))", "5 7 22@", "22@L 7 5"},

        // Projection on the left.
        {"7-8/1", "f : A -> E\ng : E -> D", "x:(a:A) |- v:{b:D}", "cut k:E (x![a](#f[x|k]))(v![b](#g[k|v]))",
         "7 8 22@", "8 7"},
        {"7-8/2", "f1 : A C -> E\nf2 : A F -> E\ng : E -> D", "x:(a:A,c:G), y:{c:C,d:F} |- v:{b:D,c:H}",
         "cut k:E (x![a](y{c => #f1[x,y|k], d => #f2[x,y|k]}))(v![b](#g[k|v]))", "7 8 22@", "8 7"},
        {"7-10/1", "f : A -> E\ng1 : E C -> D", "x:(a:A), y:{b:C} |- v:D",
         "cut k:E (x![a](#f[x|k]))(y{b => #g1[k,y|v]})", "7 10 17@", "10 7"},
        {"7-10/2", "f : A -> E\ng1 : E C -> D\ng2 : E F -> D", "x:(a:A), y:{b:C,c:F} |- v:D",
         "cut k:E (x![a](#f[x|k]))(y{b => #g1[k,y|v], c => #g2[k,y|v]})", "7 10 17@", "10 7"},
        {"7-16a/1", "f1 : A -> C E\ng : E -> D", "x:(a:A) |- w:(b:C), v:{e:D}",
         "cut k:E (x![a](w(b => #f1[x|w,k])))(v![e](#g[k|v]))", "7 9 16@", "16@L 9 7"},
        {"7-16a/2", "f1 : A -> C E\nf2 : A -> F E\ng1 : E G -> D\ng2 : E H -> D",
         "x:(a:A), y:{e:G,f:H} |- w:(b:C,c:F), v:D",
         "cut k:E (x![a](w(b => #f1[x|w,k], c => #f2[x|w,k])))(y{e => #g1[k,y|v], f => #g2[k,y|v]})", "7 9 16@",
         "16@L 9 7"},
        {"7-16b/1t", "f1 : A -> E\nh : E -> D", "x:(a:A) |- v:(e:D)",
         "cut k:(b:E) (x![a](k(b => #f1[x|k])))(v(e => k![b](#h[k|v])))", "7 4 16@", "16@L 4 16@L 7"},
        {"7-16b/1p", "f1 : A -> E\nh : E C -> D", "x:(a:A), y:(e:C) |- v:D",
         "cut k:(b:E) (x![a](k(b => #f1[x|k])))(y![e](k![b](#h[k,y|v])))", "7 6 21@", "16@L 6 16@L 7"},
        {"7-16b/2i", "f1 : A -> E\nf2 : A -> F\nh : F -> D", "x:(a:A) |- v:{e:D}",
         "cut k:(b:E,c:F) (x![a](k(b => #f1[x|k], c => #f2[x|k])))(v![e](k![c](#h[k|v])))", "7 8 22@",
         "16@L 8 16@L 7"},
        {"7-16b/2c", "f1 : A -> E\nf2 : A -> F\nh1 : E C -> D\nh2 : F G -> D", "x:(a:A), y:{e:C,f:G} |- v:D",
         "cut k:(b:E,c:F) (x![a](k(b => #f1[x|k], c => #f2[x|k])))(y{e => k![b](#h1[k,y|v]), f => k![c](#h2[k,y|v])})",
         "7 10 17@", "16@L 10 16@L 7"},
        {"7-16c/1", "f1 : A -> E\nh : E -> D", "x:(a:A) |- v:D",
         "cut k:(b:E) (x![a](k(b => #f1[x|k])))(k![b](#h[k|v]))", "7 12", "16@L 12 7"},
        {"7-16c/2", "f1 : A -> E\nf2 : A -> F\nh : F -> D", "x:(a:A) |- v:D",
         "cut k:(b:E,c:F) (x![a](k(b => #f1[x|k], c => #f2[x|k])))(k![c](#h[k|v]))", "7 12", "16@L 12 7"},
        {"7-17/1", "f1 : A C -> E\ng : E -> D", "x:(a:A), y:{b:C} |- v:D",
         "cut k:E (x![a](y{b => #f1[x,y|k]}))(#g[k|v])", "7 3 17@", "17@L 3 7"},
        {"7-17/2", "f1 : A C -> E\nf2 : A F -> E\ng : E -> D", "x:(a:A), y:{b:C,c:F} |- v:D",
         "cut k:E (x![a](y{b => #f1[x,y|k], c => #f2[x,y|k]}))(#g[k|v])", "7 3 17@", "17@L 3 7"},
        {"7-21/1", "f : A C -> E\ng : E -> D", "x:(a:A), y:(b:C) |- v:D",
         "cut k:E (x![a](y![b](#f[x,y|k])))(#g[k|v])", "7 7 21@", "21@L 7 7"},
        {"7-21/2", "f : A C -> E\ng1 : E -> D\ng2 : E -> G", "x:(a:A,c:F), y:(b:C,c:H) |- v:(e:D,f:G)",
         "cut k:E (x![a](y![b](#f[x,y|k])))(v(e => #g1[k|v], f => #g2[k|v]))", "7 7 21@", "21@L 7 7"},
        {"7-22a/1", "f : A -> C E\ng : E -> D", "x:(a:A) |- w:{b:C}, v:D",
         "cut k:E (x![a](w![b](#f[x|w,k])))(#g[k|v])", "7 5 22@", "22@L 5 7"},
        {"7-22a/2", "f : A -> C E\ng1 : E -> D\ng2 : E -> G", "x:(a:A,c:F) |- w:{b:C,c:H}, v:(e:D,f:G)",
         "cut k:E (x![a](w![b](#f[x|w,k])))(v(e => #g1[k|v], f => #g2[k|v]))", "7 5 22@", "22@L 5 7"},
        {"7-22b/1", "f : A -> E\ng1 : E -> D", "x:(a:A) |- v:D",
         "cut k:{b:E} (x![a](k![b](#f[x|k])))(k{b => #g1[k|v]})", "7 11", "22@L 11 7"},
        {"7-22b/2", "f : A -> F\ng1 : E -> D\ng2 : F -> D", "x:(a:A) |- v:D",
         "cut k:{b:E,c:F} (x![a](k![c](#f[x|k])))(k{b => #g1[k|v], c => #g2[k|v]})", "7 11", "22@L 11 7"},

        // Tuple on the left.
        {"9-10/1", "f1 : A -> B E\ng1 : E C -> D", "x:A, y:{b:C} |- u:(a:B), v:D",
         "cut k:E (u(a => #f1[x|u,k]))(y{b => #g1[k,y|v]})", "9 10 19@", "10 9"},
        {"9-10/2", "f1 : A -> B E\nf2 : A -> F E\ng1 : E C -> D\ng2 : E G -> D", "x:A, y:{b:C,c:G} |- u:(a:B,c:F), v:D",
         "cut k:E (u(a => #f1[x|u,k], c => #f2[x|u,k]))(y{b => #g1[k,y|v], c => #g2[k,y|v]})", "9 10 19@",
         "10 9"},
        {"9-14a/1", "f11 : A -> B C E\ng : E -> D", "x:A |- u:(a:B), w:(b:C), v:{e:D}",
         "cut k:E (u(a => w(b => #f11[x|u,w,k])))(v![e](#g[k|v]))", "9 9 14@", "14@L 9 9"},
        {"9-14a/2",
         "f11 : A -> B C E\nf12 : A -> B G E\nf21 : A -> F C E\nf22 : A -> F G E\ng1 : E H -> D\ng2 : E I -> D",
         "x:A, y:{e:H,f:I} |- u:(a:B,c:F), w:(b:C,d:G), v:D",
         "cut k:E (u(a => w(b => #f11[x|u,w,k], d => #f12[x|u,w,k]), c => w(b => #f21[x|u,w,k], d => #f22[x|u,w,k])))"
         "(y{e => #g1[k,y|v], f => #g2[k,y|v]})",
         "9 9 14@", "14@L 9 9"},
        {"9-14b/1t", "f11 : A -> B E\nh : E -> D", "x:A |- u:(a:B), v:(e:D)",
         "cut k:(b:E) (u(a => k(b => #f11[x|u,k])))(v(e => k![b](#h[k|v])))", "9 4 14@", "14@L 4 14@L 9"},
        {"9-14b/1p", "f11 : A -> B E\nh : E C -> D", "x:A, y:(e:C) |- u:(a:B), v:D",
         "cut k:(b:E) (u(a => k(b => #f11[x|u,k])))(y![e](k![b](#h[k,y|v])))", "9 6 16@", "14@L 6 14@L 9"},
        {"9-14b/2i", "f11 : A -> B E\nf12 : A -> B G\nf21 : A -> F E\nf22 : A -> F G\nh : G -> D",
         "x:A |- u:(a:B,c:F), v:{e:D}",
         "cut k:(b:E,d:G) (u(a => k(b => #f11[x|u,k], d => #f12[x|u,k]), c => k(b => #f21[x|u,k], d => #f22[x|u,k])))"
         "(v![e](k![d](#h[k|v])))",
         "9 8 18@", "14@L 8 14@L 9"},
        {"9-14b/2c", "f11 : A -> B E\nf12 : A -> B G\nf21 : A -> F E\nf22 : A -> F G\nh1 : E C -> D\nh2 : G H -> D",
         "x:A, y:{e:C,f:H} |- u:(a:B,c:F), v:D",
         "cut k:(b:E,d:G) (u(a => k(b => #f11[x|u,k], d => #f12[x|u,k]), c => k(b => #f21[x|u,k], d => #f22[x|u,k])))"
         "(y{e => k![b](#h1[k,y|v]), f => k![d](#h2[k,y|v])})",
         "9 10 19@", "14@L 10 14@L 9"},
        {"9-14c/1", "f11 : A -> B E\nh : E -> D", "x:A |- u:(a:B), v:D",
         "cut k:(b:E) (u(a => k(b => #f11[x|u,k])))(k![b](#h[k|v]))", "9 12", "14@L 12 9"},
        {"9-14c/2", "f11 : A -> B E\nf12 : A -> B G\nf21 : A -> F E\nf22 : A -> F G\nh : G -> D",
         "x:A |- u:(a:B,c:F), v:D",
         "cut k:(b:E,d:G) (u(a => k(b => #f11[x|u,k], d => #f12[x|u,k]), c => k(b => #f21[x|u,k], d => #f22[x|u,k])))"
         "(k![d](#h[k|v]))",
         "9 12", "14@L 12 9"},
        {"9-16/1", "f1 : C -> B E\ng : E -> D", "y:(b:C) |- u:(a:B), v:D",
         "cut k:E (u(a => y![b](#f1[y|u,k])))(#g[k|v])", "9 7 16@", "16@L 7 9"},
        {"9-16/2", "f1 : C -> B E\nf2 : C -> F E\ng : E -> D", "y:(b:C,c:G) |- u:(a:B,c:F), v:D",
         "cut k:E (u(a => y![b](#f1[y|u,k]), c => y![b](#f2[y|u,k])))(#g[k|v])", "9 7 16@", "16@L 7 9"},
        {"9-18a/1", "f1 : A -> B C E\ng : E -> D", "x:A |- u:(a:B), w:{b:C}, v:D",
         "cut k:E (u(a => w![b](#f1[x|u,w,k])))(#g[k|v])", "9 5 18@", "18@L 5 9"},
        {"9-18a/2", "f1 : A -> B C E\nf2 : A -> F C E\ng : E -> D", "x:A |- u:(a:B,c:F), w:{b:C,c:G}, v:D",
         "cut k:E (u(a => w![b](#f1[x|u,w,k]), c => w![b](#f2[x|u,w,k])))(#g[k|v])", "9 5 18@", "18@L 5 9"},
        {"9-18b/1", "f1 : A -> B E\ng1 : E -> D", "x:A |- u:(a:B), v:D",
         "cut k:{b:E} (u(a => k![b](#f1[x|u,k])))(k{b => #g1[k|v]})", "9 11", "18@L 11 9"},
        {"9-18b/2", "f1 : A -> B G\nf2 : A -> F G\ng1 : E -> D\ng2 : G -> D", "x:A |- u:(a:B,c:F), v:D",
         "cut k:{b:E,c:G} (u(a => k![c](#f1[x|u,k]), c => k![c](#f2[x|u,k])))(k{b => #g1[k|v], c => #g2[k|v]})",
         "9 11", "18@L 11 9"},
        {"9-19/1", "f11 : C -> B E\ng : E -> D", "y:{b:C} |- u:(a:B), v:D",
         "cut k:E (u(a => y{b => #f11[y|u,k]}))(#g[k|v])", "9 3 19@", "19@L 3 9"},
        {"9-19/2", "f11 : C -> B E\nf12 : G -> B E\nf21 : C -> F E\nf22 : G -> F E\ng : E -> D",
         "y:{b:C,c:G} |- u:(a:B,c:F), v:D",
         "cut k:E (u(a => y{b => #f11[y|u,k], c => #f12[y|u,k]}, c => y{b => #f21[y|u,k], c => #f22[y|u,k]}))"
         "(#g[k|v])",
         "9 3 19@", "19@L 3 9"},

        // Injection against a cotuple on the cut channel.
        {"11-13/1", "f : A -> E\ng11 : E C -> D", "x:A, y:{b:C} |- v:D",
         "cut k:{a:E} (k![a](#f[x|k]))(k{a => y{b => #g11[k,y|v]}})", "11 10", "13@R 10 11"},
        {"11-13/2", "f : A -> F\ng11 : E C -> D\ng12 : E G -> D\ng21 : F C -> D\ng22 : F G -> D", "x:A, y:{b:C,d:G} |- v:D",
         "cut k:{a:E,c:F} (k![c](#f[x|k]))"
         "(k{a => y{b => #g11[k,y|v], d => #g12[k,y|v]}, c => y{b => #g21[k,y|v], d => #g22[k,y|v]}})",
         "11 10", "13@R 10 11"},
        {"11-15a/1", "f1 : C -> E\ng1 : E -> D", "y:{b:C} |- v:D",
         "cut k:{a:E} (k![a](y{b => #f1[y|k]}))(k{a => #g1[k|v]})", "11 3", "15@L 3 11"},
        {"11-15a/2", "f1 : C -> F\nf2 : G -> F\ng1 : E -> D\ng2 : F -> D", "y:{b:C,d:G} |- v:D",
         "cut k:{a:E,c:F} (k![c](y{b => #f1[y|k], d => #f2[y|k]}))(k{a => #g1[k|v], c => #g2[k|v]})", "11 3",
         "15@L 3 11"},
        {"11-15b/1", "f : A -> E\ng1 : E -> D", "x:A |- v:{b:D}",
         "cut k:{a:E} (k![a](#f[x|k]))(k{a => v![b](#g1[k|v])})", "11 8", "15@R 8 11"},
        {"11-15b/2", "f : A -> F\ng1 : E -> D\ng2 : F -> D", "x:A |- v:{b:D,c:G}",
         "cut k:{a:E,c:F} (k![c](#f[x|k]))(k{a => v![b](#g1[k|v]), c => v![b](#g2[k|v])})", "11 8", "15@R 8 11"},
        {"11-17/1", "f : A -> E\ng1 : E C -> D", "x:A, y:(b:C) |- v:D",
         "cut k:{a:E} (k![a](#f[x|k]))(k{a => y![b](#g1[k,y|v])})", "11 6", "17@R 6 11"},
        {"11-17/2", "f : A -> F\ng1 : E C -> D\ng2 : F C -> D", "x:A, y:(b:C,c:G) |- v:D",
         "cut k:{a:E,c:F} (k![c](#f[x|k]))(k{a => y![b](#g1[k,y|v]), c => y![b](#g2[k,y|v])})", "11 6",
         "17@R 6 11"},
        {"11-18/1", "f1 : A -> B E\ng1 : E -> D", "x:A |- u:(b:B), v:D",
         "cut k:{a:E} (k![a](u(b => #f1[x|u,k])))(k{a => #g1[k|v]})", "11 9", "18@L 9 11"},
        {"11-18/2", "f1 : A -> B F\nf2 : A -> G F\ng1 : E -> D\ng2 : F -> D", "x:A |- u:(b:B,c:G), v:D",
         "cut k:{a:E,c:F} (k![c](u(b => #f1[x|u,k], c => #f2[x|u,k])))(k{a => #g1[k|v], c => #g2[k|v]})", "11 9",
         "18@L 9 11"},
        {"11-19/1", "f : A -> E\ng11 : E -> D", "x:A |- v:(b:D)",
         "cut k:{a:E} (k![a](#f[x|k]))(k{a => v(b => #g11[k|v])})", "11 4", "19@R 4 11"},
        {"11-19/2", "f : A -> F\ng11 : E -> D\ng12 : E -> G\ng21 : F -> D\ng22 : F -> G", "x:A |- v:(b:D,d:G)",
         "cut k:{a:E,c:F} (k![c](#f[x|k]))"
         "(k{a => v(b => #g11[k|v], d => #g12[k|v]), c => v(b => #g21[k|v], d => #g22[k|v])})",
         "11 4", "19@R 4 11"},
        {"11-20/1", "f : A -> B E\ng1 : E -> D", "x:A |- u:{b:B}, v:D",
         "cut k:{a:E} (k![a](u![b](#f[x|u,k])))(k{a => #g1[k|v]})", "11 5", "20@L 5 11"},
        {"11-20/2", "f : A -> B F\ng1 : E -> D\ng2 : F -> D", "x:A |- u:{b:B,c:G}, v:D",
         "cut k:{a:E,c:F} (k![c](u![b](#f[x|u,k])))(k{a => #g1[k|v], c => #g2[k|v]})", "11 5", "20@L 5 11"},
        {"11-22/1", "f : A -> E\ng1 : E -> D", "x:(b:A) |- v:D",
         "cut k:{a:E} (k![a](x![b](#f[x|k])))(k{a => #g1[k|v]})", "11 7", "22@L 7 11"},
        {"11-22/2", "f : A -> F\ng1 : E -> D\ng2 : F -> D", "x:(b:A,c:G) |- v:D",
         "cut k:{a:E,c:F} (k![c](x![b](#f[x|k])))(k{a => #g1[k|v], c => #g2[k|v]})", "11 7", "22@L 7 11"},
    };
    return kPairs;
}

}  // namespace sigmapi
