#include "sigmapi/export.hpp"

#include "sigmapi/syntax.hpp"

namespace sigmapi {

namespace {

const char* kind_name(Term::Kind k) {
    switch (k) {
    case Term::Kind::Atomic: return "atomic";
    case Term::Kind::Identity: return "identity";
    case Term::Kind::Cotuple: return "cotuple";
    case Term::Kind::Tuple: return "tuple";
    case Term::Kind::Injection: return "injection";
    case Term::Kind::Projection: return "projection";
    case Term::Kind::Cut: return "cut";
    }
    return "?";
}

Json term_json(const Term& t, const Sequent& s) {
    Json j;
    j["kind"] = kind_name(t.kind());
    switch (t.kind()) {
    case Term::Kind::Identity:
        break;
    case Term::Kind::Atomic:
        j["map"] = print_term(TypedTerm{t, s});
        j["domain"] = t.dom_channels();
        j["codomain"] = t.cod_channels();
        break;
    case Term::Kind::Cotuple:
    case Term::Kind::Tuple: {
        j["channel"] = t.channel();
        Json bs = Json::array();
        for (std::size_t i = 0; i < t.branch_count(); ++i)
            bs.push_back(Json{{"event", t.branch_event(i)}, {"term", term_json(t.branch(i), child_sequent(t, s, i))}});
        j["branches"] = std::move(bs);
        break;
    }
    case Term::Kind::Injection:
    case Term::Kind::Projection:
        j["channel"] = t.channel();
        j["event"] = t.event();
        j["body"] = term_json(t.body(), child_sequent(t, s, 0));
        break;
    case Term::Kind::Cut:
        j["channel"] = t.channel();
        j["protocol"] = to_json(t.cut_protocol());
        j["left"] = term_json(t.left(), child_sequent(t, s, 0));
        j["right"] = term_json(t.right(), child_sequent(t, s, 1));
        break;
    }
    return j;
}

}  // namespace

Json to_json(const Protocol& p) {
    if (p.is_atom()) return Json{{"atom", p.atom_name()}};
    Json bs = Json::array();
    for (const auto& b : p.branches()) bs.push_back(Json{{"event", b.event}, {"protocol", to_json(b.proto)}});
    return Json{{p.is_sum() ? "sum" : "product", std::move(bs)}};
}

Json to_json(const Sequent& s) {
    Json dom = Json::object(), cod = Json::object();
    for (const auto& [c, p] : s.dom) dom[c] = to_json(p);
    for (const auto& [c, p] : s.cod) cod[c] = to_json(p);
    return Json{{"text", s.str()}, {"domain", std::move(dom)}, {"codomain", std::move(cod)}};
}

Json to_json(const TypedTerm& t) {
    return Json{{"sequent", to_json(t.sequent)}, {"text", print_term(t)}, {"term", term_json(t.term, t.sequent)}};
}

Json to_json(const Behaviour& b) {
    Json j = Json::object();
    for (const auto& [c, es] : b.channels()) {
        Json row = Json::array();
        for (const auto& e : es) row.push_back(format_event(e));
        j[c] = std::move(row);
    }
    return j;
}

Json to_json(const Entailment& e) {
    Json c;
    if (e.conclusion.atomic) {
        const AtomicConclusion& m = e.conclusion.map;
        c = Json{{"atomic", format_conclusion(e.conclusion)}, {"domain", m.dom}, {"codomain", m.cod}};
    } else {
        c = Json{{"output", Json{{"channel", e.conclusion.channel}, {"event", e.conclusion.event}}}};
    }
    return Json{{"antecedent", to_json(e.antecedent)}, {"conclusion", std::move(c)},
                {"line", format_entailment_line(e)}};
}

Json to_json(const EntailmentSet& q) {
    Json es = Json::array();
    for (const auto& e : q.entailments) {
        Json j = to_json(e);
        j["hanging"] = is_hanging(e, q.sequent);
        es.push_back(std::move(j));
    }
    Json verified = Json::array();
    for (int i = 0; i < 7; ++i)
        if (q.verified & (1u << i)) verified.push_back("EP-" + std::to_string(i + 1));
    return Json{{"sequent", to_json(q.sequent)}, {"entailments", std::move(es)}, {"verified", std::move(verified)}};
}

Json to_json(const EPReport& r) {
    Json rules = Json::array();
    for (std::size_t i = 0; i < r.passed.size(); ++i) {
        Json j{{"rule", "EP-" + std::to_string(i + 1)}};
        j["passed"] = r.passed[i] ? Json(*r.passed[i]) : Json(nullptr);
        if (!r.counterexample[i].empty()) j["counterexample"] = r.counterexample[i];
        rules.push_back(std::move(j));
    }
    return Json{{"ok", r.ok()}, {"rules", std::move(rules)}, {"hanging", r.hanging}};
}

Json to_json(const EqualityResult& r) {
    Json j{{"equal", r.equal}};
    if (r.witness)
        j["witness"] = Json{{"path", path_to_string(r.witness->path)},
                            {"channel", r.witness->channel},
                            {"event", r.witness->event},
                            {"reason", r.witness->reason}};
    return j;
}

}  // namespace sigmapi
