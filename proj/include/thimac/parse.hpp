#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexer.hpp"
#include "metamodel.hpp"

namespace thimac {

namespace detail {

// Recursive descent over the token stream.  The first syntax error aborts
// the parse (no recovery); name checks record a diagnostic and carry on.
class ParserBase {
protected:
    struct Abort {};

    explicit ParserBase(std::string_view src) : toks_(lex(src)) {}

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& get() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    [[noreturn]] void fail(SourceLoc at, std::string msg) {
        diags_.push_back(Diagnostic::error(Code::Syntax, at, std::move(msg)));
        throw Abort{};
    }

    void check_bad() {
        if (peek().kind == Tok::Bad) fail(peek().loc, peek().text);
    }

    bool at_keyword(std::string_view kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    void expect_keyword(std::string_view kw) {
        check_bad();
        if (!at_keyword(kw))
            fail(peek().loc, "expected '" + std::string(kw) + "'");
        ++pos_;
    }

    Token expect(Tok kind, std::string_view what) {
        check_bad();
        if (peek().kind != kind)
            fail(peek().loc, "expected " + std::string(what));
        return toks_[pos_++];
    }

    bool accept(Tok kind) {
        check_bad();
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    std::uint64_t expect_count(std::string_view what) {
        Token n = expect(Tok::Number, what);
        return std::stoull(n.text);
    }

    void duplicate(SourceLoc at, std::string msg) {
        diags_.push_back(Diagnostic::error(Code::DuplicateName, at, std::move(msg)));
    }
};

class TmParser : ParserBase {
public:
    explicit TmParser(std::string_view src) : ParserBase(src) {}

    Outcome<Model> run() {
        Outcome<Model> out;
        try {
            Model m = parse_model();
            check_bad();
            if (peek().kind != Tok::End)
                fail(peek().loc, "expected end of input");
            if (!has_errors(diags_)) out.value = std::move(m);
        } catch (Abort&) {
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    Model parse_model() {
        Model m;
        expect_keyword("model");
        m.statics.name = expect(Tok::Ident, "model name").text;
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (at_keyword("thimac")) {
                Thimac t = parse_thimac();
                check_sibling(m.statics.thimacs, t);
                m.statics.thimacs.push_back(std::move(t));
            } else if (at_keyword("flow")) {
                m.statics.flows.push_back(parse_edge<Flow>());
            } else if (at_keyword("trigger")) {
                m.statics.triggers.push_back(parse_edge<Trigger>());
            } else if (at_keyword("event")) {
                Event e = parse_event();
                for (const Event& other : m.events)
                    if (other.id == e.id)
                        duplicate(e.loc, "event '" + e.id + "' already declared");
                m.events.push_back(std::move(e));
            } else if (at_keyword("behavior")) {
                parse_behavior(m);
            } else {
                fail(peek().loc, "expected thimac, flow, trigger, event or behavior");
            }
        }
        return m;
    }

    void check_sibling(const std::vector<Thimac>& siblings, const Thimac& t) {
        for (const Thimac& other : siblings)
            if (other.name == t.name)
                duplicate(t.loc, "thimac '" + t.name + "' already declared here");
    }

    Thimac parse_thimac() {
        Thimac t;
        t.loc = peek().loc;
        expect_keyword("thimac");
        t.name = expect(Tok::Ident, "thimac name").text;
        if (at_keyword("memory")) {
            ++pos_;
            t.has_memory = true;
        }
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (at_keyword("stage")) {
                SourceLoc at = get().loc;
                Token kw = expect(Tok::Ident, "stage kind");
                auto kind = stage_from_keyword(kw.text);
                if (!kind)
                    fail(kw.loc, "unknown stage kind '" + kw.text + "'");
                if (t.has_stage(*kind))
                    duplicate(at, "stage '" + kw.text + "' already declared in '" +
                                      t.name + "'");
                else
                    t.stages.push_back(*kind);
                expect(Tok::Semi, "';'");
            } else if (at_keyword("thimac")) {
                Thimac sub = parse_thimac();
                check_sibling(t.subthimacs, sub);
                t.subthimacs.push_back(std::move(sub));
            } else {
                fail(peek().loc, "expected stage or thimac");
            }
        }
        return t;
    }

    StageRef parse_stage_ref() {
        StageRef ref;
        ref.loc = peek().loc;
        std::vector<Token> parts;
        parts.push_back(expect(Tok::Ident, "stage reference"));
        while (accept(Tok::Dot)) parts.push_back(expect(Tok::Ident, "identifier"));
        auto kind = stage_from_keyword(parts.back().text);
        if (parts.size() < 2 || !kind)
            fail(parts.back().loc,
                 "stage reference must end in a stage kind (create, process, "
                 "release, transfer, receive)");
        ref.kind = *kind;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            ref.path.push_back(std::move(parts[i].text));
        return ref;
    }

    template <class E>
    E parse_edge() {
        E e;
        e.loc = get().loc;  // 'flow' / 'trigger'
        e.source = parse_stage_ref();
        expect(Tok::Arrow, "'->'");
        e.target = parse_stage_ref();
        expect(Tok::Semi, "';'");
        return e;
    }

    Event parse_event() {
        Event e;
        e.loc = get().loc;  // 'event'
        e.id = expect(Tok::Ident, "event id").text;
        check_bad();
        if (peek().kind == Tok::String) e.label = get().text;
        expect(Tok::LBrace, "'{'");
        expect_keyword("region");
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (at_keyword("flow")) {
                e.region.emplace_back(parse_edge<Flow>());
            } else if (at_keyword("trigger")) {
                e.region.emplace_back(parse_edge<Trigger>());
            } else {
                StageRef ref = parse_stage_ref();
                expect(Tok::Semi, "';'");
                e.region.emplace_back(std::move(ref));
            }
        }
        if (at_keyword("time")) {
            ++pos_;
            e.time = expect(Tok::String, "time text").text;
            expect(Tok::Semi, "';'");
        }
        if (at_keyword("duration")) {
            ++pos_;
            Duration d;
            d.value = expect_count("duration value");
            Token unit = expect(Tok::Ident, "duration unit (ticks, min or h)");
            if (unit.text == "ticks") d.unit = DurationUnit::Ticks;
            else if (unit.text == "min") d.unit = DurationUnit::Minutes;
            else if (unit.text == "h") d.unit = DurationUnit::Hours;
            else fail(unit.loc, "unknown duration unit '" + unit.text + "'");
            expect(Tok::Semi, "';'");
            e.duration = d;
        }
        expect(Tok::RBrace, "'}'");
        return e;
    }

    void parse_behavior(Model& m) {
        expect_keyword("behavior");
        expect(Tok::LBrace, "'{'");
        if (!m.behavior) m.behavior = BehaviorGraph{};
        BehaviorGraph& g = *m.behavior;
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (at_keyword("repeat")) {
                Repeat r;
                r.loc = get().loc;
                r.event = expect(Tok::Ident, "event id").text;
                check_bad();
                if (peek().kind == Tok::Number) {
                    Token n = toks_[pos_];
                    r.count = expect_count("repeat count");
                    if (r.count == 0) fail(n.loc, "repeat count must be positive");
                }
                expect(Tok::Semi, "';'");
                bool seen = false;
                for (const Repeat& other : g.repeats)
                    if (other.event == r.event) seen = true;
                if (seen)
                    duplicate(r.loc, "repeat for '" + r.event + "' already declared");
                else
                    g.repeats.push_back(std::move(r));
            } else {
                PrecedenceEdge p;
                p.loc = peek().loc;
                p.from = expect(Tok::Ident, "event id").text;
                expect(Tok::Arrow, "'->'");
                p.to = expect(Tok::Ident, "event id").text;
                expect(Tok::Semi, "';'");
                bool seen = false;
                for (const PrecedenceEdge& other : g.precedence)
                    if (other.from == p.from && other.to == p.to) seen = true;
                if (!seen) g.precedence.push_back(std::move(p));
            }
        }
    }
};

class ErParser : ParserBase {
public:
    explicit ErParser(std::string_view src) : ParserBase(src) {}

    Outcome<ErModel> run() {
        Outcome<ErModel> out;
        try {
            ErModel m = parse_erd();
            check_bad();
            if (peek().kind != Tok::End)
                fail(peek().loc, "expected end of input");
            check_roles(m);
            if (!has_errors(diags_)) out.value = std::move(m);
        } catch (Abort&) {
        }
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    ErModel parse_erd() {
        ErModel m;
        expect_keyword("erd");
        m.name = expect(Tok::Ident, "diagram name").text;
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (at_keyword("entity")) {
                ErEntity e = parse_entity();
                for (const ErEntity& other : m.entities)
                    if (other.name == e.name)
                        duplicate(e.loc, "entity '" + e.name + "' already declared");
                m.entities.push_back(std::move(e));
            } else if (at_keyword("relationship")) {
                ErRelationship r = parse_relationship();
                for (const ErRelationship& other : m.relationships)
                    if (other.name == r.name)
                        duplicate(r.loc,
                                  "relationship '" + r.name + "' already declared");
                m.relationships.push_back(std::move(r));
            } else {
                fail(peek().loc, "expected entity or relationship");
            }
        }
        return m;
    }

    ErAttribute parse_attr(bool relationship_scope) {
        ErAttribute a;
        a.loc = get().loc;  // 'attr'
        a.name = expect(Tok::Ident, "attribute name").text;
        if (at_keyword("key")) {
            ++pos_;
            a.is_key = true;
        }
        if (at_keyword("temporal")) {
            SourceLoc at = peek().loc;
            ++pos_;
            a.is_temporal = true;
            if (!relationship_scope)
                diags_.push_back(Diagnostic::warning(
                    Code::TemporalOnEntity, at,
                    "'temporal' only takes effect on relationship attributes"));
        }
        expect(Tok::Semi, "';'");
        return a;
    }

    void check_attr_unique(const std::vector<ErAttribute>& attrs,
                           const ErAttribute& a, const std::string& owner) {
        for (const ErAttribute& other : attrs)
            if (other.name == a.name)
                duplicate(a.loc,
                          "attribute '" + a.name + "' already declared in '" +
                              owner + "'");
    }

    ErEntity parse_entity() {
        ErEntity e;
        e.loc = get().loc;  // 'entity'
        e.name = expect(Tok::Ident, "entity name").text;
        if (accept(Tok::Semi)) return e;  // attribute-less shorthand
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
            check_bad();
            if (!at_keyword("attr")) fail(peek().loc, "expected attr");
            ErAttribute a = parse_attr(false);
            check_attr_unique(e.attributes, a, e.name);
            e.attributes.push_back(std::move(a));
        }
        return e;
    }

    ErRelationship parse_relationship() {
        ErRelationship r;
        r.loc = get().loc;  // 'relationship'
        r.name = expect(Tok::Ident, "relationship name").text;
        expect(Tok::LParen, "'('");
        r.roles.push_back(parse_role());
        expect(Tok::Comma, "','");  // at least two roles
        r.roles.push_back(parse_role());
        while (accept(Tok::Comma)) r.roles.push_back(parse_role());
        expect(Tok::RParen, "')'");
        if (accept(Tok::LBrace)) {
            while (!accept(Tok::RBrace)) {
                check_bad();
                if (!at_keyword("attr")) fail(peek().loc, "expected attr");
                ErAttribute a = parse_attr(true);
                check_attr_unique(r.attributes, a, r.name);
                r.attributes.push_back(std::move(a));
            }
        }
        for (std::size_t i = 0; i < r.roles.size(); ++i)
            for (std::size_t j = i + 1; j < r.roles.size(); ++j)
                if (r.roles[i].role && r.roles[j].role &&
                    *r.roles[i].role == *r.roles[j].role)
                    duplicate(r.roles[j].loc, "role '" + *r.roles[j].role +
                                                  "' already used in '" + r.name +
                                                  "'");
        return r;
    }

    ErRole parse_role() {
        ErRole role;
        role.loc = peek().loc;
        role.entity = expect(Tok::Ident, "entity name").text;
        Token next = expect(Tok::Ident, "cardinality (one or many)");
        if (next.text != "one" && next.text != "many") {
            role.role = next.text;
            next = expect(Tok::Ident, "cardinality (one or many)");
            if (next.text != "one" && next.text != "many")
                fail(next.loc, "expected cardinality (one or many)");
        }
        role.cardinality =
            next.text == "one" ? Cardinality::One : Cardinality::Many;
        return role;
    }

    void check_roles(const ErModel& m) {
        for (const ErRelationship& r : m.relationships)
            for (const ErRole& role : r.roles) {
                bool known = false;
                for (const ErEntity& e : m.entities)
                    if (e.name == role.entity) known = true;
                if (!known)
                    diags_.push_back(Diagnostic::error(
                        Code::UnknownEntity, role.loc,
                        "relationship '" + r.name +
                            "' references undeclared entity '" + role.entity + "'"));
            }
    }
};

}  // namespace detail

inline Outcome<Model> parse_tm(std::string_view source) {
    return detail::TmParser(source).run();
}

inline Outcome<ErModel> parse_er(std::string_view source) {
    return detail::ErParser(source).run();
}

}  // namespace thimac
