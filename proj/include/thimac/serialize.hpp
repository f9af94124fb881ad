#pragma once

#include <string>
#include <variant>

#include "metamodel.hpp"

namespace thimac {

namespace detail {

inline void quote_into(std::string& out, const std::string& text) {
    out += '"';
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
}

struct TmWriter {
    std::string out;
    int depth = 0;

    void line(const std::string& text) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += text;
        out += '\n';
    }

    void thimac(const Thimac& t) {
        line("thimac " + t.name + (t.has_memory ? " memory {" : " {"));
        ++depth;
        for (StageKind k : t.stages)
            line("stage " + std::string(stage_keyword(k)) + ";");
        for (const Thimac& sub : t.subthimacs) thimac(sub);
        --depth;
        line("}");
    }

    std::string edge(const char* kw, const StageRef& a, const StageRef& b) {
        return std::string(kw) + " " + a.to_string() + " -> " + b.to_string() + ";";
    }

    void event(const Event& e) {
        std::string head = "event " + e.id;
        if (e.label) {
            head += ' ';
            quote_into(head, *e.label);
        }
        line(head + " {");
        ++depth;
        line("region {");
        ++depth;
        for (const RegionItem& item : e.region) {
            if (const auto* s = std::get_if<StageRef>(&item))
                line(s->to_string() + ";");
            else if (const auto* f = std::get_if<Flow>(&item))
                line(edge("flow", f->source, f->target));
            else if (const auto* t = std::get_if<Trigger>(&item))
                line(edge("trigger", t->source, t->target));
        }
        --depth;
        line("}");
        if (e.time) {
            std::string t = "time ";
            quote_into(t, *e.time);
            line(t + ";");
        }
        if (e.duration)
            line("duration " + std::to_string(e.duration->value) + " " +
                 std::string(duration_keyword(e.duration->unit)) + ";");
        --depth;
        line("}");
    }
};

}  // namespace detail

// Canonical form: 2-space indent, declaration order, explicit repeat counts.
// parse_tm(serialize_tm(m)) reproduces m structurally.
inline std::string serialize_tm(const Model& m) {
    detail::TmWriter w;
    w.line("model " + m.statics.name + " {");
    ++w.depth;
    for (const Thimac& t : m.statics.thimacs) w.thimac(t);
    for (const Flow& f : m.statics.flows)
        w.line(w.edge("flow", f.source, f.target));
    for (const Trigger& t : m.statics.triggers)
        w.line(w.edge("trigger", t.source, t.target));
    for (const Event& e : m.events) w.event(e);
    if (m.behavior) {
        w.line("behavior {");
        ++w.depth;
        for (const PrecedenceEdge& p : m.behavior->precedence)
            w.line(p.from + " -> " + p.to + ";");
        for (const Repeat& r : m.behavior->repeats)
            w.line("repeat " + r.event + " " + std::to_string(r.count) + ";");
        --w.depth;
        w.line("}");
    }
    --w.depth;
    w.line("}");
    return w.out;
}

inline std::string serialize_er(const ErModel& m) {
    detail::TmWriter w;
    auto attrs = [&](const std::vector<ErAttribute>& list) {
        ++w.depth;
        for (const ErAttribute& a : list) {
            std::string s = "attr " + a.name;
            if (a.is_key) s += " key";
            if (a.is_temporal) s += " temporal";
            w.line(s + ";");
        }
        --w.depth;
    };
    w.line("erd " + m.name + " {");
    ++w.depth;
    for (const ErEntity& e : m.entities) {
        if (e.attributes.empty()) {
            w.line("entity " + e.name + ";");
            continue;
        }
        w.line("entity " + e.name + " {");
        attrs(e.attributes);
        w.line("}");
    }
    for (const ErRelationship& r : m.relationships) {
        std::string head = "relationship " + r.name + " (";
        for (std::size_t i = 0; i < r.roles.size(); ++i) {
            const ErRole& role = r.roles[i];
            if (i) head += ", ";
            head += role.entity;
            if (role.role) head += " " + *role.role;
            head += " ";
            head += cardinality_keyword(role.cardinality);
        }
        head += ")";
        if (r.attributes.empty()) {
            w.line(head);
        } else {
            w.line(head + " {");
            attrs(r.attributes);
            w.line("}");
        }
    }
    --w.depth;
    w.line("}");
    return w.out;
}

}  // namespace thimac
