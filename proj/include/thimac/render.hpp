#pragma once

#include <string>
#include <vector>

#include "metamodel.hpp"

namespace thimac {

enum class View { Static, Dynamic, Behavior };

namespace detail {

inline std::string dot_quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string stage_node_id(const std::vector<std::string>& path,
                                 StageKind kind) {
    std::string id;
    for (const auto& part : path) id += part + ".";
    id += stage_keyword(kind);
    return id;
}

inline std::string event_title(const Event& e) {
    return e.label ? e.id + ": " + *e.label : e.id;
}

class DotWriter {
public:
    std::string out;
    int depth = 0;

    void line(const std::string& s) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += s;
        out += '\n';
    }

    void thimac(const Thimac& t, std::vector<std::string>& path) {
        path.push_back(t.name);
        std::string cluster;
        for (const auto& part : path) cluster += (cluster.empty() ? "" : ".") + part;
        line("subgraph " + dot_quoted("cluster_" + cluster) + " {");
        ++depth;
        line("label=" + dot_quoted(t.name) + ";");
        for (StageKind k : t.stages)
            line(dot_quoted(stage_node_id(path, k)) +
                 " [label=" + dot_quoted(std::string(stage_title(k))) + "];");
        if (t.has_memory) {
            std::string id;
            for (const auto& part : path) id += part + ".";
            line(dot_quoted(id + "memory") +
                 " [shape=cylinder, label=\"memory\"];");
        }
        for (const Thimac& sub : t.subthimacs) thimac(sub, path);
        --depth;
        line("}");
        path.pop_back();
    }

    void edge(const StageRef& a, const StageRef& b, bool dashed) {
        line(dot_quoted(stage_node_id(a.path, a.kind)) + " -> " +
             dot_quoted(stage_node_id(b.path, b.kind)) +
             (dashed ? " [style=dashed];" : " [style=solid];"));
    }

    void event_cluster(const Event& e) {
        line("subgraph " + dot_quoted("cluster_event_" + e.id) + " {");
        ++depth;
        line("style=rounded;");
        line("label=" + dot_quoted(event_title(e)) + ";");
        for (const RegionItem& item : e.region)
            if (const auto* ref = std::get_if<StageRef>(&item))
                line(dot_quoted(stage_node_id(ref->path, ref->kind)) + ";");
        --depth;
        line("}");
    }
};

inline std::string render_structure(const Model& m, bool with_events) {
    DotWriter w;
    w.line("digraph " + dot_quoted(m.statics.name) + " {");
    ++w.depth;
    w.line("rankdir=LR;");
    w.line("node [shape=box];");
    std::vector<std::string> path;
    for (const Thimac& t : m.statics.thimacs) w.thimac(t, path);
    if (with_events)
        for (const Event& e : m.events) w.event_cluster(e);
    for (const Flow& f : m.statics.flows) w.edge(f.source, f.target, false);
    for (const Trigger& t : m.statics.triggers) w.edge(t.source, t.target, true);
    --w.depth;
    w.line("}");
    return w.out;
}

inline std::string render_behavior(const Model& m) {
    DotWriter w;
    w.line("digraph " + dot_quoted(m.statics.name) + " {");
    ++w.depth;
    w.line("rankdir=LR;");
    w.line("node [shape=box, style=rounded];");
    for (const Event& e : m.events)
        w.line(dot_quoted(e.id) + " [label=" + dot_quoted(event_title(e)) + "];");
    if (m.behavior) {
        for (const PrecedenceEdge& p : m.behavior->precedence)
            w.line(dot_quoted(p.from) + " -> " + dot_quoted(p.to) + ";");
        for (const Repeat& r : m.behavior->repeats)
            w.line(dot_quoted(r.event) + " -> " + dot_quoted(r.event) +
                   " [label=" + dot_quoted("\xC3\x97" + std::to_string(r.count)) +
                   "];");
    }
    --w.depth;
    w.line("}");
    return w.out;
}

}  // namespace detail

// Graphviz text for one view of the model.  Output is canonical: same model,
// same bytes.
inline Outcome<std::string> render(const Model& m, View view) {
    if (view != View::Static && m.events.empty())
        return Outcome<std::string>::failure(Diagnostic::error(
            Code::MissingViewData, {},
            "model declares no events; nothing to render for this view"));
    switch (view) {
        case View::Static:
            return Outcome<std::string>::success(detail::render_structure(m, false));
        case View::Dynamic:
            return Outcome<std::string>::success(detail::render_structure(m, true));
        case View::Behavior:
            return Outcome<std::string>::success(detail::render_behavior(m));
    }
    return Outcome<std::string>::failure(
        Diagnostic::error(Code::MissingViewData, {}, "unknown view"));
}

}  // namespace thimac
