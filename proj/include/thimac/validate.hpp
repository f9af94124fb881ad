#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "metamodel.hpp"

namespace thimac {

// Legal flow adjacency inside one machine.  Directed and exhaustive; note
// the absence of Process -> Create: processing may only *trigger* creation.
inline bool intra_flow_allowed(StageKind from, StageKind to) {
    switch (from) {
    case StageKind::Create:
        return to == StageKind::Process || to == StageKind::Release;
    case StageKind::Process: return to == StageKind::Release;
    case StageKind::Receive:
        return to == StageKind::Process || to == StageKind::Release;
    case StageKind::Release: return to == StageKind::Transfer;
    case StageKind::Transfer: return to == StageKind::Receive;
    }
    return false;
}

namespace detail {

class Validator {
public:
    explicit Validator(const Model& m) : m_(m) {}

    std::vector<Diagnostic> run() {
        for (const Flow& f : m_.statics.flows) check_flow(f);
        for (const Trigger& t : m_.statics.triggers) check_trigger(t);
        for (const Event& e : m_.events) check_event(e);
        if (m_.behavior) check_behavior(*m_.behavior);
        sort_diags();
        return std::move(diags_);
    }

private:
    const Model& m_;
    std::vector<Diagnostic> diags_;

    void error(Code c, SourceLoc at, std::string msg) {
        diags_.push_back(Diagnostic::error(c, at, std::move(msg)));
    }
    void warning(Code c, SourceLoc at, std::string msg) {
        diags_.push_back(Diagnostic::warning(c, at, std::move(msg)));
    }

    // True when both endpoints name declared stages; otherwise reports
    // DANGLING_REF and the caller skips the adjacency checks for this edge.
    bool endpoints_resolve(const StageRef& src, const StageRef& dst) {
        bool ok = true;
        if (!resolve(m_.statics, src)) {
            error(Code::DanglingRef, src.loc,
                  "'" + src.to_string() + "' does not name a declared stage");
            ok = false;
        }
        if (!resolve(m_.statics, dst)) {
            error(Code::DanglingRef, dst.loc,
                  "'" + dst.to_string() + "' does not name a declared stage");
            ok = false;
        }
        return ok;
    }

    void check_flow(const Flow& f) {
        if (f.source == f.target) {
            error(Code::SelfFlow, f.loc,
                  "flow from '" + f.source.to_string() + "' to itself");
            return;
        }
        if (!endpoints_resolve(f.source, f.target)) return;
        if (f.source.path == f.target.path) {
            if (!intra_flow_allowed(f.source.kind, f.target.kind))
                error(Code::IllegalIntraAdjacency, f.loc,
                      "flow " + std::string(stage_keyword(f.source.kind)) +
                          " -> " + std::string(stage_keyword(f.target.kind)) +
                          " is not allowed within a machine");
        } else {
            // Crossing any machine boundary, including into a subthimac.
            if (f.source.kind != StageKind::Transfer ||
                f.target.kind != StageKind::Transfer)
                error(Code::IllegalInterFlow, f.loc,
                      "flow between machines must connect transfer to transfer, "
                      "got '" +
                          f.source.to_string() + "' -> '" + f.target.to_string() +
                          "'");
        }
    }

    void check_trigger(const Trigger& t) {
        if (t.source == t.target) {
            error(Code::SelfFlow, t.loc,
                  "trigger from '" + t.source.to_string() + "' to itself");
            return;
        }
        if (!endpoints_resolve(t.source, t.target)) return;
        if (t.source.path == t.target.path)
            warning(Code::SameMachineTrigger, t.loc,
                    "trigger '" + t.source.to_string() + "' -> '" +
                        t.target.to_string() + "' stays inside one machine");
    }

    bool flow_declared(const Flow& f) const {
        for (const Flow& g : m_.statics.flows)
            if (g.source == f.source && g.target == f.target) return true;
        return false;
    }

    bool trigger_declared(const Trigger& t) const {
        for (const Trigger& g : m_.statics.triggers)
            if (g.source == t.source && g.target == t.target) return true;
        return false;
    }

    void check_event(const Event& e) {
        if (e.region.empty())
            warning(Code::EmptyRegion, e.loc,
                    "event '" + e.id + "' has an empty region");
        for (const RegionItem& item : e.region) {
            if (const auto* s = std::get_if<StageRef>(&item)) {
                if (!resolve(m_.statics, *s))
                    error(Code::DanglingRef, s->loc,
                          "'" + s->to_string() + "' does not name a declared stage");
            } else if (const auto* f = std::get_if<Flow>(&item)) {
                if (!endpoints_resolve(f->source, f->target)) continue;
                if (!flow_declared(*f))
                    error(Code::RegionNotSubset, f->loc,
                          "event '" + e.id + "' region names flow '" +
                              f->source.to_string() + "' -> '" +
                              f->target.to_string() +
                              "' which the static model does not declare");
            } else if (const auto* t = std::get_if<Trigger>(&item)) {
                if (!endpoints_resolve(t->source, t->target)) continue;
                if (!trigger_declared(*t))
                    error(Code::RegionNotSubset, t->loc,
                          "event '" + e.id + "' region names trigger '" +
                              t->source.to_string() + "' -> '" +
                              t->target.to_string() +
                              "' which the static model does not declare");
            }
        }
    }

    bool event_declared(const std::string& id) const {
        for (const Event& e : m_.events)
            if (e.id == id) return true;
        return false;
    }

    void check_behavior(const BehaviorGraph& g) {
        for (const PrecedenceEdge& p : g.precedence) {
            if (!event_declared(p.from))
                error(Code::UndeclaredEvent, p.loc,
                      "behavior references undeclared event '" + p.from + "'");
            if (!event_declared(p.to))
                error(Code::UndeclaredEvent, p.loc,
                      "behavior references undeclared event '" + p.to + "'");
        }
        for (const Repeat& r : g.repeats)
            if (!event_declared(r.event))
                error(Code::UndeclaredEvent, r.loc,
                      "repeat references undeclared event '" + r.event + "'");
        report_cycles(g);
    }

    // One CYCLIC_BEHAVIOR per cycle found, located at the first declared edge
    // on it, with the cycle spelled out in declaration order.
    void report_cycles(const BehaviorGraph& g) {
        std::map<std::string, std::vector<const PrecedenceEdge*>> next;
        for (const PrecedenceEdge& p : g.precedence)
            if (event_declared(p.from) && event_declared(p.to))
                next[p.from].push_back(&p);

        std::set<std::string> done, active;
        std::vector<const PrecedenceEdge*> stack;
        bool reported = false;

        auto dfs = [&](auto&& self, const std::string& node) -> void {
            if (reported) return;
            active.insert(node);
            for (const PrecedenceEdge* p : next[node]) {
                if (reported) return;
                if (active.count(p->to)) {
                    std::string path = p->to;
                    SourceLoc at = p->loc;
                    std::size_t start = 0;
                    for (std::size_t i = 0; i < stack.size(); ++i)
                        if (stack[i]->from == p->to) start = i;
                    for (std::size_t i = start; i < stack.size(); ++i) {
                        path += " -> " + stack[i]->to;
                        if (stack[i]->loc.line < at.line ||
                            (stack[i]->loc.line == at.line &&
                             stack[i]->loc.column < at.column))
                            at = stack[i]->loc;
                    }
                    path += " -> " + p->to;
                    error(Code::CyclicBehavior, at,
                          "behavior precedence forms a cycle: " + path);
                    reported = true;
                    return;
                }
                if (done.count(p->to)) continue;
                stack.push_back(p);
                self(self, p->to);
                stack.pop_back();
            }
            active.erase(node);
            done.insert(node);
        };
        for (const Event& e : m_.events) {
            if (reported) break;
            if (!done.count(e.id)) dfs(dfs, e.id);
        }
    }

    void sort_diags() {
        std::stable_sort(diags_.begin(), diags_.end(),
                         [](const Diagnostic& a, const Diagnostic& b) {
                             if (a.loc.line != b.loc.line)
                                 return a.loc.line < b.loc.line;
                             if (a.loc.column != b.loc.column)
                                 return a.loc.column < b.loc.column;
                             return code_name(a.code) < code_name(b.code);
                         });
    }
};

}  // namespace detail

// Full model check: every diagnostic the model deserves, sorted by source
// location then code.  Warnings do not make a model invalid.
inline std::vector<Diagnostic> validate(const Model& m) {
    return detail::Validator(m).run();
}

}  // namespace thimac
