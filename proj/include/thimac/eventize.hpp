#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metamodel.hpp"
#include "validate.hpp"

namespace thimac {

struct CoverageReport {
    std::vector<std::string> uncovered;  // rendered items, declaration order
    std::size_t covered = 0;
    std::size_t total = 0;               // stages + flows

    double ratio() const {
        return total == 0 ? 1.0
                          : static_cast<double>(covered) / static_cast<double>(total);
    }
};

namespace detail {

inline std::string innermost(const StageRef& r) {
    return r.path.empty() ? std::string("?") : r.path.back();
}

struct RefLess {
    bool operator()(const StageRef& a, const StageRef& b) const {
        if (a.path != b.path) return a.path < b.path;
        return a.kind < b.kind;
    }
};

using RefSet = std::set<StageRef, RefLess>;

inline RefSet region_stages(const Event& e) {
    RefSet s;
    for (const RegionItem& item : e.region)
        if (const auto* ref = std::get_if<StageRef>(&item)) s.insert(*ref);
    return s;
}

// Derives one event per maximal motion chain: the inter-machine hop plus the
// release step behind it and the receive step after it, when declared.  Flows
// into the release stage ride along as edges so the chain region covers the
// thing's whole path out of its previous resting stage.
class Eventizer {
public:
    explicit Eventizer(const Model& m) : m_(m) {}

    Model run() {
        Model out = m_;
        generate_g1(out);
        generate_g2(out);
        generate_g3(out);
        generate_g4(out);
        return out;
    }

private:
    const Model& m_;
    int counter_ = 0;

    std::string next_id() { return "E" + std::to_string(++counter_); }

    bool has_incoming(const StageRef& ref) const {
        for (const Flow& f : m_.statics.flows)
            if (f.target == ref) return true;
        for (const Trigger& t : m_.statics.triggers)
            if (t.target == ref) return true;
        return false;
    }

    std::vector<Trigger> incoming_triggers(const StageRef& ref) const {
        std::vector<Trigger> out;
        for (const Trigger& t : m_.statics.triggers)
            if (t.target == ref) out.push_back(t);
        return out;
    }

    std::vector<Flow> incoming_intra_flows(const StageRef& ref) const {
        std::vector<Flow> out;
        for (const Flow& f : m_.statics.flows)
            if (f.target == ref && f.source.path == ref.path) out.push_back(f);
        return out;
    }

    void generate_g1(Model& out) {
        for (const Thimac& t : m_.statics.thimacs) {
            if (!t.has_stage(StageKind::Create)) continue;
            StageRef ref{{t.name}, StageKind::Create, {}};
            if (has_incoming(ref)) continue;
            Event e;
            e.id = next_id();
            e.label = "There is a " + t.name;
            e.region.emplace_back(ref);
            out.events.push_back(std::move(e));
        }
    }

    void generate_g2(Model& out) {
        std::vector<Flow> seen;
        for (const Flow& f : m_.statics.flows) {
            if (f.source.path == f.target.path) continue;
            bool dup = false;
            for (const Flow& s : seen)
                if (s.source == f.source && s.target == f.target) dup = true;
            if (dup) continue;
            seen.push_back(f);

            Event e;
            e.id = next_id();
            e.label = innermost(f.source) + " moves to " + innermost(f.target);
            StageRef release{f.source.path, StageKind::Release, {}};
            for (const Flow& r : incoming_intra_flows(f.source)) {
                if (r.source.kind != StageKind::Release) continue;
                for (const Flow& q : incoming_intra_flows(r.source))
                    e.region.emplace_back(q);
                e.region.emplace_back(release);
                e.region.emplace_back(r);
            }
            e.region.emplace_back(f.source);
            e.region.emplace_back(f);
            e.region.emplace_back(f.target);
            StageRef receive{f.target.path, StageKind::Receive, {}};
            for (const Flow& w : m_.statics.flows)
                if (w.source == f.target && w.target == receive) {
                    e.region.emplace_back(w);
                    e.region.emplace_back(receive);
                    break;
                }
            out.events.push_back(std::move(e));
        }
    }

    void walk_stages(const std::vector<Thimac>& level, std::vector<std::string>& path,
                     StageKind wanted, std::vector<StageRef>& found) const {
        for (const Thimac& t : level) {
            path.push_back(t.name);
            if (t.has_stage(wanted)) found.push_back(StageRef{path, wanted, {}});
            walk_stages(t.subthimacs, path, wanted, found);
            path.pop_back();
        }
    }

    void generate_g3(Model& out) {
        std::vector<StageRef> processes;
        std::vector<std::string> path;
        walk_stages(m_.statics.thimacs, path, StageKind::Process, processes);
        for (const StageRef& p : processes) {
            Event e;
            e.id = next_id();
            e.label = innermost(p) + " processes";
            e.region.emplace_back(p);
            for (const Flow& f : incoming_intra_flows(p)) e.region.emplace_back(f);
            out.events.push_back(std::move(e));
        }
    }

    void generate_g4(Model& out) {
        std::vector<StageRef> creates;
        std::vector<std::string> path;
        walk_stages(m_.statics.thimacs, path, StageKind::Create, creates);
        for (const StageRef& c : creates) {
            std::vector<Trigger> in = incoming_triggers(c);
            if (in.empty()) continue;
            Event e;
            e.id = next_id();
            e.label = innermost(c) + " is created";
            for (const Trigger& t : in) e.region.emplace_back(t);
            e.region.emplace_back(c);
            out.events.push_back(std::move(e));
        }
    }
};

// A -> B when a static edge runs from A's region into B's.  Edges that some
// single region contains end to end are that event's own internal steps, so
// they order nothing; only genuine hand-offs between regions count.  Note
// that a surviving edge with u in A and v in B cannot have u in B or v in A,
// or it would be internal to that region.
inline BehaviorGraph precedence_over(const StaticModel& statics,
                                     const std::vector<Event>& events) {
    std::vector<RefSet> stages;
    stages.reserve(events.size());
    for (const Event& e : events) stages.push_back(region_stages(e));

    struct Edge {
        StageRef u, v;
    };
    std::vector<Edge> crossing;
    auto consider = [&](const StageRef& u, const StageRef& v) {
        for (const RefSet& s : stages)
            if (s.count(u) && s.count(v)) return;
        crossing.push_back({u, v});
    };
    for (const Flow& f : statics.flows) consider(f.source, f.target);
    for (const Trigger& t : statics.triggers) consider(t.source, t.target);

    BehaviorGraph g;
    for (std::size_t a = 0; a < events.size(); ++a)
        for (std::size_t b = 0; b < events.size(); ++b) {
            if (a == b) continue;
            for (const Edge& e : crossing)
                if (stages[a].count(e.u) && stages[b].count(e.v)) {
                    g.precedence.push_back({events[a].id, events[b].id, {}});
                    break;
                }
        }
    return g;
}

inline bool precedence_acyclic(const BehaviorGraph& g,
                               const std::vector<Event>& events) {
    std::vector<std::size_t> indeg(events.size(), 0);
    auto index = [&](const std::string& id) {
        for (std::size_t i = 0; i < events.size(); ++i)
            if (events[i].id == id) return i;
        return events.size();
    };
    for (const PrecedenceEdge& p : g.precedence) ++indeg[index(p.to)];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < events.size(); ++i)
        if (indeg[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t n = ready.back();
        ready.pop_back();
        ++seen;
        for (const PrecedenceEdge& p : g.precedence)
            if (index(p.from) == n && --indeg[index(p.to)] == 0)
                ready.push_back(index(p.to));
    }
    return seen == events.size();
}

}  // namespace detail

// Derive the event chronology of a static model.  Declared events are left
// untouched (no-op with a warning); invalid models are refused.
inline Outcome<Model> eventize(const Model& m) {
    std::vector<Diagnostic> problems = validate(m);
    if (has_errors(problems)) {
        Outcome<Model> out;
        out.diagnostics.push_back(Diagnostic::error(
            Code::NotValidated, {},
            "model does not validate; fix the errors below first"));
        for (Diagnostic& d : problems) out.diagnostics.push_back(std::move(d));
        return out;
    }
    if (!m.events.empty()) {
        Outcome<Model> out = Outcome<Model>::success(m);
        out.diagnostics.push_back(Diagnostic::warning(
            Code::EventsDeclared, {},
            "model already declares events; nothing derived"));
        return out;
    }
    detail::Eventizer ev(m);
    Model derived = ev.run();
    derived.behavior = detail::precedence_over(derived.statics, derived.events);
    if (!detail::precedence_acyclic(*derived.behavior, derived.events))
        return Outcome<Model>::failure(Diagnostic::error(
            Code::CyclicBehavior, {},
            "derived chronology is cyclic; event regions order each other "
            "both ways"));
    return Outcome<Model>::success(std::move(derived));
}

// Which static stages and flows no declared event region accounts for.
inline CoverageReport region_coverage(const Model& m) {
    CoverageReport report;
    detail::RefSet covered_stages;
    std::vector<Flow> covered_flows;
    for (const Event& e : m.events)
        for (const RegionItem& item : e.region) {
            if (const auto* s = std::get_if<StageRef>(&item))
                covered_stages.insert(*s);
            else if (const auto* f = std::get_if<Flow>(&item))
                covered_flows.push_back(*f);
        }

    StageGraph g = stage_graph(m.statics);
    for (const StageRef& node : g.nodes) {
        ++report.total;
        if (covered_stages.count(node))
            ++report.covered;
        else
            report.uncovered.push_back("stage " + node.to_string());
    }
    for (const Flow& f : m.statics.flows) {
        ++report.total;
        bool hit = false;
        for (const Flow& c : covered_flows)
            if (c.source == f.source && c.target == f.target) hit = true;
        if (hit)
            ++report.covered;
        else
            report.uncovered.push_back("flow " + f.source.to_string() + " -> " +
                                       f.target.to_string());
    }
    return report;
}

}  // namespace thimac
