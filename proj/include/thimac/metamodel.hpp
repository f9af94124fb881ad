#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "diagnostics.hpp"

namespace thimac {

// The five stages every machine is built from.  There is deliberately no
// sixth kind and no split of transfer into input/output: transfer is both
// the in and the out gate of a machine.
enum class StageKind { Create, Process, Release, Transfer, Receive };

inline constexpr StageKind kAllStageKinds[] = {
    StageKind::Create, StageKind::Process, StageKind::Release,
    StageKind::Transfer, StageKind::Receive,
};

inline std::string_view stage_keyword(StageKind k) {
    switch (k) {
    case StageKind::Create: return "create";
    case StageKind::Process: return "process";
    case StageKind::Release: return "release";
    case StageKind::Transfer: return "transfer";
    case StageKind::Receive: return "receive";
    }
    return "?";
}

inline std::string_view stage_title(StageKind k) {
    switch (k) {
    case StageKind::Create: return "Create";
    case StageKind::Process: return "Process";
    case StageKind::Release: return "Release";
    case StageKind::Transfer: return "Transfer";
    case StageKind::Receive: return "Receive";
    }
    return "?";
}

inline std::optional<StageKind> stage_from_keyword(std::string_view s) {
    for (StageKind k : kAllStageKinds)
        if (s == stage_keyword(k)) return k;
    return std::nullopt;
}

// A thimac is one ontological unit: a thing that flows and a machine that
// handles things.  Partial stage sets are legal; nesting is arbitrary.
struct Thimac {
    std::string name;
    std::vector<StageKind> stages;  // unique, declaration order
    std::vector<Thimac> subthimacs;
    bool has_memory = false;
    SourceLoc loc;

    bool has_stage(StageKind k) const {
        for (StageKind s : stages)
            if (s == k) return true;
        return false;
    }

    friend bool operator==(const Thimac&, const Thimac&) = default;
};

// Dotted path from a root thimac down to a stage: Person.create,
// University.Attends_set.receive.
struct StageRef {
    std::vector<std::string> path;  // outermost first
    StageKind kind = StageKind::Create;
    SourceLoc loc;

    std::string to_string() const {
        std::string s;
        for (const auto& p : path) {
            s += p;
            s += '.';
        }
        s += stage_keyword(kind);
        return s;
    }

    friend bool operator==(const StageRef&, const StageRef&) = default;
};

struct Flow {
    StageRef source;
    StageRef target;
    SourceLoc loc;
    friend bool operator==(const Flow&, const Flow&) = default;
};

// Dashed arrow: connects stages in a non-flow way, no kind restrictions.
struct Trigger {
    StageRef source;
    StageRef target;
    SourceLoc loc;
    friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct StaticModel {
    std::string name;
    std::vector<Thimac> thimacs;
    std::vector<Flow> flows;
    std::vector<Trigger> triggers;
    friend bool operator==(const StaticModel&, const StaticModel&) = default;
};

enum class DurationUnit { Ticks, Minutes, Hours };

inline std::string_view duration_keyword(DurationUnit u) {
    switch (u) {
    case DurationUnit::Ticks: return "ticks";
    case DurationUnit::Minutes: return "min";
    case DurationUnit::Hours: return "h";
    }
    return "?";
}

// One minute is the base tick.
struct Duration {
    std::uint64_t value = 0;
    DurationUnit unit = DurationUnit::Ticks;

    std::uint64_t ticks() const {
        return unit == DurationUnit::Hours ? value * 60 : value;
    }
    friend bool operator==(const Duration&, const Duration&) = default;
};

using RegionItem = std::variant<StageRef, Flow, Trigger>;

// An event is a region of the static model plus optional time/duration.
struct Event {
    std::string id;
    std::optional<std::string> label;
    std::vector<RegionItem> region;
    std::optional<std::string> time;
    std::optional<Duration> duration;
    SourceLoc loc;
    friend bool operator==(const Event&, const Event&) = default;
};

struct PrecedenceEdge {
    std::string from;
    std::string to;
    SourceLoc loc;
    friend bool operator==(const PrecedenceEdge&, const PrecedenceEdge&) = default;
};

struct Repeat {
    std::string event;
    std::uint64_t count = 2;
    SourceLoc loc;
    friend bool operator==(const Repeat&, const Repeat&) = default;
};

// Chronology of events: which precede which, and which repeat.  Events
// themselves live in Model.events; the graph only references their ids.
struct BehaviorGraph {
    std::vector<PrecedenceEdge> precedence;
    std::vector<Repeat> repeats;
    friend bool operator==(const BehaviorGraph&, const BehaviorGraph&) = default;
};

struct Model {
    StaticModel statics;
    std::vector<Event> events;
    std::optional<BehaviorGraph> behavior;
    friend bool operator==(const Model&, const Model&) = default;
};

// --- entity-relationship side ---

enum class Cardinality { One, Many };

inline std::string_view cardinality_keyword(Cardinality c) {
    return c == Cardinality::One ? "one" : "many";
}

struct ErAttribute {
    std::string name;
    bool is_key = false;
    bool is_temporal = false;
    SourceLoc loc;
    friend bool operator==(const ErAttribute&, const ErAttribute&) = default;
};

struct ErEntity {
    std::string name;
    std::vector<ErAttribute> attributes;
    SourceLoc loc;
    friend bool operator==(const ErEntity&, const ErEntity&) = default;
};

struct ErRole {
    std::string entity;
    std::optional<std::string> role;
    Cardinality cardinality = Cardinality::Many;
    SourceLoc loc;
    friend bool operator==(const ErRole&, const ErRole&) = default;
};

struct ErRelationship {
    std::string name;
    std::vector<ErRole> roles;  // >= 2
    std::vector<ErAttribute> attributes;
    SourceLoc loc;
    friend bool operator==(const ErRelationship&, const ErRelationship&) = default;
};

struct ErModel {
    std::string name;
    std::vector<ErEntity> entities;
    std::vector<ErRelationship> relationships;
    friend bool operator==(const ErModel&, const ErModel&) = default;
};

// --- resolution helpers ---

inline const Thimac* find_thimac(std::span<const Thimac> level,
                                 std::span<const std::string> path) {
    if (path.empty()) return nullptr;
    for (const Thimac& t : level) {
        if (t.name != path.front()) continue;
        if (path.size() == 1) return &t;
        return find_thimac(t.subthimacs, path.subspan(1));
    }
    return nullptr;
}

inline const Thimac* find_thimac(const StaticModel& m,
                                 std::span<const std::string> path) {
    return find_thimac(std::span<const Thimac>(m.thimacs), path);
}

// Owning thimac of the referenced stage, or null when the path does not
// name a declared thimac or the thimac lacks that stage.
inline const Thimac* resolve(const StaticModel& m, const StageRef& ref) {
    const Thimac* t = find_thimac(m, ref.path);
    if (!t || !t->has_stage(ref.kind)) return nullptr;
    return t;
}

// Same machine means the identical thimac: a subthimac is a different
// machine from its parent.  Unresolvable refs yield nullopt.
inline std::optional<bool> same_machine(const StaticModel& m, const StageRef& a,
                                        const StageRef& b) {
    if (!resolve(m, a) || !resolve(m, b)) return std::nullopt;
    return a.path == b.path;
}

struct StageGraph {
    struct Edge {
        StageRef source;
        StageRef target;
        bool is_trigger = false;
    };
    std::vector<StageRef> nodes;  // every declared (thimac, stage) pair
    std::vector<Edge> edges;      // flows first, then triggers, declaration order
};

namespace detail {
inline void collect_stage_nodes(const Thimac& t, std::vector<std::string>& path,
                                std::vector<StageRef>& out) {
    path.push_back(t.name);
    for (StageKind k : t.stages) out.push_back(StageRef{path, k, {}});
    for (const Thimac& sub : t.subthimacs) collect_stage_nodes(sub, path, out);
    path.pop_back();
}
}  // namespace detail

inline StageGraph stage_graph(const StaticModel& m) {
    StageGraph g;
    std::vector<std::string> path;
    for (const Thimac& t : m.thimacs) detail::collect_stage_nodes(t, path, g.nodes);
    for (const Flow& f : m.flows) g.edges.push_back({f.source, f.target, false});
    for (const Trigger& t : m.triggers) g.edges.push_back({t.source, t.target, true});
    return g;
}

}  // namespace thimac
