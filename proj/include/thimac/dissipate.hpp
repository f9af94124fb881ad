#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eventize.hpp"
#include "metamodel.hpp"
#include "validate.hpp"

namespace thimac {

enum class Strategy { FlowMembership, Reify };

namespace detail {

inline std::string capitalized(std::string name) {
    if (!name.empty() && name[0] >= 'a' && name[0] <= 'z')
        name[0] = static_cast<char>(name[0] - 'a' + 'A');
    return name;
}

inline Thimac* find_root(StaticModel& s, const std::string& name) {
    for (Thimac& t : s.thimacs)
        if (t.name == name) return &t;
    return nullptr;
}

inline bool name_taken(const std::vector<Thimac>& level, const std::string& name) {
    for (const Thimac& t : level)
        if (t.name == name) return true;
    return false;
}

inline std::string fresh_name(const std::vector<Thimac>& level, std::string base) {
    std::string name = base;
    for (int n = 2; name_taken(level, name); ++n)
        name = base + "_" + std::to_string(n);
    return name;
}

inline void add_flow(StaticModel& s, StageRef from, StageRef to) {
    for (const Flow& f : s.flows)
        if (f.source == from && f.target == to) return;
    s.flows.push_back(Flow{std::move(from), std::move(to), {}});
}

inline StageRef ref(std::vector<std::string> path, StageKind k) {
    return StageRef{std::move(path), k, {}};
}

inline Thimac attribute_thimac(const ErAttribute& a) {
    Thimac t;
    t.name = a.name;
    t.stages = {StageKind::Create};
    return t;
}

// Where a relationship's thing ends up; used afterwards to hang temporal
// attributes onto the event that realizes the relationship.
struct RelTarget {
    StageRef flow_from;  // membership: the inter-machine hop
    StageRef flow_to;
    StageRef created;    // reify: the relationship's create stage
};

// Membership reading of a binary relationship: the thing on the many side
// flows into a set kept by the one side.
inline RelTarget dissipate_membership(StaticModel& s, const ErRelationship& r,
                                      std::vector<Diagnostic>& diags) {
    if (r.roles.size() != 2) {
        diags.push_back(Diagnostic::error(
            Code::UnsupportedArity, r.loc,
            "relationship '" + r.name + "' has " +
                std::to_string(r.roles.size()) +
                " roles; the membership strategy handles binary ones only"));
        return {};
    }
    const ErRole* from = &r.roles[0];
    const ErRole* to = &r.roles[1];
    if (from->cardinality == Cardinality::One &&
        to->cardinality == Cardinality::Many)
        std::swap(from, to);  // direction runs many -> one; ties stay declared

    Thimac* holder = find_root(s, to->entity);
    std::string set_name = fresh_name(holder->subthimacs, r.name + "_set");
    Thimac set;
    set.name = set_name;
    set.stages = {StageKind::Transfer, StageKind::Receive};
    holder->subthimacs.push_back(std::move(set));

    add_flow(s, ref({from->entity}, StageKind::Release),
             ref({from->entity}, StageKind::Transfer));
    add_flow(s, ref({from->entity}, StageKind::Transfer),
             ref({to->entity, set_name}, StageKind::Transfer));
    add_flow(s, ref({to->entity, set_name}, StageKind::Transfer),
             ref({to->entity, set_name}, StageKind::Receive));
    return {ref({from->entity}, StageKind::Transfer),
            ref({to->entity, set_name}, StageKind::Transfer),
            {}};
}

// Reified reading: the relationship becomes a machine of its own that the
// participants flow into, optionally through a named role machine, and that
// creates the relationship thing once its inputs are processed.
inline RelTarget dissipate_reify(StaticModel& s, const ErRelationship& r) {
    std::string rel_name = name_taken(s.thimacs, r.name) ? r.name + "_rel" : r.name;
    Thimac rel;
    rel.name = rel_name;
    rel.stages = {StageKind::Create, StageKind::Process, StageKind::Receive,
                  StageKind::Transfer};
    for (const ErAttribute& a : r.attributes)
        if (!a.is_temporal) rel.subthimacs.push_back(attribute_thimac(a));
    s.thimacs.push_back(std::move(rel));

    for (const ErRole& role : r.roles) {
        if (role.role) {
            std::string base = capitalized(*role.role);
            if (name_taken(s.thimacs, base)) base = r.name + "_" + base;
            std::string role_name = fresh_name(s.thimacs, base);
            Thimac rt;
            rt.name = role_name;
            rt.stages = {StageKind::Transfer, StageKind::Receive,
                         StageKind::Release};
            s.thimacs.push_back(std::move(rt));
            add_flow(s, ref({role.entity}, StageKind::Transfer),
                     ref({role_name}, StageKind::Transfer));
            add_flow(s, ref({role_name}, StageKind::Transfer),
                     ref({role_name}, StageKind::Receive));
            add_flow(s, ref({role_name}, StageKind::Receive),
                     ref({role_name}, StageKind::Release));
            add_flow(s, ref({role_name}, StageKind::Release),
                     ref({role_name}, StageKind::Transfer));
            add_flow(s, ref({role_name}, StageKind::Transfer),
                     ref({rel_name}, StageKind::Transfer));
        } else {
            add_flow(s, ref({role.entity}, StageKind::Transfer),
                     ref({rel_name}, StageKind::Transfer));
        }
    }
    add_flow(s, ref({rel_name}, StageKind::Transfer),
             ref({rel_name}, StageKind::Receive));
    add_flow(s, ref({rel_name}, StageKind::Receive),
             ref({rel_name}, StageKind::Process));
    s.triggers.push_back(Trigger{ref({rel_name}, StageKind::Process),
                                 ref({rel_name}, StageKind::Create),
                                 {}});
    return {{}, {}, ref({rel_name}, StageKind::Create)};
}

inline Event* event_covering_flow(Model& m, const StageRef& from,
                                  const StageRef& to) {
    for (Event& e : m.events)
        for (const RegionItem& item : e.region)
            if (const auto* f = std::get_if<Flow>(&item))
                if (f->source == from && f->target == to) return &e;
    return nullptr;
}

inline Event* event_covering_stage(Model& m, const StageRef& ref) {
    for (Event& e : m.events)
        for (const RegionItem& item : e.region)
            if (const auto* s = std::get_if<StageRef>(&item))
                if (*s == ref) return &e;
    return nullptr;
}

inline void attach_time(Event* e, const std::string& name) {
    if (!e) return;
    if (e->time)
        *e->time += ", " + name;
    else
        e->time = name;
}

}  // namespace detail

// Turn an entity-relationship model into flows and events.  Statics follow
// the chosen strategy; the chronology comes from the eventizer; temporal
// relationship attributes never appear statically and instead annotate the
// event that realizes the relationship.
inline Outcome<Model> dissipate(const ErModel& er, Strategy strategy) {
    Outcome<Model> out;
    Model m;
    m.statics.name = er.name;

    for (const ErEntity& e : er.entities) {
        Thimac t;
        t.name = e.name;
        t.stages = {StageKind::Create, StageKind::Release, StageKind::Transfer};
        for (const ErAttribute& a : e.attributes)
            t.subthimacs.push_back(detail::attribute_thimac(a));
        m.statics.thimacs.push_back(std::move(t));
    }

    std::vector<detail::RelTarget> targets;
    for (const ErRelationship& r : er.relationships) {
        if (strategy == Strategy::FlowMembership)
            targets.push_back(
                detail::dissipate_membership(m.statics, r, out.diagnostics));
        else
            targets.push_back(detail::dissipate_reify(m.statics, r));
    }
    if (has_errors(out.diagnostics)) return out;

    Outcome<Model> derived = eventize(m);
    if (!derived.ok()) return derived;
    m = std::move(*derived.value);

    for (std::size_t i = 0; i < er.relationships.size(); ++i) {
        const ErRelationship& r = er.relationships[i];
        for (const ErAttribute& a : r.attributes) {
            if (!a.is_temporal) continue;
            Event* e = strategy == Strategy::FlowMembership
                           ? detail::event_covering_flow(m, targets[i].flow_from,
                                                         targets[i].flow_to)
                           : detail::event_covering_stage(m, targets[i].created);
            detail::attach_time(e, a.name);
        }
    }

    out.value = std::move(m);
    return out;
}

// Inverse sketch: read entities and relationships back off the flow
// structure.  Each inter-machine hop between two distinct roots becomes a
// relationship named after the thimac it lands in; create-only leaf
// subthimacs of the participating roots read back as attributes.
inline Outcome<ErModel> shorthand(const Model& m) {
    std::vector<Diagnostic> problems = validate(m);
    if (has_errors(problems)) {
        Outcome<ErModel> out;
        out.diagnostics.push_back(Diagnostic::error(
            Code::NotValidated, {},
            "model does not validate; fix the errors below first"));
        for (Diagnostic& d : problems) out.diagnostics.push_back(std::move(d));
        return out;
    }

    struct Chain {
        std::string source_root;
        std::string target_root;
        std::string target_thimac;
    };
    std::vector<Chain> chains;
    std::vector<std::pair<StageRef, StageRef>> seen;
    for (const Flow& f : m.statics.flows) {
        if (f.source.path == f.target.path) continue;
        bool dup = false;
        for (const auto& s : seen)
            if (s.first == f.source && s.second == f.target) dup = true;
        if (dup) continue;
        seen.emplace_back(f.source, f.target);
        if (f.source.path.front() == f.target.path.front()) continue;
        chains.push_back(
            {f.source.path.front(), f.target.path.front(), f.target.path.back()});
    }

    ErModel er;
    er.name = m.statics.name;
    for (const Thimac& t : m.statics.thimacs) {
        bool participates = chains.empty();
        for (const Chain& c : chains)
            if (c.source_root == t.name || c.target_root == t.name)
                participates = true;
        if (!participates) continue;
        ErEntity e;
        e.name = t.name;
        for (const Thimac& sub : t.subthimacs)
            if (sub.subthimacs.empty() && sub.stages.size() == 1 &&
                sub.stages[0] == StageKind::Create)
                e.attributes.push_back(ErAttribute{sub.name, false, false, {}});
        er.entities.push_back(std::move(e));
    }

    for (const Chain& c : chains) {
        std::string base = c.target_thimac;
        std::string name = base;
        for (int n = 2;; ++n) {
            bool taken = false;
            for (const ErRelationship& r : er.relationships)
                if (r.name == name) taken = true;
            if (!taken) break;
            name = base + "_" + std::to_string(n);
        }
        ErRelationship r;
        r.name = std::move(name);
        r.roles.push_back(
            ErRole{c.source_root, std::nullopt, Cardinality::Many, {}});
        r.roles.push_back(ErRole{c.target_root, std::nullopt, Cardinality::One, {}});
        er.relationships.push_back(std::move(r));
    }
    return Outcome<ErModel>::success(std::move(er));
}

}  // namespace thimac
