#pragma once

#include <string>

#include <json.hpp>

#include "metamodel.hpp"
#include "simulate.hpp"

namespace thimac {

using Json = nlohmann::ordered_json;

inline Json trace_to_json(const Trace& t) {
    Json j;
    j["model"] = t.model;
    j["firings"] = Json::array();
    for (const Firing& f : t.firings) {
        Json jf;
        jf["event"] = f.event;
        jf["iteration"] = f.iteration;
        jf["start"] = f.start;
        jf["end"] = f.end;
        j["firings"].push_back(jf);
    }
    return j;
}

inline Outcome<Trace> trace_from_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    auto bad = [](const std::string& why) {
        return Outcome<Trace>::failure(
            Diagnostic::error(Code::Syntax, {}, "trace: " + why));
    };
    if (j.is_discarded()) return bad("input is not valid JSON");
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string() ||
        !j.contains("firings") || !j["firings"].is_array())
        return bad("expected an object with 'model' and 'firings'");
    Trace t;
    t.model = j["model"].get<std::string>();
    for (const Json& jf : j["firings"]) {
        if (!jf.is_object() || !jf.contains("event") || !jf["event"].is_string() ||
            !jf.contains("iteration") || !jf["iteration"].is_number_unsigned() ||
            !jf.contains("start") || !jf["start"].is_number_unsigned() ||
            !jf.contains("end") || !jf["end"].is_number_unsigned())
            return bad("each firing needs event, iteration, start, end");
        Firing f;
        f.event = jf["event"].get<std::string>();
        f.iteration = jf["iteration"].get<std::uint64_t>();
        f.start = jf["start"].get<std::uint64_t>();
        f.end = jf["end"].get<std::uint64_t>();
        if (f.end < f.start) return bad("firing ends before it starts");
        t.firings.push_back(std::move(f));
    }
    return Outcome<Trace>::success(std::move(t));
}

namespace detail {

inline Json ref_json(const StageRef& r) { return r.to_string(); }

inline Json thimac_json(const Thimac& t) {
    Json j;
    j["name"] = t.name;
    j["memory"] = t.has_memory;
    j["stages"] = Json::array();
    for (StageKind k : t.stages) j["stages"].push_back(std::string(stage_keyword(k)));
    j["subthimacs"] = Json::array();
    for (const Thimac& sub : t.subthimacs) j["subthimacs"].push_back(thimac_json(sub));
    return j;
}

inline Json edge_json(const StageRef& a, const StageRef& b) {
    Json j;
    j["source"] = ref_json(a);
    j["target"] = ref_json(b);
    return j;
}

inline Json event_json(const Event& e) {
    Json j;
    j["id"] = e.id;
    j["label"] = e.label ? Json(*e.label) : Json(nullptr);
    j["region"] = Json::array();
    for (const RegionItem& item : e.region) {
        Json ji;
        if (const auto* ref = std::get_if<StageRef>(&item)) {
            ji["kind"] = "stage";
            ji["ref"] = ref_json(*ref);
        } else if (const auto* f = std::get_if<Flow>(&item)) {
            ji["kind"] = "flow";
            ji["source"] = ref_json(f->source);
            ji["target"] = ref_json(f->target);
        } else {
            const auto& tr = std::get<Trigger>(item);
            ji["kind"] = "trigger";
            ji["source"] = ref_json(tr.source);
            ji["target"] = ref_json(tr.target);
        }
        j["region"].push_back(ji);
    }
    j["time"] = e.time ? Json(*e.time) : Json(nullptr);
    if (e.duration) {
        Json jd;
        jd["value"] = e.duration->value;
        jd["unit"] = std::string(duration_keyword(e.duration->unit));
        j["duration"] = jd;
    } else {
        j["duration"] = nullptr;
    }
    return j;
}

}  // namespace detail

inline Json model_to_json(const Model& m) {
    Json j;
    j["model"] = m.statics.name;
    j["thimacs"] = Json::array();
    for (const Thimac& t : m.statics.thimacs)
        j["thimacs"].push_back(detail::thimac_json(t));
    j["flows"] = Json::array();
    for (const Flow& f : m.statics.flows)
        j["flows"].push_back(detail::edge_json(f.source, f.target));
    j["triggers"] = Json::array();
    for (const Trigger& t : m.statics.triggers)
        j["triggers"].push_back(detail::edge_json(t.source, t.target));
    j["events"] = Json::array();
    for (const Event& e : m.events) j["events"].push_back(detail::event_json(e));
    if (m.behavior) {
        Json jb;
        jb["precedence"] = Json::array();
        for (const PrecedenceEdge& p : m.behavior->precedence) {
            Json jp;
            jp["from"] = p.from;
            jp["to"] = p.to;
            jb["precedence"].push_back(jp);
        }
        jb["repeats"] = Json::array();
        for (const Repeat& r : m.behavior->repeats) {
            Json jr;
            jr["event"] = r.event;
            jr["count"] = r.count;
            jb["repeats"].push_back(jr);
        }
        j["behavior"] = jb;
    } else {
        j["behavior"] = nullptr;
    }
    return j;
}

inline Json er_to_json(const ErModel& er) {
    auto attrs = [](const std::vector<ErAttribute>& list) {
        Json j = Json::array();
        for (const ErAttribute& a : list) {
            Json ja;
            ja["name"] = a.name;
            ja["key"] = a.is_key;
            ja["temporal"] = a.is_temporal;
            j.push_back(ja);
        }
        return j;
    };
    Json j;
    j["erd"] = er.name;
    j["entities"] = Json::array();
    for (const ErEntity& e : er.entities) {
        Json je;
        je["name"] = e.name;
        je["attributes"] = attrs(e.attributes);
        j["entities"].push_back(je);
    }
    j["relationships"] = Json::array();
    for (const ErRelationship& r : er.relationships) {
        Json jr;
        jr["name"] = r.name;
        jr["roles"] = Json::array();
        for (const ErRole& role : r.roles) {
            Json jo;
            jo["entity"] = role.entity;
            jo["role"] = role.role ? Json(*role.role) : Json(nullptr);
            jo["cardinality"] = role.cardinality == Cardinality::One ? "one" : "many";
            jr["roles"].push_back(jo);
        }
        jr["attributes"] = attrs(r.attributes);
        j["relationships"].push_back(jr);
    }
    return j;
}

}  // namespace thimac
