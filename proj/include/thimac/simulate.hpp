#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "metamodel.hpp"

namespace thimac {

struct Firing {
    std::string event;
    std::uint64_t iteration = 1;  // 1-based
    std::uint64_t start = 0;
    std::uint64_t end = 0;        // start + duration; equal for zero-length events
};

struct Trace {
    std::string model;
    std::vector<Firing> firings;
};

// Exact share of simulated time, kept as a ratio of tick sums.
struct TimeShare {
    std::uint64_t part = 0;
    std::uint64_t total = 1;

    double value() const {
        return static_cast<double>(part) / static_cast<double>(total);
    }

    // Four decimal places, round half up: 120/480 -> "0.2500".
    std::string to_string() const {
        unsigned __int128 scaled =
            (static_cast<unsigned __int128>(part) * 20000 + total) / (2 * total);
        auto whole = static_cast<std::uint64_t>(scaled / 10000);
        auto frac = static_cast<std::uint64_t>(scaled % 10000);
        std::string f = std::to_string(frac);
        return std::to_string(whole) + "." + std::string(4 - f.size(), '0') + f;
    }
};

// Deterministic schedule of the declared chronology: events fire in a
// topological order with declaration order breaking ties, each one as many
// consecutive iterations as its repeat count, starting once every
// predecessor has fully finished.
inline Outcome<Trace> simulate(
    const Model& m, const std::map<std::string, std::uint64_t>& overrides = {}) {
    Outcome<Trace> out;
    auto declared = [&](const std::string& id) {
        for (const Event& e : m.events)
            if (e.id == id) return true;
        return false;
    };
    for (const auto& [id, count] : overrides) {
        if (!declared(id))
            out.diagnostics.push_back(Diagnostic::error(
                Code::UndeclaredEvent, {},
                "repeat override names unknown event '" + id + "'"));
        else if (count == 0)
            out.diagnostics.push_back(Diagnostic::error(
                Code::UndeclaredEvent, {},
                "repeat override for '" + id + "' must be positive"));
    }
    if (m.behavior)
        for (const PrecedenceEdge& p : m.behavior->precedence)
            for (const std::string& id : {p.from, p.to})
                if (!declared(id))
                    out.diagnostics.push_back(Diagnostic::error(
                        Code::UndeclaredEvent, p.loc,
                        "behavior references undeclared event '" + id + "'"));
    if (has_errors(out.diagnostics)) return out;

    std::size_t n = m.events.size();
    auto index = [&](const std::string& id) {
        for (std::size_t i = 0; i < n; ++i)
            if (m.events[i].id == id) return i;
        return n;
    };

    std::vector<std::uint64_t> repeats(n, 1);
    if (m.behavior)
        for (const Repeat& r : m.behavior->repeats) repeats[index(r.event)] = r.count;
    for (const auto& [id, count] : overrides) repeats[index(id)] = count;

    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> indeg(n, 0);
    if (m.behavior)
        for (const PrecedenceEdge& p : m.behavior->precedence) {
            preds[index(p.to)].push_back(index(p.from));
            ++indeg[index(p.to)];
        }

    Trace trace;
    trace.model = m.statics.name;
    std::vector<bool> fired(n, false);
    std::vector<std::uint64_t> final_end(n, 0);
    for (std::size_t done = 0; done < n; ++done) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!fired[i] && indeg[i] == 0) {
                pick = i;
                break;
            }
        if (pick == n) {
            out.diagnostics.push_back(Diagnostic::error(
                Code::CyclicBehavior, {},
                "behavior precedence forms a cycle; nothing can fire"));
            return out;
        }
        fired[pick] = true;
        std::uint64_t start = 0;
        for (std::size_t p : preds[pick])
            if (final_end[p] > start) start = final_end[p];
        std::uint64_t ticks =
            m.events[pick].duration ? m.events[pick].duration->ticks() : 1;
        for (std::uint64_t it = 1; it <= repeats[pick]; ++it) {
            trace.firings.push_back(
                Firing{m.events[pick].id, it, start, start + ticks});
            start += ticks;
        }
        final_end[pick] = start;
        if (m.behavior)
            for (const PrecedenceEdge& p : m.behavior->precedence)
                if (index(p.from) == pick) --indeg[index(p.to)];
    }
    out.value = std::move(trace);
    return out;
}

// Fraction of all simulated time spent in the given events.  Zero-width
// firings weigh nothing; they dilute neither side of the ratio.
inline Outcome<TimeShare> time_share(const Trace& trace,
                                     const std::set<std::string>& group) {
    if (trace.firings.empty())
        return Outcome<TimeShare>::failure(Diagnostic::error(
            Code::EmptyTrace, {}, "trace contains no firings"));
    std::set<std::string> present;
    for (const Firing& f : trace.firings) present.insert(f.event);
    for (const std::string& id : group)
        if (!present.count(id))
            return Outcome<TimeShare>::failure(Diagnostic::error(
                Code::UndeclaredEvent, {},
                "event '" + id + "' does not appear in the trace"));

    TimeShare share;
    share.part = 0;
    share.total = 0;
    for (const Firing& f : trace.firings) {
        std::uint64_t width = f.end - f.start;
        share.total += width;
        if (group.count(f.event)) share.part += width;
    }
    if (share.total == 0)
        return Outcome<TimeShare>::failure(Diagnostic::error(
            Code::EmptyTrace, {}, "total simulated time is zero"));
    return Outcome<TimeShare>::success(share);
}

}  // namespace thimac
