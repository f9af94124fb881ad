#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thimac {

// Positions exist for reporting only; they never take part in model
// identity, so synthesized and reparsed models compare equal.
struct SourceLoc {
    int line = 0;
    int column = 0;
    friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class Severity { Error, Warning };

enum class Code {
    // frontend
    Syntax,
    DuplicateName,
    UnknownEntity,
    TemporalOnEntity,      // warning: temporal flag outside a relationship
    // flow-law and model checks
    DanglingRef,
    IllegalIntraAdjacency,
    IllegalInterFlow,
    SelfFlow,
    RegionNotSubset,
    UndeclaredEvent,
    CyclicBehavior,
    EmptyRegion,           // warning
    SameMachineTrigger,    // warning
    // operation errors
    UnsupportedArity,
    NotValidated,
    EventsDeclared,        // warning: eventize left declared events untouched
    EmptyTrace,
    MissingViewData,
};

inline std::string_view code_name(Code c) {
    switch (c) {
    case Code::Syntax: return "SYNTAX";
    case Code::DuplicateName: return "DUPLICATE_NAME";
    case Code::UnknownEntity: return "UNKNOWN_ENTITY";
    case Code::TemporalOnEntity: return "TEMPORAL_ON_ENTITY";
    case Code::DanglingRef: return "DANGLING_REF";
    case Code::IllegalIntraAdjacency: return "ILLEGAL_INTRA_ADJACENCY";
    case Code::IllegalInterFlow: return "ILLEGAL_INTER_FLOW";
    case Code::SelfFlow: return "SELF_FLOW";
    case Code::RegionNotSubset: return "REGION_NOT_SUBSET";
    case Code::UndeclaredEvent: return "UNDECLARED_EVENT";
    case Code::CyclicBehavior: return "CYCLIC_BEHAVIOR";
    case Code::EmptyRegion: return "EMPTY_REGION";
    case Code::SameMachineTrigger: return "SAME_MACHINE_TRIGGER";
    case Code::UnsupportedArity: return "UNSUPPORTED_ARITY";
    case Code::NotValidated: return "NOT_VALIDATED";
    case Code::EventsDeclared: return "EVENTS_DECLARED";
    case Code::EmptyTrace: return "EMPTY_TRACE";
    case Code::MissingViewData: return "MISSING_VIEW_DATA";
    }
    return "UNKNOWN";
}

struct Diagnostic {
    Severity severity = Severity::Error;
    Code code = Code::Syntax;
    SourceLoc loc;
    std::string message;

    static Diagnostic error(Code c, SourceLoc where, std::string msg) {
        return {Severity::Error, c, where, std::move(msg)};
    }
    static Diagnostic warning(Code c, SourceLoc where, std::string msg) {
        return {Severity::Warning, c, where, std::move(msg)};
    }
};

// "error SYNTAX at 3:7 — expected ';'"
inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out(d.severity == Severity::Error ? "error " : "warning ");
    out += code_name(d.code);
    out += " at ";
    out += std::to_string(d.loc.line);
    out += ':';
    out += std::to_string(d.loc.column);
    out += " \xE2\x80\x94 ";
    out += d.message;
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

// Result-or-diagnostics carrier used by every fallible operation.  Warnings
// may accompany a present value; ok() means a value exists and no diagnostic
// is an error.
template <class T>
struct Outcome {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value() && !has_errors(diagnostics); }
    const T& operator*() const { return *value; }
    T& operator*() { return *value; }
    const T* operator->() const { return &*value; }
    T* operator->() { return &*value; }

    static Outcome failure(Diagnostic d) {
        Outcome o;
        o.diagnostics.push_back(std::move(d));
        return o;
    }
    static Outcome success(T v) {
        Outcome o;
        o.value = std::move(v);
        return o;
    }
};

}  // namespace thimac
