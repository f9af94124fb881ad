#include <catch2/catch_amalgamated.hpp>

#include <thimac/thimac.hpp>

#include "test_support.hpp"

using namespace thimac;

namespace {

std::vector<Diagnostic> check(const std::string& source) {
    auto m = parse_tm(source);
    REQUIRE(m.ok());
    return validate(*m);
}

int count_code(const std::vector<Diagnostic>& diags, Code code) {
    int n = 0;
    for (const auto& d : diags)
        if (d.code == code) ++n;
    return n;
}

}  // namespace

TEST_CASE("intra-machine adjacency table") {
    using K = StageKind;
    // the seven legal pairs
    for (auto [a, b] : {std::pair{K::Create, K::Process},
                        {K::Create, K::Release},
                        {K::Process, K::Release},
                        {K::Receive, K::Process},
                        {K::Receive, K::Release},
                        {K::Release, K::Transfer},
                        {K::Transfer, K::Receive}})
        REQUIRE(intra_flow_allowed(a, b));
    int allowed = 0;
    for (K a : kAllStageKinds)
        for (K b : kAllStageKinds)
            if (intra_flow_allowed(a, b)) ++allowed;
    REQUIRE(allowed == 7);
    // processing may only trigger creation, never flow into it
    REQUIRE_FALSE(intra_flow_allowed(K::Process, K::Create));
}

TEST_CASE("dangling references") {
    auto diags = check(
        "model M { thimac A { stage create; stage release; }"
        " flow A.create -> B.release; }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::DanglingRef);
    REQUIRE(diags[0].severity == Severity::Error);

    // a declared thimac missing the named stage also dangles
    auto missing_stage =
        check("model M { thimac A { stage create; } flow A.create -> A.release; }");
    REQUIRE(missing_stage.size() == 1);
    REQUIRE(missing_stage[0].code == Code::DanglingRef);

    // both endpoints dangling: one report each, nothing else
    auto both = check("model M { flow A.create -> B.release; }");
    REQUIRE(both.size() == 2);
    REQUIRE(count_code(both, Code::DanglingRef) == 2);
}

TEST_CASE("illegal intra-machine adjacency") {
    auto diags = check(
        "model M { thimac A { stage create; stage release; }"
        " flow A.release -> A.create; }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::IllegalIntraAdjacency);

    auto process_create = check(
        "model M { thimac A { stage create; stage process; }"
        " flow A.process -> A.create; }");
    REQUIRE(process_create.size() == 1);
    REQUIRE(process_create[0].code == Code::IllegalIntraAdjacency);

    // the same hop as a trigger is legal (only a style warning)
    auto trig = check(
        "model M { thimac A { stage create; stage process; }"
        " trigger A.process -> A.create; }");
    REQUIRE(count_code(trig, Code::IllegalIntraAdjacency) == 0);
}

TEST_CASE("inter-machine flows must be transfer to transfer") {
    auto diags = check(
        "model M { thimac A { stage release; } thimac B { stage transfer; }"
        " flow A.release -> B.transfer; }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::IllegalInterFlow);

    // parent and subthimac are distinct machines
    auto nested = check(
        "model M { thimac A { stage create; thimac S { stage create; } }"
        " flow A.create -> A.S.create; }");
    REQUIRE(nested.size() == 1);
    REQUIRE(nested[0].code == Code::IllegalInterFlow);

    auto legal = check(
        "model M { thimac A { stage transfer; } thimac B { stage transfer; }"
        " flow A.transfer -> B.transfer; }");
    REQUIRE(legal.empty());
}

TEST_CASE("self flows report once") {
    auto diags = check(
        "model M { thimac A { stage create; } flow A.create -> A.create; }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::SelfFlow);

    auto trig = check(
        "model M { thimac A { stage process; } trigger A.process -> A.process; }");
    REQUIRE(trig.size() == 1);
    REQUIRE(trig[0].code == Code::SelfFlow);
}

TEST_CASE("event regions must stay inside the declared statics") {
    auto diags = check(
        "model M { thimac A { stage create; stage release; }"
        " event E1 { region { flow A.create -> A.release; } } }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::RegionNotSubset);

    // dangling endpoints inside a region stay DANGLING_REF
    auto dangle = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.release; } } }");
    REQUIRE(dangle.size() == 1);
    REQUIRE(dangle[0].code == Code::DanglingRef);

    auto trig = check(
        "model M { thimac A { stage create; stage process; }"
        " event E1 { region { trigger A.process -> A.create; } } }");
    REQUIRE(count_code(trig, Code::RegionNotSubset) == 1);
}

TEST_CASE("behavior must reference declared events") {
    auto diags = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.create; } }"
        " behavior { E1 -> E2; } }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::UndeclaredEvent);

    auto rep = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.create; } }"
        " behavior { repeat EX; } }");
    REQUIRE(rep.size() == 1);
    REQUIRE(rep[0].code == Code::UndeclaredEvent);
}

TEST_CASE("cyclic chronology is an error") {
    auto diags = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.create; } }"
        " event E2 { region { A.create; } }"
        " behavior { E1 -> E2; E2 -> E1; } }");
    REQUIRE(count_code(diags, Code::CyclicBehavior) == 1);
    REQUIRE(diags[0].severity == Severity::Error);

    auto self_edge = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.create; } }"
        " behavior { E1 -> E1; } }");
    REQUIRE(count_code(self_edge, Code::CyclicBehavior) == 1);

    auto chain = check(
        "model M { thimac A { stage create; }"
        " event E1 { region { A.create; } }"
        " event E2 { region { A.create; } }"
        " behavior { E1 -> E2; } }");
    REQUIRE(chain.empty());
}

TEST_CASE("empty regions warn") {
    auto diags = check(
        "model M { thimac A { stage create; } event E1 { region { } } }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::EmptyRegion);
    REQUIRE(diags[0].severity == Severity::Warning);
}

TEST_CASE("same-machine triggers warn") {
    auto diags = check(
        "model M { thimac A { stage create; stage process; }"
        " trigger A.process -> A.create; }");
    REQUIRE(diags.size() == 1);
    REQUIRE(diags[0].code == Code::SameMachineTrigger);
    REQUIRE(diags[0].severity == Severity::Warning);

    // across machines: silent
    auto inter = check(
        "model M { thimac A { stage process; } thimac B { stage create; }"
        " trigger A.process -> B.create; }");
    REQUIRE(inter.empty());
}

TEST_CASE("diagnostics sort by position then code") {
    auto m = parse_tm(
        "model M {\n"
        "  thimac A { stage create; stage release; }\n"
        "  flow A.release -> A.create;\n"
        "  flow A.create -> B.release;\n"
        "  event E1 { region { } }\n"
        "}\n");
    REQUIRE(m.ok());
    auto diags = validate(*m);
    REQUIRE(diags.size() == 3);
    REQUIRE(diags[0].loc.line == 3);
    REQUIRE(diags[0].code == Code::IllegalIntraAdjacency);
    REQUIRE(diags[1].loc.line == 4);
    REQUIRE(diags[1].code == Code::DanglingRef);
    REQUIRE(diags[2].loc.line == 5);
    REQUIRE(diags[2].code == Code::EmptyRegion);
    // stable across runs
    auto again = validate(*m);
    REQUIRE(diags.size() == again.size());
    for (std::size_t i = 0; i < diags.size(); ++i)
        REQUIRE(format_diagnostic(diags[i]) == format_diagnostic(again[i]));
}

TEST_CASE("diagnostic wire format") {
    Diagnostic d = Diagnostic::error(Code::DanglingRef, {3, 7}, "no such stage");
    REQUIRE(format_diagnostic(d) ==
            "error DANGLING_REF at 3:7 \xE2\x80\x94 no such stage");
    Diagnostic w = Diagnostic::warning(Code::EmptyRegion, {1, 2}, "empty");
    REQUIRE(format_diagnostic(w) ==
            "warning EMPTY_REGION at 1:2 \xE2\x80\x94 empty");
}

TEST_CASE("all fixtures validate with zero diagnostics") {
    for (const char* name :
         {"marriage.tm", "marriage_full.tm", "attends_membership.tm",
          "attends_record.tm", "worker.tm", "worker_equal.tm", "fatherhood.tm",
          "airplane.tm", "empty_behavior.tm"}) {
        auto m = parse_tm(fixture_text(name));
        INFO(name);
        REQUIRE(m.ok());
        REQUIRE(validate(*m).empty());
    }
}

TEST_CASE("marriage fixture satisfies the flow laws point by point") {
    auto m = parse_tm(fixture_text("marriage.tm"));
    REQUIRE(m.ok());
    // two inter-machine fan-outs from the person's transfer stage
    int inter = 0;
    for (const Flow& f : m->statics.flows) {
        auto same = same_machine(m->statics, f.source, f.target);
        REQUIRE(same.has_value());
        if (!*same) {
            ++inter;
            REQUIRE(f.source.kind == StageKind::Transfer);
            REQUIRE(f.target.kind == StageKind::Transfer);
        }
    }
    REQUIRE(inter == 2);
}
