#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <thimac/thimac.hpp>

#include "dot_check.hpp"
#include "test_support.hpp"

using namespace thimac;

namespace {

const std::vector<std::string> kAllFixtures = {
    "marriage.tm",  "marriage_full.tm", "attends_membership.tm",
    "attends_record.tm", "worker.tm",   "worker_equal.tm",
    "fatherhood.tm", "airplane.tm",     "empty_behavior.tm"};

const std::vector<std::string> kEventFixtures = {
    "marriage_full.tm", "worker.tm", "worker_equal.tm", "airplane.tm"};

Model fixture_model(const std::string& name) {
    auto m = parse_tm(fixture_text(name));
    REQUIRE(m.ok());
    return *m;
}

bool has_line(const std::string& text, const std::string& wanted) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        std::size_t first = line.find_first_not_of(' ');
        if (first != std::string::npos && line.substr(first) == wanted)
            return true;
        pos = nl + 1;
    }
    return false;
}

int self_loops(const std::string& dot) {
    int count = 0;
    std::size_t pos = 0;
    while (pos < dot.size()) {
        std::size_t nl = dot.find('\n', pos);
        if (nl == std::string::npos) nl = dot.size();
        std::string line = dot.substr(pos, nl - pos);
        std::size_t arrow = line.find("\" -> \"");
        if (arrow != std::string::npos) {
            std::size_t open = line.find('"');
            std::string from = line.substr(open + 1, arrow - open - 1);
            std::size_t close = line.find('"', arrow + 6);
            std::string to = line.substr(arrow + 6, close - arrow - 6);
            if (from == to) ++count;
        }
        pos = nl + 1;
    }
    return count;
}

}  // namespace

TEST_CASE("every fixture renders well-formed static dot") {
    for (const std::string& name : kAllFixtures) {
        INFO(name);
        auto dot = render(fixture_model(name), View::Static);
        REQUIRE(dot.ok());
        DotCheck check = check_dot(*dot);
        INFO(check.why);
        REQUIRE(check.ok);
    }
}

TEST_CASE("static view has one node per stage and one edge per flow") {
    auto stage_count = [](const auto& self, const Thimac& t) -> int {
        int n = static_cast<int>(t.stages.size());
        for (const Thimac& sub : t.subthimacs) n += self(self, sub);
        return n;
    };
    for (const std::string& name : kAllFixtures) {
        INFO(name);
        Model m = fixture_model(name);
        auto dot = render(m, View::Static);
        REQUIRE(dot.ok());
        int nodes = 0;
        int edges = 0;
        std::size_t pos = 0;
        while (pos < dot->size()) {
            std::size_t nl = dot->find('\n', pos);
            if (nl == std::string::npos) nl = dot->size();
            std::string line = dot->substr(pos, nl - pos);
            std::size_t first = line.find_first_not_of(' ');
            if (first != std::string::npos && line[first] == '"') {
                if (line.find("\" -> \"") != std::string::npos)
                    ++edges;
                else if (line.find("shape=cylinder") == std::string::npos)
                    ++nodes;
            }
            pos = nl + 1;
        }
        int expected = 0;
        for (const Thimac& t : m.statics.thimacs)
            expected += stage_count(stage_count, t);
        REQUIRE(nodes == expected);
        REQUIRE(edges == static_cast<int>(m.statics.flows.size() +
                                          m.statics.triggers.size()));
    }
}

TEST_CASE("fixtures with events render the other views too") {
    for (const std::string& name : kEventFixtures) {
        INFO(name);
        Model m = fixture_model(name);
        for (View v : {View::Dynamic, View::Behavior}) {
            auto dot = render(m, v);
            REQUIRE(dot.ok());
            DotCheck check = check_dot(*dot);
            INFO(check.why);
            REQUIRE(check.ok);
        }
    }
}

TEST_CASE("static view draws machines as clusters and stages as boxes") {
    auto dot = render(fixture_model("marriage.tm"), View::Static);
    REQUIRE(dot.ok());
    REQUIRE(dot->rfind("digraph \"Marriage\" {\n", 0) == 0);
    REQUIRE(has_line(*dot, "rankdir=LR;"));
    REQUIRE(has_line(*dot, "node [shape=box];"));
    REQUIRE(has_line(*dot, "subgraph \"cluster_Person\" {"));
    REQUIRE(has_line(*dot, "subgraph \"cluster_Marriage.Couple\" {"));
    REQUIRE(has_line(*dot, "\"Person.create\" [label=\"Create\"];"));
    REQUIRE(has_line(*dot, "\"Marriage.Couple.process\" [label=\"Process\"];"));
    REQUIRE(has_line(*dot,
                     "\"Person.create\" -> \"Person.release\" [style=solid];"));
    REQUIRE(has_line(*dot, "\"Husband.receive\" -> \"Marriage.Couple.process\""
                           " [style=dashed];"));
}

TEST_CASE("memory draws as a cylinder inside its machine") {
    auto dot = render(fixture_model("attends_record.tm"), View::Static);
    REQUIRE(dot.ok());
    REQUIRE(has_line(*dot,
                     "\"Attends.memory\" [shape=cylinder, label=\"memory\"];"));
}

TEST_CASE("dynamic view adds one rounded cluster per event") {
    auto dot = render(fixture_model("marriage_full.tm"), View::Dynamic);
    REQUIRE(dot.ok());
    REQUIRE(has_line(*dot, "subgraph \"cluster_event_E1\" {"));
    REQUIRE(has_line(*dot, "subgraph \"cluster_event_E5\" {"));
    REQUIRE(has_line(*dot, "style=rounded;"));
    REQUIRE(has_line(*dot, "label=\"E1: There is a person\";"));

    auto without = render(fixture_model("marriage_full.tm"), View::Static);
    REQUIRE(without.ok());
    REQUIRE(without->find("cluster_event_") == std::string::npos);
}

TEST_CASE("behavior view lists events and their ordering") {
    auto dot = render(fixture_model("marriage_full.tm"), View::Behavior);
    REQUIRE(dot.ok());
    REQUIRE(has_line(*dot, "node [shape=box, style=rounded];"));
    REQUIRE(has_line(*dot, "\"E1\" [label=\"E1: There is a person\"];"));
    REQUIRE(has_line(*dot, "\"E1\" -> \"E2\";"));
    REQUIRE(has_line(*dot, "\"E4\" -> \"E5\";"));
    REQUIRE(self_loops(*dot) == 0);
}

TEST_CASE("repeats draw as labelled self loops") {
    auto dot = render(fixture_model("airplane.tm"), View::Behavior);
    REQUIRE(dot.ok());
    REQUIRE(self_loops(*dot) == 1);
    REQUIRE(has_line(*dot, "\"E2\" -> \"E2\" [label=\"\xC3\x97" "2\"];"));
}

TEST_CASE("dynamic and behavior views need events") {
    Model m = fixture_model("marriage.tm");
    for (View v : {View::Dynamic, View::Behavior}) {
        auto dot = render(m, v);
        REQUIRE_FALSE(dot.ok());
        REQUIRE(dot.diagnostics[0].code == Code::MissingViewData);
    }
    REQUIRE(render(m, View::Static).ok());
}

TEST_CASE("rendered output matches the goldens") {
    struct Golden {
        const char* fixture;
        View view;
        const char* file;
    };
    for (const Golden& g : std::vector<Golden>{
             {"marriage_full.tm", View::Static, "marriage_full_static.dot"},
             {"marriage_full.tm", View::Dynamic, "marriage_full_dynamic.dot"},
             {"marriage_full.tm", View::Behavior, "marriage_full_behavior.dot"},
             {"airplane.tm", View::Behavior, "airplane_behavior.dot"},
             {"attends_record.tm", View::Static, "attends_record_static.dot"},
         }) {
        INFO(g.file);
        auto dot = render(fixture_model(g.fixture), g.view);
        REQUIRE(dot.ok());
        REQUIRE(*dot == read_file(golden_path(g.file)));
    }
}

TEST_CASE("quotes and backslashes in labels are escaped") {
    Model m;
    m.statics.name = "say \"hi\" \\ again";
    Thimac t;
    t.name = "A";
    t.stages = {StageKind::Create};
    m.statics.thimacs.push_back(t);
    auto dot = render(m, View::Static);
    REQUIRE(dot.ok());
    REQUIRE(dot->rfind("digraph \"say \\\"hi\\\" \\\\ again\" {\n", 0) == 0);
    DotCheck check = check_dot(*dot);
    INFO(check.why);
    REQUIRE(check.ok);
}

TEST_CASE("rendering is deterministic") {
    for (const std::string& name : {std::string("marriage_full.tm"),
                                    std::string("airplane.tm")}) {
        Model m = fixture_model(name);
        for (View v : {View::Static, View::Dynamic, View::Behavior}) {
            auto a = render(m, v);
            auto b = render(m, v);
            REQUIRE(a.ok());
            REQUIRE(*a == *b);
        }
    }
}
