// tmc: command line front end for the thimac library.
//
// Exit codes: 0 success (warnings allowed), 1 operation failed, 2 bad usage.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <thimac/thimac.hpp>

namespace {

bool read_input(const std::string& path, std::string& out) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        out = ss.str();
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "tmc: cannot read '" << path << "'\n";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "tmc: cannot write '" << path << "'\n";
        return false;
    }
    out << text;
    return true;
}

void report(const std::vector<thimac::Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << thimac::format_diagnostic(d) << "\n";
}

bool is_er_path(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".er") == 0;
}

// Shared result plumbing: print diagnostics, return the exit code.
template <typename T>
int finish(const thimac::Outcome<T>& result,
           const std::function<int(const T&)>& on_ok) {
    report(result.diagnostics);
    if (!result.ok()) return 1;
    return on_ok(*result);
}

int cmd_parse(const std::string& file, bool as_json) {
    std::string text;
    if (!read_input(file, text)) return 1;
    if (is_er_path(file)) {
        auto er = thimac::parse_er(text);
        return finish<thimac::ErModel>(er, [&](const thimac::ErModel& m) {
            return write_output("", as_json ? thimac::er_to_json(m).dump(2) + "\n"
                                            : thimac::serialize_er(m))
                       ? 0
                       : 1;
        });
    }
    auto tm = thimac::parse_tm(text);
    return finish<thimac::Model>(tm, [&](const thimac::Model& m) {
        return write_output("", as_json ? thimac::model_to_json(m).dump(2) + "\n"
                                        : thimac::serialize_tm(m))
                   ? 0
                   : 1;
    });
}

int cmd_validate(const std::string& file) {
    std::string text;
    if (!read_input(file, text)) return 1;
    auto tm = thimac::parse_tm(text);
    report(tm.diagnostics);
    if (!tm.ok()) return 1;
    auto diags = thimac::validate(*tm);
    report(diags);
    return thimac::has_errors(diags) ? 1 : 0;
}

int cmd_dissipate(const std::string& file, const std::string& strategy,
                  const std::string& out_path) {
    std::string text;
    if (!read_input(file, text)) return 1;
    auto er = thimac::parse_er(text);
    report(er.diagnostics);
    if (!er.ok()) return 1;
    auto strat = strategy == "reify" ? thimac::Strategy::Reify
                                     : thimac::Strategy::FlowMembership;
    auto tm = thimac::dissipate(*er, strat);
    return finish<thimac::Model>(tm, [&](const thimac::Model& m) {
        return write_output(out_path, thimac::serialize_tm(m)) ? 0 : 1;
    });
}

int cmd_eventize(const std::string& file, const std::string& out_path) {
    std::string text;
    if (!read_input(file, text)) return 1;
    auto tm = thimac::parse_tm(text);
    report(tm.diagnostics);
    if (!tm.ok()) return 1;
    auto derived = thimac::eventize(*tm);
    return finish<thimac::Model>(derived, [&](const thimac::Model& m) {
        return write_output(out_path, thimac::serialize_tm(m)) ? 0 : 1;
    });
}

int cmd_simulate(const std::string& file,
                 const std::vector<std::string>& repeat_args,
                 const std::string& out_path) {
    std::map<std::string, std::uint64_t> overrides;
    for (const std::string& arg : repeat_args) {
        auto eq = arg.find('=');
        std::uint64_t count = 0;
        bool numeric = eq != std::string::npos && eq + 1 < arg.size();
        if (numeric)
            for (std::size_t i = eq + 1; i < arg.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(arg[i]))) {
                    numeric = false;
                    break;
                }
                count = count * 10 + static_cast<std::uint64_t>(arg[i] - '0');
            }
        if (!numeric || eq == 0) {
            std::cerr << "tmc: --repeat expects EVENT=COUNT, got '" << arg << "'\n";
            return 2;
        }
        overrides[arg.substr(0, eq)] = count;
    }
    std::string text;
    if (!read_input(file, text)) return 1;
    auto tm = thimac::parse_tm(text);
    report(tm.diagnostics);
    if (!tm.ok()) return 1;
    auto trace = thimac::simulate(*tm, overrides);
    return finish<thimac::Trace>(trace, [&](const thimac::Trace& t) {
        return write_output(out_path, thimac::trace_to_json(t).dump(2) + "\n") ? 0
                                                                              : 1;
    });
}

int cmd_timeshare(const std::string& file, const std::string& group_arg) {
    std::set<std::string> group;
    std::string item;
    std::istringstream ss(group_arg);
    while (std::getline(ss, item, ','))
        if (!item.empty()) group.insert(item);
    if (group.empty()) {
        std::cerr << "tmc: --group expects a comma separated event list\n";
        return 2;
    }
    std::string text;
    if (!read_input(file, text)) return 1;
    auto trace = thimac::trace_from_json(text);
    report(trace.diagnostics);
    if (!trace.ok()) return 1;
    auto share = thimac::time_share(*trace, group);
    return finish<thimac::TimeShare>(share, [](const thimac::TimeShare& s) {
        std::cout << s.to_string() << "\n";
        return 0;
    });
}

int cmd_render(const std::string& file, const std::string& view_arg,
               const std::string& out_path) {
    std::string text;
    if (!read_input(file, text)) return 1;
    auto tm = thimac::parse_tm(text);
    report(tm.diagnostics);
    if (!tm.ok()) return 1;
    auto view = view_arg == "dynamic"    ? thimac::View::Dynamic
                : view_arg == "behavior" ? thimac::View::Behavior
                                         : thimac::View::Static;
    auto dot = thimac::render(*tm, view);
    return finish<std::string>(dot, [&](const std::string& body) {
        return write_output(out_path, body) ? 0 : 1;
    });
}

int cmd_shorthand(const std::string& file, const std::string& out_path) {
    std::string text;
    if (!read_input(file, text)) return 1;
    auto tm = thimac::parse_tm(text);
    report(tm.diagnostics);
    if (!tm.ok()) return 1;
    auto er = thimac::shorthand(*tm);
    return finish<thimac::ErModel>(er, [&](const thimac::ErModel& m) {
        return write_output(out_path, thimac::serialize_er(m)) ? 0 : 1;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thinging Machine model toolchain"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;
    std::string strategy = "flow";
    std::vector<std::string> repeat_args;
    std::string out_path;
    std::string group_arg;
    std::string view_arg = "static";

    auto* parse = app.add_subcommand("parse", "Parse a model and echo it back");
    parse->add_option("file", file, "input file, .er for ER models, - for stdin")
        ->required();
    parse->add_flag("--json", as_json, "emit the syntax tree as JSON");

    auto* validate = app.add_subcommand("validate", "Check a model against the flow laws");
    validate->add_option("file", file)->required();

    auto* dissipate = app.add_subcommand("dissipate", "Turn an ER model into a TM model");
    dissipate->add_option("file", file)->required();
    dissipate->add_option("--strategy", strategy, "flow or reify")
        ->check(CLI::IsMember({"flow", "reify"}));
    dissipate->add_option("-o,--output", out_path, "output file, default stdout");

    auto* eventize = app.add_subcommand("eventize", "Derive events and chronology");
    eventize->add_option("file", file)->required();
    eventize->add_option("-o,--output", out_path, "output file, default stdout");

    auto* simulate = app.add_subcommand("simulate", "Run the chronology, emit a trace");
    simulate->add_option("file", file)->required();
    simulate->add_option("--repeat", repeat_args, "EVENT=COUNT repeat override");
    simulate->add_option("-o,--output", out_path, "trace output file, default stdout");

    auto* timeshare = app.add_subcommand("timeshare", "Share of trace time spent in events");
    timeshare->add_option("file", file, "trace JSON file, - for stdin")->required();
    timeshare->add_option("--group", group_arg, "comma separated event ids")->required();

    auto* render = app.add_subcommand("render", "Emit a Graphviz diagram");
    render->add_option("file", file)->required();
    render->add_option("--view", view_arg, "static, dynamic or behavior")
        ->check(CLI::IsMember({"static", "dynamic", "behavior"}));
    render->add_option("-o,--output", out_path, "output file, default stdout");

    auto* shorthand = app.add_subcommand("shorthand", "Recover the ER view of a TM model");
    shorthand->add_option("file", file)->required();
    shorthand->add_option("-o,--output", out_path, "output file, default stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (parse->parsed()) return cmd_parse(file, as_json);
    if (validate->parsed()) return cmd_validate(file);
    if (dissipate->parsed()) return cmd_dissipate(file, strategy, out_path);
    if (eventize->parsed()) return cmd_eventize(file, out_path);
    if (simulate->parsed()) return cmd_simulate(file, repeat_args, out_path);
    if (timeshare->parsed()) return cmd_timeshare(file, group_arg);
    if (render->parsed()) return cmd_render(file, view_arg, out_path);
    if (shorthand->parsed()) return cmd_shorthand(file, out_path);
    return 2;
}
