// Command-line front end: validate, translate, analyze.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "quantum/csl.hpp"
#include "quantum/pipeline.hpp"
#include "quantum/prism.hpp"
#include "quantum/prism_check.hpp"

namespace fs = std::filesystem;
using namespace quantum;

namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
    const char* env = std::getenv("QUANTUM_LOG");
    std::string v = env ? env : "warn";
    if (v == "error") return Level::Error;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
}

void log(Level level, const std::string& msg) {
    static const Level threshold = log_level();
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (level <= threshold) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

int exit_code(const Error& e) { return e.kind() == ErrorKind::Io ? 2 : 1; }

QumModel load(const std::string& path, std::string* bytes = nullptr) {
    std::string text = read_file(path);
    log(Level::Info, "read " + path + " (" + std::to_string(text.size()) + " bytes)");
    auto result = validate(parse_any(text));
    if (!result.ok()) {
        std::string msg;
        for (const auto& v : result.violations) msg += "\n  " + v.text();
        throw Error(result.violations.front().kind, std::to_string(result.violations.size()) + " violation(s):" + msg);
    }
    if (bytes) *bytes = std::move(text);
    return std::move(*result.model);
}

std::string time_tag(double t) {
    std::string s = format_number(t, "%g");
    for (char& c : s)
        if (c == '.') c = '_';
    return "T" + s;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + dir + ": " + ec.message());
}

/// Emits the PRISM model and properties and checks both with the bundled
/// grammar checker before anything is written.
std::pair<std::string, std::string> translate(const QumModel& model, double fast_rate) {
    GlobalModel g = build_global(model, fast_rate);
    std::string sm = emit_model(g).text();
    std::string csl = emit_csl(generate_properties(model, g.encodings));
    auto table = prism::check_program(prism::parse_program(sm));
    prism::check_properties(prism::parse_properties(csl), table);
    return {sm, csl};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dependability analysis of annotated state-machine models"};
    app.require_subcommand(1);

    std::string input, out_dir = ".";
    RunConfig cfg;
    std::vector<std::string> formats;
    bool export_ctmc = false;

    auto* v = app.add_subcommand("validate", "Check a model and list all violations");
    v->add_option("--in", input, "Model file (.qum native or .xmi)")->required();

    auto* t = app.add_subcommand("translate", "Write the PRISM model (model.sm) and properties (props.csl)");
    t->add_option("--in", input, "Model file")->required();
    t->add_option("--out", out_dir, "Output directory");
    t->add_option("--format", formats, "Subset of {sm,csl}")->delimiter(',')->check(CLI::IsMember({"sm", "csl"}));

    auto* a = app.add_subcommand("analyze", "Transient probability, counterexample, fault tree and sequence diagram");
    a->add_option("--in", input, "Model file")->required();
    a->add_option("--out", out_dir, "Output directory");
    a->add_option("--config", cfg.config, "State configuration to analyze")->required();
    a->add_option("--time", cfg.times, "Mission time(s) in hours; repeatable or comma separated")->delimiter(',')->capture_default_str();
    a->add_option("--epsilon", cfg.epsilon, "Transient tolerance")->capture_default_str();
    a->add_option("--mass-fraction", cfg.mass_fraction, "Fraction of the probability the counterexample must cover")->capture_default_str();
    a->add_option("--path-cap", cfg.path_cap, "Maximum counterexample paths")->capture_default_str();
    a->add_option("--state-cap", cfg.state_cap, "Maximum CTMC states")->capture_default_str();
    a->add_option("--fast-rate", cfg.fast_rate, "Rate for untimed transitions and calls")->capture_default_str();
    a->add_option("--format", formats, "Artifacts among {sm,csl,dot,puml,xmi,txt}")
        ->delimiter(',')
        ->check(CLI::IsMember({"sm", "csl", "dot", "puml", "xmi", "txt"}));
    a->add_flag("--export-ctmc", export_ctmc, "Also write ctmc.sta and ctmc.tra");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (v->parsed()) {
            QumModel m = load(input);
            std::size_t transitions = 0;
            for (const auto& c : m.components) {
                if (c.normal_machine) transitions += c.normal_machine->transitions.size();
                for (const auto& f : c.failure_machines) transitions += f.transitions.size();
            }
            std::cout << "ok: " << m.model_name << ": " << m.components.size() << " components, " << transitions << " transitions, "
                      << m.state_configs.size() << " state configurations\n";
            return 0;
        }

        std::set<std::string> want(formats.begin(), formats.end());
        auto wanted = [&](const std::string& f) { return want.empty() || want.count(f); };

        if (t->parsed()) {
            QumModel m = load(input);
            auto [sm, csl] = translate(m, kDefaultFastRate);
            ensure_dir(out_dir);
            if (wanted("sm")) write_file((fs::path(out_dir) / "model.sm").string(), sm);
            if (wanted("csl")) write_file((fs::path(out_dir) / "props.csl").string(), csl);
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }

        std::string original;
        QumModel m = load(input, &original);
        cfg.input = input;
        cfg.out_dir = out_dir;
        Analysis an = analyze(m, cfg);
        log(Level::Info, "CTMC: " + std::to_string(an.ctmc.state_count()) + " states, " + std::to_string(an.ctmc.transition_count()) + " transitions");
        ensure_dir(out_dir);
        fs::path dir(out_dir);
        if (wanted("sm") || wanted("csl")) {
            auto [sm, csl] = translate(m, cfg.fast_rate);
            if (wanted("sm")) write_file((dir / "model.sm").string(), sm);
            if (wanted("csl")) write_file((dir / "props.csl").string(), csl);
        }
        if (export_ctmc) {
            std::vector<std::string> vars;
            for (std::size_t c = 0; c < m.components.size(); ++c) {
                vars.push_back(state_var(an.global.encodings[c]));
                for (const auto& at : m.components[c].attributes) vars.push_back(attribute_var(an.global.encodings[c], at));
            }
            write_file((dir / "ctmc.sta").string(), export_sta(an.ctmc, vars));
            write_file((dir / "ctmc.tra").string(), export_tra(an.ctmc));
        }
        const std::string base = cfg.config;
        for (const auto& run : an.runs) {
            std::string stem = base + "_" + time_tag(run.mission_time);
            if (wanted("txt"))
                write_file((dir / (stem + ".txt")).string(), dump_text(run.fault_tree) + "\n" + counterexample_text(run.counterexample));
            if (wanted("dot")) write_file((dir / (stem + ".dot")).string(), emit_dot(run.fault_tree));
            if (wanted("puml")) write_file((dir / (stem + ".puml")).string(), emit_plantuml(run.diagram));
            if (wanted("xmi") && looks_like_xml(original)) write_file((dir / (stem + ".xmi")).string(), append_xmi(run.diagram, original));
            log(Level::Info, "T=" + format_number(run.mission_time, "%g") + ": " + std::to_string(run.fault_tree.classes.size()) + " classes");
        }
        std::string report = report_table(an);
        write_file((dir / "report.txt").string(), report);
        std::cout << report;
        return 0;
    } catch (const Error& e) {
        log(Level::Error, e.what());
        return exit_code(e);
    } catch (const std::exception& e) {
        log(Level::Error, e.what());
        return 1;
    }
}
