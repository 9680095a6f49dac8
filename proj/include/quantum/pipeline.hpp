#pragma once

// End-to-end analysis: load, compose, build the CTMC, then per mission time
// compute the probability, collect a counterexample, derive the fault tree
// and the sequence diagram.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quantum/composer.hpp"
#include "quantum/csl.hpp"
#include "quantum/ctmc.hpp"
#include "quantum/error.hpp"
#include "quantum/fault_tree.hpp"
#include "quantum/native.hpp"
#include "quantum/prism.hpp"
#include "quantum/seqdiag.hpp"
#include "quantum/xmi.hpp"

namespace quantum {

struct RunConfig {
    std::string input;
    std::string out_dir = ".";
    std::vector<double> times{10.0};
    std::string config;
    double epsilon = 1e-9;
    double mass_fraction = 0.9;
    std::size_t path_cap = 10'000;
    std::size_t state_cap = kDefaultStateCap;
    double fast_rate = kDefaultFastRate;

    void check() const {
        for (double t : times)
            if (!(t >= 0)) throw Error(ErrorKind::InvalidArgument, "mission time must be non-negative");
        if (!(mass_fraction > 0 && mass_fraction <= 1)) throw Error(ErrorKind::InvalidArgument, "mass fraction must lie in (0, 1]");
        if (!(epsilon > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
        if (path_cap == 0 || state_cap == 0) throw Error(ErrorKind::InvalidArgument, "caps must be positive");
        if (!(fast_rate > 0)) throw Error(ErrorKind::InvalidArgument, "fast rate must be positive");
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out << bytes;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
}

inline bool looks_like_xml(std::string_view text) {
    std::size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string_view::npos && text[i] == '<';
}

/// Parses native or XMI input (decided by content) without validating.
inline RawModel parse_any(std::string_view text) { return looks_like_xml(text) ? parse_xmi(text) : parse_native(text); }

struct TimedRun {
    double mission_time = 0;
    double probability = 0;
    Counterexample counterexample;
    FaultTree fault_tree;
    SequenceDiagram diagram;
    double seconds_transient = 0;
    double seconds_counterexample = 0;
    double seconds_fault_tree = 0;
};

struct Analysis {
    GlobalModel global;
    Ctmc ctmc;
    std::string target;
    double seconds_build = 0;
    std::vector<TimedRun> runs;
};

namespace detail {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline Analysis analyze(const QumModel& model, const RunConfig& cfg) {
    cfg.check();
    Analysis a;
    a.target = cfg.config;
    if (!model.config(cfg.config)) throw Error(ErrorKind::UnknownConfig, cfg.config);
    a.seconds_build = detail::timed([&] {
        a.global = build_global(model, cfg.fast_rate);
        a.ctmc = build_ctmc(a.global, cfg.state_cap);
    });
    StatePredicate hazard = config_predicate(a.global, cfg.config);
    std::vector<char> target = mark_states(a.ctmc, hazard);
    bool reachable = target_reachable(a.ctmc, target);

    for (double t : cfg.times) {
        TimedRun run;
        run.mission_time = t;
        TransientOptions topt;
        topt.epsilon = cfg.epsilon;
        run.seconds_transient = detail::timed([&] { run.probability = transient_until(a.ctmc, target, t, topt); });
        if (reachable && run.probability > 0) {
            CounterexampleOptions copt;
            copt.mass_fraction = cfg.mass_fraction;
            copt.path_cap = cfg.path_cap;
            run.seconds_counterexample =
                detail::timed([&] { run.counterexample = collect_counterexample(a.ctmc, target, t, run.probability, copt, cfg.config); });
            run.seconds_fault_tree = detail::timed([&] {
                run.fault_tree = build_fault_tree(run.counterexample, a.global, hazard, cfg.config);
                run.diagram = build_diagram(run.fault_tree.classes, a.global, cfg.config);
            });
        } else {
            run.counterexample.target = cfg.config;
            run.counterexample.mission_time = t;
            run.fault_tree.top = cfg.config;
            run.diagram = build_diagram({}, a.global, cfg.config);
        }
        a.runs.push_back(std::move(run));
    }
    return a;
}

inline std::string format_number(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

/// Plain-text table: one row per mission time.
inline std::string report_table(const Analysis& a) {
    std::string out;
    out += "target: " + a.target + "\n";
    out += "states: " + std::to_string(a.ctmc.state_count()) + "  transitions: " + std::to_string(a.ctmc.transition_count()) +
           "  build: " + format_number(a.seconds_build, "%.3f") + " s\n\n";
    char line[256];
    std::snprintf(line, sizeof line, "%10s  %-14s  %8s  %9s  %12s  %12s  %12s\n", "T", "probability", "#paths", "#classes", "transient(s)",
                  "cx(s)", "ft(s)");
    out += line;
    for (const auto& r : a.runs) {
        std::snprintf(line, sizeof line, "%10g  %-14.8e  %8zu  %9zu  %12.3f  %12.3f  %12.3f\n", r.mission_time, r.probability,
                      r.counterexample.paths.size(), r.fault_tree.classes.size(), r.seconds_transient, r.seconds_counterexample,
                      r.seconds_fault_tree);
        out += line;
    }
    return out;
}

/// Counterexample listing, one path per line.
inline std::string counterexample_text(const Counterexample& ce) {
    std::string out = "target " + ce.target + "  T=" + format_number(ce.mission_time, "%g") + "  P=" + format_probability(ce.probability) +
                      "  mass=" + format_probability(ce.total_mass) + "  paths=" + std::to_string(ce.paths.size()) + "  stop=" +
                      to_string(ce.stop) + "\n";
    for (const auto& p : ce.paths) {
        out += format_probability(p.probability) + " ";
        for (std::size_t i = 0; i < p.events.size(); ++i) out += (i ? " " : "") + p.events[i];
        out += "\n";
    }
    return out;
}

}  // namespace quantum
