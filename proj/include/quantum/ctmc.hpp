#pragma once

// Explicit-state CTMC, transient time-bounded reachability by
// uniformization, and best-first counterexample collection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "quantum/composer.hpp"
#include "quantum/error.hpp"
#include "quantum/expm.hpp"

namespace quantum {

struct CtmcTransition {
    std::size_t src = 0;
    std::size_t dst = 0;
    double rate = 0;
    std::string label;
};

struct Ctmc {
    std::vector<std::vector<int>> states;  // global state vectors, index 0 is initial
    std::vector<CtmcTransition> transitions;  // grouped by src, in discovery order
    std::vector<std::size_t> first;           // transitions of s: [first[s], first[s+1])
    std::vector<double> exit_rates;
    std::size_t initial = 0;

    std::size_t state_count() const { return states.size(); }
    std::size_t transition_count() const { return transitions.size(); }

    std::span<const CtmcTransition> outgoing(std::size_t s) const {
        return std::span<const CtmcTransition>(transitions).subspan(first[s], first[s + 1] - first[s]);
    }
};

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

namespace detail {

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail

/// Breadth-first exploration from the initial global state. Self-loops are
/// dropped; they do not affect CTMC behaviour.
inline Ctmc build_ctmc(const GlobalModel& g, std::size_t state_cap = kDefaultStateCap) {
    Ctmc c;
    std::unordered_map<std::vector<int>, std::size_t, detail::VectorHash> index;
    c.states.push_back(g.initial_state());
    index.emplace(c.states.front(), 0);
    for (std::size_t s = 0; s < c.states.size(); ++s) {
        c.first.push_back(c.transitions.size());
        double exit = 0;
        auto moves = g.successors(c.states[s]);
        for (auto& mv : moves) {
            if (mv.target == c.states[s]) continue;
            auto it = index.find(mv.target);
            std::size_t dst;
            if (it == index.end()) {
                if (c.states.size() >= state_cap) throw Error(ErrorKind::StateSpaceLimit, std::to_string(state_cap) + " states");
                dst = c.states.size();
                index.emplace(mv.target, dst);
                c.states.push_back(std::move(mv.target));
            } else {
                dst = it->second;
            }
            c.transitions.push_back({s, dst, mv.rate, mv.label});
            exit += mv.rate;
        }
        c.exit_rates.push_back(exit);
    }
    c.first.push_back(c.transitions.size());
    return c;
}

inline std::vector<char> mark_states(const Ctmc& c, const StatePredicate& phi) {
    std::vector<char> out(c.state_count());
    for (std::size_t s = 0; s < c.state_count(); ++s) out[s] = phi(c.states[s]) ? 1 : 0;
    return out;
}

// ---------------------------------------------------------------------------
// Poisson weights.

struct PoissonWeights {
    std::size_t left = 0;
    std::vector<double> weights;  // weights[k - left], normalized

    std::size_t right() const { return left + weights.size() - 1; }
};

/// Poisson(q) probabilities on [left, right] covering all but `epsilon` of
/// the mass, computed outward from the mode in log space.
inline PoissonWeights poisson_weights(double q, double epsilon) {
    PoissonWeights pw;
    if (q <= 0) {
        pw.weights = {1.0};
        return pw;
    }
    auto log_w = [q](double k) { return -q + k * std::log(q) - std::lgamma(k + 1); };
    const auto mode = static_cast<std::size_t>(std::floor(q));
    const double base = log_w(static_cast<double>(mode));
    const double target = epsilon / 2;

    std::vector<double> upper{1.0};  // relative to the mode weight
    double total = 1.0;
    for (std::size_t k = mode + 1;; ++k) {
        double w = std::exp(log_w(static_cast<double>(k)) - base);
        upper.push_back(w);
        total += w;
        double ratio = q / static_cast<double>(k + 1);
        if (ratio < 1 && w * ratio / (1 - ratio) <= target * std::exp(-base)) break;
        if (w == 0) break;
    }
    std::vector<double> lower;
    std::size_t left = mode;
    for (std::size_t k = mode; k-- > 0;) {
        double w = std::exp(log_w(static_cast<double>(k)) - base);
        double ratio = static_cast<double>(k) / q;
        lower.push_back(w);
        total += w;
        left = k;
        if (w == 0 || (ratio < 1 && w * ratio / (1 - ratio) <= target * std::exp(-base))) break;
    }
    pw.left = left;
    pw.weights.assign(lower.rbegin(), lower.rend());
    pw.weights.insert(pw.weights.end(), upper.begin(), upper.end());
    for (double& w : pw.weights) w /= total;
    return pw;
}

struct TransientOptions {
    double epsilon = 1e-9;
    double headroom = 1.02;                 // uniformization rate factor over the max exit rate
    std::size_t max_iterations = 200'000'000;
};

/// P[ true U<=T phi ] from the initial state.
inline double transient_until(const Ctmc& c, const std::vector<char>& target, double t, const TransientOptions& opt = {}) {
    if (!(t >= 0)) throw Error(ErrorKind::InvalidArgument, "mission time must be non-negative");
    if (!(opt.epsilon > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (c.state_count() == 0) return 0.0;
    if (target[c.initial]) return 1.0;
    if (t == 0) return 0.0;

    double max_exit = 0;
    for (std::size_t s = 0; s < c.state_count(); ++s)
        if (!target[s]) max_exit = std::max(max_exit, c.exit_rates[s]);
    if (max_exit == 0) return 0.0;
    const double lambda = opt.headroom * max_exit;
    PoissonWeights pw = poisson_weights(lambda * t, opt.epsilon);
    if (pw.right() > opt.max_iterations)
        throw Error(ErrorKind::InvalidArgument, "uniformization would need " + std::to_string(pw.right()) + " steps");

    const std::size_t n = c.state_count();
    std::vector<double> stay(n);
    for (std::size_t s = 0; s < n; ++s) stay[s] = target[s] ? 1.0 : 1.0 - c.exit_rates[s] / lambda;
    std::vector<double> v(n, 0.0), next(n);
    v[c.initial] = 1.0;

    auto absorbed = [&](const std::vector<double>& x) {
        double m = 0;
        for (std::size_t s = 0; s < n; ++s)
            if (target[s]) m += x[s];
        return m;
    };

    double result = 0;
    for (std::size_t k = 0; k <= pw.right(); ++k) {
        if (k >= pw.left) result += pw.weights[k - pw.left] * absorbed(v);
        if (k == pw.right()) break;
        for (std::size_t s = 0; s < n; ++s) next[s] = v[s] * stay[s];
        for (std::size_t s = 0; s < n; ++s) {
            if (target[s] || v[s] == 0.0) continue;
            for (const auto& tr : c.outgoing(s)) next[tr.dst] += v[s] * tr.rate / lambda;
        }
        std::swap(v, next);
        // Once (almost) everything is absorbed the remaining weights apply
        // to a constant vector.
        double live = 1.0 - absorbed(v);
        if (live < opt.epsilon * 1e-3 && k + 1 <= pw.right()) {
            double m = absorbed(v);
            for (std::size_t j = std::max(k + 1, pw.left); j <= pw.right(); ++j) result += pw.weights[j - pw.left] * m;
            return std::clamp(result, 0.0, 1.0);
        }
    }
    return std::clamp(result, 0.0, 1.0);
}

inline double transient_until(const Ctmc& c, const StatePredicate& phi, double t, const TransientOptions& opt = {}) {
    return transient_until(c, mark_states(c, phi), t, opt);
}

// ---------------------------------------------------------------------------
// Counterexamples.

struct CounterexamplePath {
    std::vector<std::string> events;
    std::vector<std::size_t> states;  // CTMC indices, one more than events
    double probability = 0;           // lower bound on the path's contribution
};

enum class StopReason { MassReached, PathCap, Exhausted, ExpansionCap };

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::MassReached: return "mass reached";
        case StopReason::PathCap: return "path cap";
        case StopReason::Exhausted: return "search exhausted";
        case StopReason::ExpansionCap: return "expansion cap";
    }
    return "?";
}

struct Counterexample {
    std::string target;
    double mission_time = 0;
    double probability = 0;  // transient probability the paths witness
    double total_mass = 0;
    std::vector<CounterexamplePath> paths;  // descending probability
    StopReason stop = StopReason::Exhausted;
    std::size_t expansions = 0;
};

struct CounterexampleOptions {
    double mass_fraction = 0.9;
    std::size_t path_cap = 10'000;
    std::size_t expansion_cap = 2'000'000;
    double prune_below = 1e-300;  // discard prefixes whose bound is negligible
};

inline bool target_reachable(const Ctmc& c, const std::vector<char>& target) {
    std::vector<char> seen(c.state_count(), 0);
    std::deque<std::size_t> queue{c.initial};
    seen[c.initial] = 1;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        if (target[s]) return true;
        for (const auto& tr : c.outgoing(s))
            if (!seen[tr.dst]) {
                seen[tr.dst] = 1;
                queue.push_back(tr.dst);
            }
    }
    return false;
}

/// Best-first enumeration of paths that first hit the target within T.
/// A path's score is its jump probability times the probability that its
/// sojourns fit into T; prefixes are ranked by the same quantity, which
/// bounds every extension from above, so paths come out in descending order.
inline Counterexample collect_counterexample(const Ctmc& c, const std::vector<char>& target, double t, double probability,
                                             const CounterexampleOptions& opt = {}, std::string target_name = {}) {
    if (!target_reachable(c, target)) throw Error(ErrorKind::TargetUnreachable, target_name.empty() ? "target" : target_name);
    Counterexample ce;
    ce.target = std::move(target_name);
    ce.mission_time = t;
    ce.probability = probability;

    struct Node {
        std::size_t parent;
        std::size_t transition;  // index into c.transitions; unused for the root
        std::size_t state;
        double jump;  // product of embedded-chain step probabilities
        bool complete;
    };
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<Node> nodes;
    nodes.push_back({kNone, kNone, c.initial, 1.0, static_cast<bool>(target[c.initial])});

    auto sojourn_rates = [&](std::size_t node, bool include_last) {
        std::vector<double> rates;
        for (std::size_t k = include_last ? node : nodes[node].parent; k != kNone; k = nodes[k].parent) rates.push_back(c.exit_rates[nodes[k].state]);
        std::reverse(rates.begin(), rates.end());
        return rates;
    };
    auto score = [&](std::size_t node) {
        // Complete: all sojourns before the final state. Prefix: the same,
        // an upper bound for every extension.
        return nodes[node].jump * hypoexponential_cdf(sojourn_rates(node, false), t);
    };

    using Entry = std::pair<double, std::size_t>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first < b.first || (a.first == b.first && a.second > b.second); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    frontier.push({score(0), 0});

    const double goal = opt.mass_fraction * probability;
    ce.stop = StopReason::Exhausted;
    while (!frontier.empty()) {
        if (ce.total_mass >= goal && !ce.paths.empty()) {
            ce.stop = StopReason::MassReached;
            break;
        }
        if (ce.paths.size() >= opt.path_cap) {
            ce.stop = StopReason::PathCap;
            break;
        }
        if (ce.expansions >= opt.expansion_cap) {
            ce.stop = StopReason::ExpansionCap;
            break;
        }
        auto [bound, id] = frontier.top();
        frontier.pop();
        if (nodes[id].complete) {
            CounterexamplePath p;
            p.probability = bound;
            for (std::size_t k = id; k != kNone; k = nodes[k].parent) {
                p.states.push_back(nodes[k].state);
                if (nodes[k].transition != kNone) p.events.push_back(c.transitions[nodes[k].transition].label);
            }
            std::reverse(p.states.begin(), p.states.end());
            std::reverse(p.events.begin(), p.events.end());
            ce.total_mass += p.probability;
            ce.paths.push_back(std::move(p));
            continue;
        }
        ++ce.expansions;
        std::size_t s = nodes[id].state;
        double exit = c.exit_rates[s];
        for (std::size_t ti = c.first[s]; ti < c.first[s + 1]; ++ti) {
            const auto& tr = c.transitions[ti];
            nodes.push_back({id, ti, tr.dst, nodes[id].jump * tr.rate / exit, static_cast<bool>(target[tr.dst])});
            std::size_t child = nodes.size() - 1;
            double sc = score(child);
            if (sc > opt.prune_below) frontier.push({sc, child});
        }
    }
    return ce;
}

// ---------------------------------------------------------------------------
// Explicit-state export (PRISM .sta / .tra layout).

inline std::string export_sta(const Ctmc& c, const std::vector<std::string>& variables) {
    std::string out = "(";
    for (std::size_t i = 0; i < variables.size(); ++i) out += (i ? "," : "") + variables[i];
    out += ")\n";
    for (std::size_t s = 0; s < c.state_count(); ++s) {
        out += std::to_string(s) + ":(";
        for (std::size_t i = 0; i < c.states[s].size(); ++i) out += (i ? "," : "") + std::to_string(c.states[s][i]);
        out += ")\n";
    }
    return out;
}

inline std::string export_tra(const Ctmc& c) {
    // Parallel transitions between the same pair are summed.
    std::string out;
    std::vector<std::pair<std::size_t, double>> row;
    std::size_t count = 0;
    std::string body;
    for (std::size_t s = 0; s < c.state_count(); ++s) {
        row.clear();
        for (const auto& tr : c.outgoing(s)) {
            auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == tr.dst; });
            if (it == row.end()) row.push_back({tr.dst, tr.rate});
            else it->second += tr.rate;
        }
        std::sort(row.begin(), row.end());
        for (const auto& [dst, rate] : row) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", rate);
            body += std::to_string(s) + " " + std::to_string(dst) + " " + buf + "\n";
            ++count;
        }
    }
    out = std::to_string(c.state_count()) + " " + std::to_string(count) + "\n" + body;
    return out;
}

}  // namespace quantum
