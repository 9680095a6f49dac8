#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <set>

#include "quantum/ctmc.hpp"
#include "quantum/expm.hpp"
#include "support.hpp"

using namespace quantum;

namespace {

struct Edge {
    std::size_t src, dst;
    double rate;
};

Ctmc make_ctmc(std::size_t n, const std::vector<Edge>& edges) {
    Ctmc c;
    c.states.resize(n);
    for (std::size_t s = 0; s < n; ++s) c.states[s] = {static_cast<int>(s)};
    c.exit_rates.assign(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        c.first.push_back(c.transitions.size());
        for (const auto& e : edges)
            if (e.src == s) {
                c.transitions.push_back({e.src, e.dst, e.rate, "e" + std::to_string(e.src) + "_" + std::to_string(e.dst)});
                c.exit_rates[s] += e.rate;
            }
    }
    c.first.push_back(c.transitions.size());
    return c;
}

/// P(reach target within t) via the matrix exponential of the generator
/// with target states made absorbing.
double oracle_until(const Ctmc& c, const std::vector<char>& target, double t) {
    const auto n = static_cast<Eigen::Index>(c.state_count());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (const auto& tr : c.transitions) {
        if (target[tr.src]) continue;
        q(static_cast<Eigen::Index>(tr.src), static_cast<Eigen::Index>(tr.dst)) += tr.rate;
        q(static_cast<Eigen::Index>(tr.src), static_cast<Eigen::Index>(tr.src)) -= tr.rate;
    }
    Eigen::MatrixXd p = (q * t).exp();
    double sum = 0;
    for (Eigen::Index s = 0; s < n; ++s)
        if (target[static_cast<std::size_t>(s)]) sum += p(static_cast<Eigen::Index>(c.initial), s);
    return sum;
}

Ctmc random_ctmc(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> rate(0.05, 3.0);
    std::vector<Edge> edges;
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (std::size_t s = 0; s + 1 < n; ++s) {  // everything can reach the last state
        edges.push_back({s, s + 1, rate(rng)});
        used.insert({s, s + 1});
    }
    for (std::size_t k = 0; k < 2 * n; ++k) {
        std::size_t a = rng() % n, b = rng() % n;
        if (a != b && used.insert({a, b}).second) edges.push_back({a, b, rate(rng)});
    }
    return make_ctmc(n, edges);
}

std::vector<char> last_state(std::size_t n) {
    std::vector<char> t(n, 0);
    t.back() = 1;
    return t;
}

}  // namespace

TEST(Transient, TwoStateClosedForm) {
    Ctmc c = make_ctmc(2, {{0, 1, 1.0}});
    EXPECT_NEAR(transient_until(c, last_state(2), 1.0), 1 - std::exp(-1.0), 1e-9);
    EXPECT_NEAR(transient_until(c, last_state(2), 1.0), 0.6321206, 1e-7);
}

TEST(Transient, ErlangChainClosedForm) {
    Ctmc c = make_ctmc(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    EXPECT_NEAR(transient_until(c, last_state(3), 1.0), 1 - 2 * std::exp(-1.0), 1e-9);
    EXPECT_NEAR(transient_until(c, last_state(3), 1.0), 0.2642411, 1e-7);
}

TEST(Transient, ZeroMissionTime) {
    Ctmc c = make_ctmc(2, {{0, 1, 1.0}});
    EXPECT_EQ(transient_until(c, last_state(2), 0.0), 0.0);
    std::vector<char> initial_is_target{1, 0};
    EXPECT_EQ(transient_until(c, initial_is_target, 0.0), 1.0);
    EXPECT_EQ(transient_until(c, initial_is_target, 5.0), 1.0);
}

TEST(Transient, NegativeTimeRejected) {
    Ctmc c = make_ctmc(2, {{0, 1, 1.0}});
    EXPECT_THROW(transient_until(c, last_state(2), -1.0), Error);
}

TEST(Transient, RandomChainsAgreeWithMatrixExponential) {
    std::mt19937 rng(2024);
    for (int round = 0; round < 12; ++round) {
        std::size_t n = 3 + rng() % 10;
        Ctmc c = random_ctmc(rng, n);
        auto target = last_state(n);
        for (double t : {0.1, 1.0, 10.0}) {
            double expected = oracle_until(c, target, t);
            EXPECT_NEAR(transient_until(c, target, t), expected, 1e-8) << "round " << round << " n=" << n << " t=" << t;
        }
    }
}

TEST(Transient, MonotoneInMissionTime) {
    std::mt19937 rng(7);
    Ctmc c = random_ctmc(rng, 8);
    double prev = 0;
    for (double t = 0; t <= 20; t += 0.5) {
        double p = transient_until(c, last_state(8), t);
        EXPECT_GE(p, prev - 1e-12) << t;
        EXPECT_LE(p, 1.0 + 1e-12);
        prev = p;
    }
}

TEST(Transient, AirbagAgreesWithMatrixExponential) {
    auto g = build_global(testing_support::airbag());
    Ctmc c = build_ctmc(g);
    auto target = mark_states(c, config_predicate(g, "inadvertent_deployment"));
    for (double t : {1.0, 10.0}) EXPECT_NEAR(transient_until(c, target, t), oracle_until(c, target, t), 1e-8) << t;
}

TEST(BuildCtmc, DropsSelfLoopsAndIndexesInitialFirst) {
    auto g = build_global(testing_support::airbag());
    Ctmc c = build_ctmc(g);
    EXPECT_EQ(c.states[c.initial], g.initial_state());
    for (const auto& t : c.transitions) EXPECT_NE(t.src, t.dst);
    for (std::size_t s = 0; s < c.state_count(); ++s) {
        double sum = 0;
        for (const auto& t : c.outgoing(s)) {
            EXPECT_EQ(t.src, s);
            sum += t.rate;
        }
        EXPECT_DOUBLE_EQ(sum, c.exit_rates[s]);
    }
}

TEST(BuildCtmc, StateCap) {
    auto g = build_global(testing_support::airbag());
    try {
        build_ctmc(g, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StateSpaceLimit);
    }
}

TEST(Poisson, WeightsMatchPmfAndCoverMass) {
    for (double q : {0.5, 3.0, 40.0, 1000.0}) {
        const double eps = 1e-10;
        auto pw = poisson_weights(q, eps);
        double sum = 0;
        for (double w : pw.weights) sum += w;
        EXPECT_NEAR(sum, 1.0, 1e-12);
        double covered = 0;
        for (std::size_t k = pw.left; k <= pw.right(); ++k) {
            double pmf = std::exp(-q + static_cast<double>(k) * std::log(q) - std::lgamma(static_cast<double>(k) + 1));
            covered += pmf;
            EXPECT_NEAR(pw.weights[k - pw.left], pmf, 1e-9 * std::max(pmf, 1e-3)) << q << " " << k;
        }
        EXPECT_GE(covered, 1 - eps) << q;
    }
    auto zero = poisson_weights(0.0, 1e-9);
    EXPECT_EQ(zero.left, 0u);
    EXPECT_EQ(zero.weights, std::vector<double>{1.0});
}

TEST(Expm, AgreesWithEigen) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int round = 0; round < 10; ++round) {
        std::size_t n = 1 + rng() % 7;
        DenseMatrix a(n);
        Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        double scale = round < 5 ? 1.0 : 40.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scale * u(rng);
        DenseMatrix mine = expm(a);
        Eigen::MatrixXd ref = b.exp();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double r = ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                EXPECT_NEAR(mine(i, j), r, 1e-9 * std::max(1.0, ref.cwiseAbs().maxCoeff())) << round;
            }
    }
}

TEST(Expm, HypoexponentialCdf) {
    EXPECT_NEAR(hypoexponential_cdf({2.0}, 0.5), 1 - std::exp(-1.0), 1e-12);
    EXPECT_NEAR(hypoexponential_cdf({1.0, 1.0}, 1.0), 1 - 2 * std::exp(-1.0), 1e-12);
    // Distinct rates: 1 - (b e^{-a t} - a e^{-b t}) / (b - a).
    double a = 1.5, b = 4.0, t = 0.7;
    EXPECT_NEAR(hypoexponential_cdf({a, b}, t), 1 - (b * std::exp(-a * t) - a * std::exp(-b * t)) / (b - a), 1e-12);
    EXPECT_EQ(hypoexponential_cdf({}, 1.0), 1.0);
    EXPECT_EQ(hypoexponential_cdf({1.0}, 0.0), 0.0);
}

// ---------------------------------------------------------------------------
// Counterexamples.

namespace {

/// Probability of following exactly `states` and arriving by time t.
double path_oracle(const Ctmc& c, const std::vector<std::size_t>& states, double t) {
    double jumps = 1;
    const auto k = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        double r = 0;
        for (const auto& tr : c.outgoing(states[i]))
            if (tr.dst == states[i + 1]) r += tr.rate;
        jumps *= r / c.exit_rates[states[i]];
        const auto ii = static_cast<Eigen::Index>(i);
        q(ii, ii) = -c.exit_rates[states[i]] * t;
        q(ii, ii + 1) = c.exit_rates[states[i]] * t;
    }
    return jumps * q.exp()(0, k - 1);
}

}  // namespace

TEST(Counterexample, PathsAreSoundAndOrdered) {
    std::mt19937 rng(5);
    for (int round = 0; round < 6; ++round) {
        std::size_t n = 4 + rng() % 5;
        Ctmc c = random_ctmc(rng, n);
        auto target = last_state(n);
        const double t = 1.0;
        double p = transient_until(c, target, t);
        CounterexampleOptions opt;
        opt.mass_fraction = 0.8;
        auto ce = collect_counterexample(c, target, t, p, opt);
        ASSERT_FALSE(ce.paths.empty());
        double sum = 0;
        std::set<std::vector<std::size_t>> distinct;
        for (std::size_t i = 0; i < ce.paths.size(); ++i) {
            const auto& path = ce.paths[i];
            ASSERT_EQ(path.states.size(), path.events.size() + 1);
            EXPECT_EQ(path.states.front(), c.initial);
            EXPECT_TRUE(target[path.states.back()]);
            for (std::size_t k = 0; k + 1 < path.states.size(); ++k) EXPECT_FALSE(target[path.states[k]]);
            EXPECT_NEAR(path.probability, path_oracle(c, path.states, t), 1e-9);
            if (i) EXPECT_GE(ce.paths[i - 1].probability, path.probability);
            EXPECT_TRUE(distinct.insert(path.states).second);
            sum += path.probability;
        }
        EXPECT_NEAR(ce.total_mass, sum, 1e-12);
        EXPECT_LE(ce.total_mass, p + 1e-9);
        if (ce.stop == StopReason::MassReached) EXPECT_GE(ce.total_mass, opt.mass_fraction * p);
    }
}

TEST(Counterexample, PathCapStops) {
    std::mt19937 rng(11);
    Ctmc c = random_ctmc(rng, 8);
    auto target = last_state(8);
    CounterexampleOptions opt;
    opt.mass_fraction = 1.0;
    opt.path_cap = 3;
    auto ce = collect_counterexample(c, target, 5.0, transient_until(c, target, 5.0), opt);
    EXPECT_EQ(ce.paths.size(), 3u);
    EXPECT_EQ(ce.stop, StopReason::PathCap);
}

TEST(Counterexample, UnreachableTarget) {
    Ctmc c = make_ctmc(3, {{0, 1, 1.0}});
    try {
        collect_counterexample(c, last_state(3), 1.0, 0.0, {}, "nowhere");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TargetUnreachable);
    }
    EXPECT_FALSE(target_reachable(c, last_state(3)));
}

TEST(Counterexample, AirbagCoversRequestedMass) {
    auto g = build_global(testing_support::airbag());
    Ctmc c = build_ctmc(g);
    auto target = mark_states(c, config_predicate(g, "inadvertent_deployment"));
    double p = transient_until(c, target, 10.0);
    CounterexampleOptions opt;
    opt.mass_fraction = 0.99;
    auto ce = collect_counterexample(c, target, 10.0, p, opt, "inadvertent_deployment");
    EXPECT_EQ(ce.stop, StopReason::MassReached);
    EXPECT_GE(ce.total_mass, 0.99 * p);
    EXPECT_LE(ce.total_mass, p + 1e-9);
}

TEST(Export, StaAndTraShapes) {
    Ctmc c = make_ctmc(3, {{0, 1, 1.0}, {0, 1, 0.5}, {1, 2, 2.0}});
    EXPECT_EQ(export_sta(c, {"x"}), "(x)\n0:(0)\n1:(1)\n2:(2)\n");
    EXPECT_EQ(export_tra(c), "3 2\n0 1 1.5\n1 2 2\n");
}
