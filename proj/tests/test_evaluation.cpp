#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldpower/error.hpp"
#include "ldpower/evaluation.hpp"
#include "ldpower/synth.hpp"

#include <algorithm>
#include <cmath>

using namespace ldpower;
using doctest::Approx;

namespace {

PowerCurve curve(std::vector<std::pair<std::int64_t, double>> points) {
    PowerCurve c;
    for (const auto& [w, v] : points) c.set(w, v, 1);
    return c;
}

// n copies of the game [5,4,1] at q = 1/2 in which the weight-5 voter votes yes alone.
Dataset repeated_541(int copies) {
    Dataset d;
    const auto t = parse_timestamp("2014-01-01");
    d.users = {"a", "b", "c", "x1", "x2", "x3", "x4", "y1", "y2", "y3"};
    d.areas = {{"A", "A"}};
    // a carries four delegations, b three; c votes alone.
    for (const auto* x : {"x1", "x2", "x3", "x4"}) d.delegations.push_back({x, "a", {ScopeKind::global, ""}, t, {}});
    for (const auto* y : {"y1", "y2", "y3"}) d.delegations.push_back({y, "b", {ScopeKind::global, ""}, t, {}});
    for (int i = 0; i < copies; ++i) {
        const auto id = std::to_string(100 + i);
        d.issues.push_back({"I" + id, "A", Quorum(1, 2)});
        d.initiatives.push_back({"N" + id, "I" + id, {}});
        d.ballots.push_back({"N" + id, "a", true, t + std::chrono::days(1)});
        d.ballots.push_back({"N" + id, "b", false, t + std::chrono::days(1)});
        d.ballots.push_back({"N" + id, "c", false, t + std::chrono::days(1)});
    }
    return d;
}

std::vector<IndexModel> all_models() {
    std::vector<IndexModel> models;
    for (const auto* name : {"banzhaf", "shapley", "beta", "regression", "beta2", "uniform", "uniform-homogeneous"})
        models.push_back(make_index_model(name));
    return models;
}

} // namespace

TEST_CASE("squared error") {
    const auto a = curve({{1, 0.2}, {2, 0.4}, {3, 0.9}});
    CHECK(squared_error(a, a) == 0.0);
    PowerCurve base, shifted;
    for (int w = 1; w <= 100; ++w) {
        base.set(w, 0.3, 5);
        shifted.set(w, 0.4, 5);
    }
    CHECK(squared_error(shifted, base) == Approx(1.0));
    CHECK(squared_error(curve({{1, 0.2}, {2, 0.9}}), curve({{1, 0.2}, {2, 0.4}})) == Approx(0.25));

    const auto cmp = compare_curves(curve({{1, 0.5}, {2, 0.5}}), curve({{1, 0.5}, {3, 0.1}}));
    CHECK(cmp.compared == 1);
    CHECK(cmp.skipped == 2);
    CHECK_THROWS_AS(compare_curves(curve({{1, 0.5}}), curve({{2, 0.5}})), InvalidInput);
}

TEST_CASE("log likelihood and clamping") {
    const std::vector<PowerObservation> half{{0.5, true}};
    CHECK(log_likelihood(half).log2_likelihood == Approx(-1));
    const std::vector<PowerObservation> sure{{1.0, true}};
    const auto s = log_likelihood(sure);
    CHECK(s.log2_likelihood == Approx(0).epsilon(1e-6));
    CHECK(s.clamped == 0);
    const std::vector<PowerObservation> two{{0.5, true}, {0.5, false}};
    CHECK(log_likelihood(two).log2_likelihood == Approx(-2));

    const std::vector<PowerObservation> wrong{{0.0, true}, {1.0, false}};
    const auto w = log_likelihood(wrong);
    CHECK(w.clamped == 2);
    CHECK(w.log2_likelihood == Approx(2 * std::log2(1e-9)));
    CHECK(std::isfinite(w.log2_likelihood));
}

TEST_CASE("perplexity") {
    CHECK(perplexity(-1, 1) == Approx(2));
    CHECK(perplexity(0, 7) == 1.0);
    CHECK(perplexity(-2, 1) == Approx(4));
    CHECK_THROWS_AS(perplexity(-1, 0), InvalidInput);

    // perfect predictions at clamped certainty give perplexity 1
    const std::vector<PowerObservation> perfect{{1.0, true}, {0.0, false}, {1.0, true}};
    CHECK(perplexity(log_likelihood(perfect).log2_likelihood, 3) == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("model names") {
    CHECK(make_index_model("beta2").name == "beta2");
    CHECK(std::holds_alternative<ClassicalIndex>(make_index_model("shapley").kind));
    CHECK_THROWS_AS(make_index_model("holler"), InvalidInput);
    ModelParameters p;
    p.alpha = 2;
    const auto m = make_index_model("beta", p);
    CHECK(std::get<approval::BetaIndependent>(std::get<ApprovalModel>(m.kind)).alpha == 2);
}

TEST_CASE("compute_index falls back to Monte Carlo above the cap") {
    const auto g = VotingGame::from_weights({5, 4, 3, 2, 1, 1}, Quorum(1, 2));
    IndexOptions opt;
    opt.cap = 4;
    opt.mc_runs = 200'000;
    const auto mc = compute_index(g, make_index_model("shapley"), opt);
    CHECK(mc.estimator == Estimator::monte_carlo);
    const auto exact = shapley_exact(g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(mc.values[i] - exact.values[i]) <= 4 * mc.standard_error[i]);
    opt.mc_fallback = false;
    CHECK_THROWS_AS(compute_index(g, make_index_model("beta2"), opt), ResourceLimit);
}

TEST_CASE("benchmark on identical [5,4,1] games") {
    const auto data = resolve_dataset(repeated_541(4));
    REQUIRE(data.ballot_sets.front().vote_of("a").weight == 5);
    REQUIRE(data.ballot_sets.front().vote_of("b").weight == 4);
    const auto models = all_models();
    const auto report = benchmark(data, models);
    CHECK(report.initiatives == 4);
    CHECK(report.observations == 12);
    const auto g = VotingGame::from_weights({5, 4, 1}, Quorum(1, 2));
    const std::vector<std::vector<double>> expected{
        banzhaf_exact(g).values,
        shapley_exact(g).values,
        beta_index_exact(g, 3.00, 1.17).values,
        regression_index_exact(g, 0.7933, 0.0036).values,
        beta2_index_exact(g, 3.00, 1.17).values,
        beta_index_exact(g, 1, 1).values,
        beta2_index_exact(g, 1, 1).values};
    for (std::size_t m = 0; m < models.size(); ++m) {
        const auto& score = report.models[m];
        CHECK(score.exact_games == 4);
        CHECK(*score.predicted.mean(5) == Approx(expected[m][0]));
        CHECK(*score.predicted.mean(4) == Approx(expected[m][1]));
        CHECK(*score.predicted.mean(1) == Approx(expected[m][2]));
        CHECK(score.perplexity >= 1.0);
        CHECK(score.global.squared_error >= 0.0);
    }
    // a (5, yes) alone: 5/10 is not above 1/2, so rejected; missing = 5 - 5 + 5 = 5, not < 5.
    CHECK(*report.measured.mean(5) == 0.0);
}

TEST_CASE("benchmark edge cases and determinism") {
    const auto data = resolve_dataset(repeated_541(3));
    CHECK(benchmark(data, std::vector<IndexModel>{}).models.empty());

    SynthConfig cfg;
    cfg.users = 300;
    cfg.initiatives = 60;
    cfg.seed = 5;
    const auto synth = resolve_dataset(generate_synthetic(cfg));
    BenchmarkOptions opt;
    opt.index.mc_runs = 2'000;
    opt.index.cap = 12;
    opt.index.seed = 9;
    const auto models = all_models();
    const auto a = benchmark(synth, models, opt);
    // reordering initiatives changes nothing
    auto reordered = synth;
    std::reverse(reordered.ballot_sets.begin(), reordered.ballot_sets.end());
    const auto b = benchmark(reordered, models, opt);
    CHECK(a.fingerprint == b.fingerprint);
    for (std::size_t m = 0; m < models.size(); ++m) {
        CHECK(a.models[m].log2_likelihood == b.models[m].log2_likelihood);
        CHECK(a.models[m].global.squared_error == b.models[m].global.squared_error);
    }
    CHECK(a.models[0].monte_carlo_games > 0);
    opt.index.threads = 3;
    const auto c = benchmark(synth, models, opt);
    for (std::size_t m = 0; m < models.size(); ++m) CHECK(a.models[m].log2_likelihood == c.models[m].log2_likelihood);
}

TEST_CASE("beta2 data is predicted better by beta2 than by independent uniform models") {
    // shared approval per initiative; generator defaults give about 100 voters per game
    SynthConfig cfg;
    cfg.seed = 7;
    BenchmarkOptions opt;
    opt.index.mc_runs = 20'000;
    std::vector<IndexModel> models;
    for (const auto* name : {"banzhaf", "uniform", "beta2", "shapley"}) models.push_back(make_index_model(name));
    const auto r = benchmark(resolve_dataset(generate_synthetic(cfg)), models, opt);
    CHECK(r.models[2].perplexity < r.models[0].perplexity);
    CHECK(r.models[2].perplexity < r.models[1].perplexity);
    MESSAGE("beta2 " << r.models[2].perplexity << " banzhaf " << r.models[0].perplexity << " uniform "
                     << r.models[1].perplexity << " shapley " << r.models[3].perplexity);
}
