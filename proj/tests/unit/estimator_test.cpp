#include <schedlat/error.hpp>
#include <schedlat/estimator.hpp>
#include <schedlat/rng.hpp>

#include <oracle.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace schedlat;

namespace {

std::vector<Observation> power_law(double t_s, double alpha, std::vector<std::uint64_t> ns) {
    std::vector<Observation> obs;
    for (auto n : ns) obs.push_back({n, oracle::delta_t(t_s, alpha, n), "1", "synthetic"});
    return obs;
}

} // namespace

TEST(DeriveObservations, Subtraction) {
    const std::vector<RunRecord> runs{{240, 2774.0, 240.0, "1", "slurm"},
                                      {4, 240.0, 240.0, "1", "x"},
                                      {8, 255.0, 240.0, "3", "slurm"}};
    const auto obs = derive_observations(runs);
    ASSERT_EQ(obs.size(), 3u);
    EXPECT_EQ(obs[0].delta_t_obs, 2534.0);
    EXPECT_EQ(obs[1].delta_t_obs, 0.0);
    EXPECT_EQ(obs[2].delta_t_obs, 15.0);
    EXPECT_EQ(obs[2].trial_id, "3");
    EXPECT_EQ(obs[2].source, "slurm");
}

TEST(DeriveObservations, RejectsNonPositiveJobTime) {
    const std::vector<RunRecord> runs{{4, 240.0, 0.0, "1", "x"}};
    EXPECT_THROW(derive_observations(runs), ParameterError);
}

TEST(Fit, NoiselessFourPoints) {
    const auto fit = fit_power_law(power_law(3.4, 1.1, {4, 8, 48, 240}));
    EXPECT_LT(oracle::rel_diff(fit.t_s_hat, 3.4), 1e-9);
    EXPECT_LT(oracle::rel_diff(fit.alpha_s_hat, 1.1), 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_EQ(fit.points_used, 4u);
    EXPECT_EQ(fit.points_excluded, 0u);
    ASSERT_EQ(fit.residuals.size(), 4u);
    for (double r : fit.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(Fit, SlurmAllPointsIsFrozen) {
    // Plain log-log OLS over all twelve trial points. Reference values come
    // from an independent least-squares solve of the same data.
    const auto runs = builtin_runs();
    const auto obs = observations_for(runs, "slurm");
    ASSERT_EQ(obs.size(), 12u);
    const auto fit = fit_power_law(obs);
    EXPECT_LT(oracle::rel_diff(fit.t_s_hat, 5.229817660929326), 1e-9);
    EXPECT_LT(oracle::rel_diff(fit.alpha_s_hat, 1.1071015986145947), 1e-9);
    EXPECT_EQ(fit.points_used, 12u);
}

TEST(Fit, SlurmWithoutShotNoiseMatchesPublished) {
    const auto runs = builtin_runs();
    const auto fit = fit_power_law(observations_for(runs, "slurm"), {kReproductionMinN});
    EXPECT_GT(fit.t_s_hat, 2.2 / 2);
    EXPECT_LT(fit.t_s_hat, 2.2 * 2);
    EXPECT_NEAR(fit.alpha_s_hat, 1.3, 0.2);
    EXPECT_EQ(fit.points_used, 9u);
    EXPECT_EQ(fit.points_excluded, 3u);
    EXPECT_FALSE(fit.warnings.empty());
}

TEST(Fit, YarnNinePoints) {
    const auto runs = builtin_runs();
    const auto obs = observations_for(runs, "yarn");
    ASSERT_EQ(obs.size(), 9u);
    const auto fit = fit_power_law(obs);
    EXPECT_GT(fit.t_s_hat, 33.0 / 2);
    EXPECT_LT(fit.t_s_hat, 33.0 * 2);
    EXPECT_NEAR(fit.alpha_s_hat, 1.0, 0.2);
}

TEST(Fit, RoundTripRandomProfiles) {
    Rng rng(20240501);
    for (int i = 0; i < 200; ++i) {
        const double t_s = std::exp(rng.uniform(std::log(0.1), std::log(100.0)));
        const double alpha = rng.uniform(0.5, 2.0);
        const std::uint64_t n1 = 1 + rng.next_u64() % 100;
        const std::uint64_t n2 = n1 + 1 + rng.next_u64() % 10000;
        const auto fit = fit_power_law(power_law(t_s, alpha, {n1, n2}));
        ASSERT_LT(oracle::rel_diff(fit.t_s_hat, t_s), 1e-6) << t_s << " " << alpha;
        ASSERT_LT(oracle::rel_diff(fit.alpha_s_hat, alpha), 1e-6);
    }
}

TEST(Fit, NoiseRobustness) {
    int within = 0;
    const int reps = 1000;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(1000 + rep);
        std::vector<Observation> obs;
        for (std::uint64_t n : {4u, 8u, 48u, 240u}) {
            for (int trial = 0; trial < 3; ++trial) {
                const double clean = oracle::delta_t(2.2, 1.3, n);
                obs.push_back({n, clean * std::exp(0.1 * rng.normal()), std::to_string(trial), "s"});
            }
        }
        const auto fit = fit_power_law(obs);
        within += std::abs(fit.alpha_s_hat - 1.3) <= 0.15;
    }
    EXPECT_GE(within, 950) << within << " of " << reps;
}

TEST(Fit, ScaleEquivariance) {
    const auto runs = builtin_runs();
    const auto obs = observations_for(runs, "grid-engine");
    const auto base = fit_power_law(obs);
    for (double c : {1e-3, 0.5, 4.0, 1e6}) {
        auto scaled = obs;
        for (auto& o : scaled) o.delta_t_obs *= c;
        const auto fit = fit_power_law(scaled);
        EXPECT_LT(oracle::rel_diff(fit.t_s_hat, base.t_s_hat * c), 1e-12) << c;
        EXPECT_LT(oracle::rel_diff(fit.alpha_s_hat, base.alpha_s_hat), 1e-12) << c;
    }
}

TEST(Fit, NonPositiveObservationsExcluded) {
    auto obs = power_law(2.0, 1.2, {4, 8, 48});
    obs.push_back({16, 0.0, "x", "s"});
    obs.push_back({32, -3.0, "y", "s"});
    const auto fit = fit_power_law(obs);
    EXPECT_EQ(fit.points_used, 3u);
    EXPECT_EQ(fit.points_excluded, 2u);
    EXPECT_EQ(fit.points_used + fit.points_excluded, obs.size());
    EXPECT_FALSE(fit.warnings.empty());
    EXPECT_LT(oracle::rel_diff(fit.alpha_s_hat, 1.2), 1e-9);
}

TEST(Fit, ExclusionAccountingWithMinN) {
    const auto runs = builtin_runs();
    for (const auto& name : schedulers_in(runs)) {
        const auto obs = observations_for(runs, name);
        for (std::uint64_t min_n : {1u, 8u}) {
            const auto fit = fit_power_law(obs, {min_n});
            EXPECT_EQ(fit.points_used + fit.points_excluded, obs.size()) << name;
            EXPECT_GE(fit.r_squared, 0.0);
            EXPECT_LE(fit.r_squared, 1.0);
        }
    }
}

TEST(Fit, Infeasible) {
    EXPECT_THROW(fit_power_law({}), FitInfeasibleError);
    EXPECT_THROW(fit_power_law(power_law(2.0, 1.0, {8})), FitInfeasibleError);
    EXPECT_THROW(fit_power_law(power_law(2.0, 1.0, {8, 8, 8})), FitInfeasibleError);
    auto obs = power_law(2.0, 1.0, {8});
    obs.push_back({16, -1.0, "", ""});
    EXPECT_THROW(fit_power_law(obs), FitInfeasibleError);
    EXPECT_THROW(fit_power_law(power_law(2.0, 1.0, {4, 8}), {48}), FitInfeasibleError);
}

TEST(Predict, Examples) {
    FitResult slurm;
    slurm.t_s_hat = 2.2;
    slurm.alpha_s_hat = 1.3;
    EXPECT_NEAR(predict_total(slurm, {1.0, 240}), 2973.4, 0.5);

    FitResult tiny;
    tiny.t_s_hat = 1e-12;
    tiny.alpha_s_hat = 1.3;
    EXPECT_NEAR(predict_total(tiny, {5.0, 48}), 240.0, 1e-6);

    FitResult yarn;
    yarn.t_s_hat = 33.0;
    yarn.alpha_s_hat = 1.0;
    EXPECT_EQ(predict_total(yarn, {5.0, 48}), 1824.0);
}

TEST(Runs, BuiltinShape) {
    const auto runs = builtin_runs();
    EXPECT_EQ(runs.size(), 45u);
    const std::vector<std::string> expected{"slurm", "grid-engine", "mesos", "yarn"};
    EXPECT_EQ(schedulers_in(runs), expected);
    for (const auto& r : runs) {
        EXPECT_EQ(r.processors, 1408u);
        EXPECT_EQ(r.total_tasks, r.tasks_per_proc * r.processors);
        EXPECT_EQ(r.task_time * static_cast<double>(r.tasks_per_proc), 240.0);
    }
}

TEST(Runs, FirstSlurmRapidTrial) {
    const auto runs = builtin_runs();
    const auto rec = runs.front().to_record();
    EXPECT_EQ(rec.n, 240u);
    EXPECT_EQ(rec.job_time, 240.0);
    EXPECT_EQ(rec.total_runtime, 2774.0);
}

TEST(Runs, CsvErrors) {
    std::istringstream bad_header("a,b\n");
    EXPECT_THROW(read_runs_csv(bad_header), ParseError);
    std::istringstream bad_row(
        "scheduler,trial,task_time_s,tasks_per_proc,processors,total_tasks,runtime_s\n"
        "slurm,1,1,240,1408,337920,2774\n"
        "slurm,2,1,x,1408,337920,2774\n");
    try {
        read_runs_csv(bad_row);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}
