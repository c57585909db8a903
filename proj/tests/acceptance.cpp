// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "cli_harness.hpp"
#include "oracles.hpp"

#include "waymark/generate.hpp"
#include "waymark/planner.hpp"
#include "waymark/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace waymark;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;
};

Outcome interval_oracle_equivalence()
{
    Rng rng(2024);
    int present = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto c = oracle::random_visibility_case(rng);
        const EdgeFrame f = edge_frame(c.start, c.end);
        const double d = f.length();
        const auto analytic = visibility_interval(f.to_local(c.site), d, c.cam);
        const auto sampled = oracle::sample_visibility(c.start, c.end, c.site, c.cam, 1e-4 * d);
        if (analytic.has_value() != sampled.has_value())
            return {false, "presence mismatch at configuration " + std::to_string(trial)};
        if (!analytic)
            continue;
        ++present;
        const double err = std::max(std::abs(analytic->a - sampled->lo), std::abs(analytic->b - sampled->hi)) / d;
        worst = std::max(worst, err);
        if (err > 1e-3 || !sampled->contiguous)
            return {false, "endpoint error " + std::to_string(err) + " d at configuration " + std::to_string(trial)};
    }
    return {true, "1000 configurations, " + std::to_string(present) + " visible, worst endpoint error " +
                      std::to_string(worst) + " d"};
}

Outcome greedy_optimality()
{
    Rng rng(1234);
    int feasible = 0;
    int infeasible = 0;
    int attempts = 0;
    while (feasible < 500 && attempts < 100000)
    {
        ++attempts;
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 11);
        const CoverProblem problem = oracle::random_cover_problem(rng, n);
        const auto brute = brute_force_two_cover(problem);
        const auto exhaustive = oracle::min_two_cover_size(problem.edge_length(), problem.intervals());
        std::optional<CoverSolution> greedy;
        try
        {
            greedy = greedy_two_cover(problem);
        }
        catch (const Infeasible&)
        {
        }
        if (brute.has_value() != exhaustive.has_value() || greedy.has_value() != brute.has_value())
            return {false, "feasibility disagreement on attempt " + std::to_string(attempts)};
        if (!brute)
        {
            ++infeasible;
            continue;
        }
        ++feasible;
        if (greedy->cardinality() != brute->cardinality() || brute->cardinality() != *exhaustive ||
            !verify_two_cover(problem, greedy->chosen).covered)
            return {false, "cardinality mismatch on attempt " + std::to_string(attempts)};
    }
    if (feasible < 500)
        return {false, "only " + std::to_string(feasible) + " feasible instances drawn"};
    return {true, "500/500 feasible optimal, " + std::to_string(infeasible) + " infeasible agreed"};
}

Outcome placement_soundness()
{
    const std::vector<std::size_t> targets{5, 5, 5, 6, 6, 6, 7, 7, 7};
    std::ostringstream totals;
    std::uint64_t seed = 1;
    for (std::size_t i = 0; i < targets.size(); ++i)
    {
        GenerateOptions g;
        g.n_targets = targets[i];
        std::optional<Placement> placement;
        Instance inst;
        for (; !placement && seed < 10000; ++seed)
        {
            g.seed = seed;
            inst = generate_instance(g);
            try
            {
                placement = plan_placement(inst.path, inst.sites, inst.camera);
            }
            catch (const EdgeInfeasible&)
            {
            }
        }
        if (!placement)
            return {false, "no feasible instance with " + std::to_string(targets[i]) + " targets"};

        for (std::size_t e = 0; e < inst.path.edge_count(); ++e)
        {
            const double step = 1e-3 * inst.path.frame(e).length();
            const auto report = verify_placement(inst.path, *placement, inst.camera, step);
            const auto& cov = report.edges[e];
            if (cov.first_violation || cov.min_visible < 2)
                return {false, "seed " + std::to_string(g.seed) + " edge " + std::to_string(e) + " has a violation"};
            if (placement->per_edge[e].size() < 2)
                return {false, "seed " + std::to_string(g.seed) + " edge " + std::to_string(e) + " has < 2 landmarks"};
        }
        const std::size_t total = placement->total();
        if (total < 2 || total > 60)
            return {false, "seed " + std::to_string(g.seed) + " places " + std::to_string(total) + " landmarks"};
        totals << (i ? ", " : "") << targets[i] << "t/seed " << g.seed << ": " << total;
    }
    return {true, "landmarks " + totals.str()};
}

Outcome eif_matches_ekf()
{
    Rng rng(100);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const RobotState mean{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-M_PI, M_PI)};
        Mat3 a;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                a(r, c) = rng.uniform(-1.0, 1.0);
        const Mat3 cov = rng.uniform(1e-4, 1e-1) * (a * a.transpose() + 0.1 * Mat3::Identity());
        const Control u{rng.uniform(0.0, 0.5), rng.uniform(-1.0, 1.0)};
        const double dt = rng.uniform(0.01, 0.2);
        const ProcessNoise q{rng.uniform(0, 0.05), rng.uniform(0, 0.05), rng.uniform(0, 0.02)};
        const double sigma = rng.uniform(0.005, 0.1);

        std::vector<BearingObservation> obs;
        std::vector<Point2> landmarks;
        std::vector<double> bearings;
        const int m = 1 + static_cast<int>(rng.uniform() * 4);
        for (int k = 0; k < m; ++k)
        {
            const Point2 l(mean.x + rng.uniform(1, 3) * (rng.uniform() < 0.5 ? -1 : 1),
                           mean.y + rng.uniform(1, 3) * (rng.uniform() < 0.5 ? -1 : 1));
            const double z = wrap_angle(rng.uniform(-M_PI, M_PI));
            obs.push_back({l, z});
            landmarks.push_back(l);
            bearings.push_back(z);
        }

        auto info = InformationState::from_moments(mean, cov);
        info = eif_update(eif_predict(info, u, dt, q), obs, sigma);
        oracle::MomentEkf ekf{mean.vector(), cov};
        ekf.predict(u.v, u.omega, dt, Vec3(q.x, q.y, q.psi));
        ekf.update(landmarks, bearings, sigma);

        const RobotState got = info.mean();
        const double err = std::max({std::abs(got.x - ekf.mean(0)), std::abs(got.y - ekf.mean(1)),
                                     std::abs(wrap_angle(got.psi - ekf.mean(2))),
                                     (info.covariance() - ekf.cov).cwiseAbs().maxCoeff()});
        worst = std::max(worst, err);
        if (err > 1e-9)
            return {false, "step " + std::to_string(trial) + " differs by " + std::to_string(err)};
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", worst);
    return {true, std::string("100 steps, worst difference ") + buf};
}

Outcome localization_quality()
{
    GenerateOptions g;
    g.seed = 6;
    const Instance inst = generate_instance(g);
    const Placement placement = plan_placement(inst.path, inst.sites, inst.camera);

    int good = 0;
    double lowest = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        SimConfig cfg;
        cfg.rng_seed = seed;
        const auto report = three_sigma_report(simulate(inst.path, placement, inst.camera, cfg));
        good += report.all_at_least(0.95) ? 1 : 0;
        for (const auto& axis : report.axes)
            lowest = std::min(lowest, axis.fraction_inside);
    }

    SimConfig quiet;
    quiet.process_noise = {};
    quiet.bearing_noise_std = 0.0;
    quiet.perturb_initial_estimate = false;
    double noiseless_err = 0.0;
    for (const auto& r : simulate(inst.path, placement, inst.camera, quiet).records)
        for (double e : r.error)
            noiseless_err = std::max(noiseless_err, std::abs(e));

    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/20 seeds >= 95%% on every axis (lowest %.4f), noiseless max error %.3g", good,
                  lowest, noiseless_err);
    return {good >= 18 && noiseless_err <= 1e-6, buf};
}

Outcome determinism()
{
    testing::CliHarness h("acceptance");
    const std::string gen = "generate --seed 6 --targets 6";
    std::string outputs[2];
    for (int run = 0; run < 2; ++run)
    {
        const std::string tag = std::to_string(run);
        const std::string inst = h.path("i" + tag + ".json");
        const std::string plan = h.path("p" + tag + ".json");
        const std::string trace = h.path("t" + tag + ".csv");
        if (h.run(gen + " --out " + inst) != 0 || h.run("plan --instance " + inst + " --out " + plan) != 0 ||
            h.run("simulate --instance " + inst + " --placement " + plan + " --seed 4 --out " + trace) != 0)
            return {false, "pipeline run " + tag + " failed"};
        outputs[run] = h.read("i" + tag + ".json") + '\x1e' + h.read("p" + tag + ".json") + '\x1e' +
                       h.read("t" + tag + ".csv");
    }
    if (outputs[0] != outputs[1])
        return {false, "outputs differ between runs"};
    return {true, "instance, placement and trace identical (" + std::to_string(outputs[0].size()) + " bytes)"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"interval oracle equivalence", interval_oracle_equivalence},
        {"greedy optimality", greedy_optimality},
        {"placement soundness", placement_soundness},
        {"information filter matches EKF", eif_matches_ekf},
        {"localization quality", localization_quality},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome out;
        try
        {
            out = criteria[i].second();
        }
        catch (const std::exception& err)
        {
            out = {false, std::string("exception: ") + err.what()};
        }
        failures += out.pass ? 0 : 1;
        std::cout << (out.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << out.detail
                  << std::endl;
    }
    std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
