#include "oracles.hpp"

#include "waymark/cover.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace waymark;

namespace
{

constexpr SiteId A{0}, B{1}, C{2}, D{3}, E{4};

CoverProblem five_interval_problem()
{
    return CoverProblem(1.0, {{A, 0.0, 0.6}, {B, 0.0, 0.4}, {C, 0.3, 1.0}, {D, 0.5, 1.0}, {E, 0.35, 0.8}});
}

} // namespace

TEST(CoverProblem, Validation)
{
    EXPECT_THROW(CoverProblem(1.0, {{A, -0.1, 0.5}}), std::invalid_argument);
    EXPECT_THROW(CoverProblem(1.0, {{A, 0.6, 0.5}}), std::invalid_argument);
    EXPECT_THROW(CoverProblem(1.0, {{A, 0.0, 1.1}}), std::invalid_argument);
    EXPECT_THROW(CoverProblem(1.0, {{A, 0.0, 1.0}, {A, 0.0, 0.5}}), std::invalid_argument);
    EXPECT_THROW(CoverProblem(0.0, {}), std::invalid_argument);
}

TEST(GreedyTwoCover, TwoFullIntervals)
{
    const auto sol = greedy_two_cover(CoverProblem(1.0, {{A, 0, 1}, {B, 0, 1}}));
    EXPECT_EQ(sol.chosen, (std::vector<SiteId>{A, B}));
    EXPECT_EQ(sol.cardinality(), 2u);
}

TEST(GreedyTwoCover, FiveIntervalInstance)
{
    const auto problem = five_interval_problem();
    const auto sol = greedy_two_cover(problem);
    EXPECT_EQ(sol.chosen, (std::vector<SiteId>{A, B, C, D}));
    EXPECT_TRUE(verify_two_cover(problem, sol.chosen).covered);

    // Independent bitmask enumeration agrees that four is the minimum.
    EXPECT_EQ(oracle::min_two_cover_size(1.0, problem.intervals()), 4u);
}

TEST(GreedyTwoCover, SingleIntervalInfeasibleAtZero)
{
    try
    {
        greedy_two_cover(CoverProblem(1.0, {{A, 0, 1}}));
        FAIL() << "expected Infeasible";
    }
    catch (const Infeasible& err)
    {
        EXPECT_DOUBLE_EQ(err.uncovered_at(), 0.0);
    }
}

TEST(GreedyTwoCover, ReportsFrontierOfGap)
{
    const CoverProblem problem(1.0, {{A, 0, 0.5}, {B, 0, 0.5}, {C, 0.6, 1}, {D, 0.6, 1}});
    try
    {
        greedy_two_cover(problem);
        FAIL() << "expected Infeasible";
    }
    catch (const Infeasible& err)
    {
        EXPECT_DOUBLE_EQ(err.uncovered_at(), 0.5);
    }
}

TEST(GreedyTwoCover, IntervalEndingAtFrontierCannotExtendIt)
{
    // C ends exactly where A and B end, so it cannot help past 0.5.
    const CoverProblem problem(1.0, {{A, 0, 0.5}, {B, 0, 0.5}, {C, 0.2, 0.5}, {D, 0.5, 1}});
    EXPECT_THROW(greedy_two_cover(problem), Infeasible);
    EXPECT_FALSE(brute_force_two_cover(problem));
}

TEST(GreedyTwoCover, TiesGoToLowerId)
{
    const CoverProblem problem(1.0, {{D, 0, 1}, {C, 0, 1}, {B, 0, 1}, {A, 0, 0.5}});
    EXPECT_EQ(greedy_two_cover(problem).chosen, (std::vector<SiteId>{B, C}));
}

TEST(GreedyTwoCover, DegenerateIntervalsAtOrigin)
{
    const CoverProblem problem(1.0, {{A, 0, 0}, {B, 0, 1}, {C, 0, 1}});
    EXPECT_EQ(greedy_two_cover(problem).chosen, (std::vector<SiteId>{B, C}));
    EXPECT_THROW(greedy_two_cover(CoverProblem(1.0, {{A, 0, 0}, {B, 0, 0}, {C, 0, 1}})), Infeasible);
}

TEST(BruteForceTwoCover, Examples)
{
    const auto five = brute_force_two_cover(five_interval_problem());
    ASSERT_TRUE(five);
    EXPECT_EQ(five->cardinality(), 4u);
    EXPECT_EQ(five->chosen, (std::vector<SiteId>{A, B, C, D}));

    EXPECT_FALSE(brute_force_two_cover(CoverProblem(1.0, {{A, 0, 1}})));

    const auto redundant = brute_force_two_cover(CoverProblem(1.0, {{A, 0, 1}, {B, 0, 1}, {C, 0.2, 0.8}}));
    ASSERT_TRUE(redundant);
    EXPECT_EQ(redundant->chosen, (std::vector<SiteId>{A, B}));
}

TEST(BruteForceTwoCover, LexicographicTieBreak)
{
    const auto sol = brute_force_two_cover(CoverProblem(1.0, {{C, 0, 1}, {B, 0, 1}, {A, 0, 1}}));
    ASSERT_TRUE(sol);
    EXPECT_EQ(sol->chosen, (std::vector<SiteId>{A, B}));
}

TEST(BruteForceTwoCover, GuardsSize)
{
    std::vector<CoverInterval> ivs;
    for (std::uint32_t i = 0; i <= brute_force_limit; ++i)
        ivs.push_back({SiteId{i}, 0.0, 1.0});
    EXPECT_THROW(brute_force_two_cover(CoverProblem(1.0, ivs)), TooLarge);
    ivs.pop_back();
    EXPECT_NO_THROW(brute_force_two_cover(CoverProblem(1.0, ivs)));
}

TEST(BruteForceTwoCover, AgreesWithBitmaskEnumeration)
{
    Rng rng(404);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto problem = oracle::random_cover_problem(rng, 1 + trial % 10);
        const auto sol = brute_force_two_cover(problem);
        const auto size = oracle::min_two_cover_size(1.0, problem.intervals());
        ASSERT_EQ(sol.has_value(), size.has_value());
        if (sol)
            EXPECT_EQ(sol->cardinality(), *size);
    }
}

TEST(VerifyTwoCover, Examples)
{
    EXPECT_TRUE(verify_two_cover(CoverProblem(1.0, {{A, 0, 1}, {B, 0, 1}}), std::vector<SiteId>{A, B}).covered);

    const CoverProblem gap(1.0, {{A, 0, 0.5}, {B, 0, 0.5}, {C, 0.6, 1}, {D, 0.6, 1}});
    const auto check = verify_two_cover(gap, std::vector<SiteId>{A, B, C, D});
    EXPECT_FALSE(check.covered);
    ASSERT_TRUE(check.first_gap);
    EXPECT_GT(*check.first_gap, 0.5);
    EXPECT_LT(*check.first_gap, 0.6);
}

TEST(VerifyTwoCover, EmptyChoiceFailsAtZero)
{
    const auto check = verify_two_cover(five_interval_problem(), std::vector<SiteId>{});
    EXPECT_FALSE(check.covered);
    EXPECT_EQ(check.first_gap, 0.0);
}

TEST(VerifyTwoCover, DuplicateIdsCountOnce)
{
    const CoverProblem problem(1.0, {{A, 0, 1}, {B, 0, 1}});
    EXPECT_FALSE(verify_two_cover(problem, std::vector<SiteId>{A, A}).covered);
}

TEST(VerifyTwoCover, TouchingEndpointsCoverThePoint)
{
    const CoverProblem problem(1.0, {{A, 0, 0.5}, {B, 0, 0.5}, {C, 0.5, 1}, {D, 0.5, 1}});
    EXPECT_TRUE(verify_two_cover(problem, std::vector<SiteId>{A, B, C, D}).covered);
}

TEST(VerifyTwoCover, UnknownSite)
{
    EXPECT_THROW(verify_two_cover(five_interval_problem(), std::vector<SiteId>{SiteId{42}}), UnknownSite);
}

TEST(GreedyTwoCover, OptimalCompleteSoundAndDeterministic)
{
    Rng rng(1234);
    int feasible = 0;
    int infeasible = 0;
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto problem = oracle::random_cover_problem(rng, 2 + trial % 11);
        const auto best = brute_force_two_cover(problem);
        std::optional<CoverSolution> greedy;
        try
        {
            greedy = greedy_two_cover(problem);
        }
        catch (const Infeasible&)
        {
        }

        ASSERT_EQ(best.has_value(), greedy.has_value()) << "trial " << trial;
        if (!greedy)
        {
            ++infeasible;
            continue;
        }
        ++feasible;
        EXPECT_EQ(greedy->cardinality(), best->cardinality()) << "trial " << trial;
        EXPECT_TRUE(verify_two_cover(problem, greedy->chosen).covered);
        EXPECT_EQ(std::set<SiteId>(greedy->chosen.begin(), greedy->chosen.end()).size(), greedy->cardinality());
        EXPECT_EQ(greedy_two_cover(problem).chosen, greedy->chosen);
    }
    EXPECT_GT(feasible, 100);
    EXPECT_GT(infeasible, 20);
}

TEST(GreedyTwoCover, FeasibleByConstructionAlwaysVerifies)
{
    // A chain of overlapping pairs plus random clutter is always coverable.
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double d = rng.uniform(0.5, 10.0);
        std::vector<CoverInterval> ivs;
        std::uint32_t next = 0;
        double left = 0.0;
        while (left < d)
        {
            const double right = std::min(d, left + rng.uniform(0.05, 0.5) * d);
            ivs.push_back({SiteId{next++}, left, right});
            ivs.push_back({SiteId{next++}, left, right});
            left = right;
        }
        for (int k = 0; k < 30; ++k)
        {
            double a = rng.uniform(0.0, d), b = rng.uniform(0.0, d);
            if (a > b)
                std::swap(a, b);
            ivs.push_back({SiteId{next++}, a, b});
        }
        const CoverProblem problem(d, ivs);
        const auto sol = greedy_two_cover(problem);
        EXPECT_TRUE(verify_two_cover(problem, sol.chosen).covered) << "trial " << trial;
    }
}
