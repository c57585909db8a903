#include "waymark/generate.hpp"
#include "waymark/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace waymark;

namespace
{

double tour_length(const std::vector<Point2>& t)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        total += distance(t[i], t[i + 1]);
    return total;
}

bool less_point(const Point2& a, const Point2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); }

} // namespace

TEST(GridSites, IncludesBothBoundaries)
{
    const auto sites = grid_sites(4.0, 8.0, 0.5);
    ASSERT_EQ(sites.size(), 9u * 17u);
    EXPECT_EQ(sites.front().position, Point2(0, 0));
    EXPECT_EQ(sites.back().position, Point2(4, 8));
    EXPECT_EQ(sites[1].position, Point2(0.5, 0));
    for (std::size_t i = 0; i < sites.size(); ++i)
        EXPECT_EQ(to_index(sites[i].id), i);
    EXPECT_EQ(grid_sites(1.0, 1.0, 0.3).size(), 16u);
}

TEST(GenerateInstance, Defaults)
{
    const Instance inst = generate_instance(GenerateOptions{});
    EXPECT_EQ(inst.path.waypoints().size(), 6u);
    EXPECT_EQ(inst.sites.size(), 153u);
    EXPECT_EQ(inst.seed, 1u);
    for (const auto& p : inst.path.waypoints())
    {
        EXPECT_GE(p.x(), 0.0);
        EXPECT_LE(p.x(), 4.0);
        EXPECT_GE(p.y(), 0.0);
        EXPECT_LE(p.y(), 8.0);
    }
    EXPECT_DOUBLE_EQ(inst.camera.range(), 2.0);
    EXPECT_NEAR(inst.camera.view_angle(), deg_to_rad(50.0), 1e-15);
    EXPECT_DOUBLE_EQ(inst.camera.clearance(), 0.05);
}

TEST(GenerateInstance, TwoTargetsGiveOneEdge)
{
    GenerateOptions g;
    g.n_targets = 2;
    EXPECT_EQ(generate_instance(g).path.edge_count(), 1u);
    g.n_targets = 1;
    EXPECT_THROW(generate_instance(g), std::invalid_argument);
}

TEST(GenerateInstance, SameSeedSameFile)
{
    GenerateOptions g;
    g.seed = 17;
    EXPECT_EQ(dump_instance(generate_instance(g)), dump_instance(generate_instance(g)));
    GenerateOptions h = g;
    h.seed = 18;
    EXPECT_NE(dump_instance(generate_instance(g)), dump_instance(generate_instance(h)));
}

TEST(OrderTour, PermutationAndTwoOptOptimal)
{
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<Point2> pts;
        for (int i = 0; i < 3 + trial % 8; ++i)
            pts.emplace_back(rng.uniform(0, 4), rng.uniform(0, 8));
        auto tour = order_tour(pts);

        auto sorted_in = pts, sorted_out = tour;
        std::sort(sorted_in.begin(), sorted_in.end(), less_point);
        std::sort(sorted_out.begin(), sorted_out.end(), less_point);
        ASSERT_EQ(sorted_in, sorted_out);

        // No single segment reversal shortens the result.
        const double len = tour_length(tour);
        for (std::size_t i = 0; i + 1 < tour.size(); ++i)
            for (std::size_t j = i + 1; j < tour.size(); ++j)
            {
                auto alt = tour;
                std::reverse(alt.begin() + static_cast<std::ptrdiff_t>(i), alt.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                EXPECT_GE(tour_length(alt), len - 1e-9);
            }
    }
}

TEST(OrderTour, CollinearPointsInOrder)
{
    const std::vector<Point2> pts{Point2(0, 0), Point2(3, 0), Point2(1, 0), Point2(2, 0)};
    const auto tour = order_tour(pts);
    EXPECT_DOUBLE_EQ(tour_length(tour), 3.0);
}
