#include "waymark/cover.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace waymark
{

CoverProblem::CoverProblem(double edge_length, std::vector<CoverInterval> intervals)
    : edge_length_(edge_length), intervals_(std::move(intervals))
{
    if (!(edge_length > 0.0))
        throw std::invalid_argument("CoverProblem: edge length must be positive");

    std::set<SiteId> seen;
    for (const auto& iv : intervals_)
    {
        if (!(0.0 <= iv.a && iv.a <= iv.b && iv.b <= edge_length))
            throw std::invalid_argument("CoverProblem: interval of site " + std::to_string(to_index(iv.site)) +
                                        " is not inside [0, d]");
        if (!seen.insert(iv.site).second)
            throw std::invalid_argument("CoverProblem: duplicate site " + std::to_string(to_index(iv.site)));
    }
}

const CoverInterval* CoverProblem::find(SiteId site) const
{
    auto it = std::find_if(intervals_.begin(), intervals_.end(), [site](const auto& iv) { return iv.site == site; });
    return it == intervals_.end() ? nullptr : &*it;
}

Infeasible::Infeasible(double uncovered_at)
    : std::runtime_error("no double cover beyond x = " + std::to_string(uncovered_at)), uncovered_at_(uncovered_at)
{
}

namespace
{

// Farther right endpoint first, then lower id.
bool reaches_farther(const CoverInterval& lhs, const CoverInterval& rhs)
{
    if (lhs.b != rhs.b)
        return lhs.b > rhs.b;
    return lhs.site < rhs.site;
}

} // namespace

CoverSolution greedy_two_cover(const CoverProblem& problem)
{
    const double d = problem.edge_length();
    std::vector<CoverInterval> pool(problem.intervals().begin(), problem.intervals().end());
    std::sort(pool.begin(), pool.end(), reaches_farther);
    std::vector<bool> used(pool.size(), false);

    CoverSolution solution;
    // Pool is sorted by reach, so the first two hits through 0 are the
    // largest and second largest endpoints.
    for (std::size_t i = 0; i < pool.size() && solution.chosen.size() < 2; ++i)
    {
        if (pool[i].a <= 0.0)
        {
            used[i] = true;
            solution.chosen.push_back(pool[i].site);
        }
    }
    if (solution.chosen.size() < 2)
        throw Infeasible(0.0);

    double c = problem.find(solution.chosen[1])->b;
    double c1 = problem.find(solution.chosen[0])->b;

    while (c < d)
    {
        std::size_t pick = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
        {
            if (!used[i] && pool[i].a <= c && pool[i].b > c)
            {
                pick = i;
                break;
            }
        }
        if (pick == pool.size())
            throw Infeasible(c);

        used[pick] = true;
        solution.chosen.push_back(pool[pick].site);
        const double b = pool[pick].b;
        const double progress = c + c1;
        c = std::min(c1, b);
        c1 = std::max(c1, b);
        // One of the two frontiers moves strictly right on every pick.
        if (!(c + c1 > progress))
            throw std::logic_error("greedy_two_cover: frontier did not advance");
    }
    return solution;
}

std::optional<CoverSolution> brute_force_two_cover(const CoverProblem& problem)
{
    const std::size_t n = problem.intervals().size();
    if (n > brute_force_limit)
        throw TooLarge("brute_force_two_cover: " + std::to_string(n) + " intervals exceed the limit of " +
                       std::to_string(brute_force_limit));

    std::vector<SiteId> ids;
    for (const auto& iv : problem.intervals())
        ids.push_back(iv.site);
    std::sort(ids.begin(), ids.end());

    // Combinations of each size in lexicographic order.
    std::vector<SiteId> subset;
    for (std::size_t k = 2; k <= n; ++k)
    {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (true)
        {
            subset.clear();
            for (auto i : idx)
                subset.push_back(ids[i]);
            if (verify_two_cover(problem, subset).covered)
                return CoverSolution{subset};

            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == n - k + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < k; ++i)
                idx[i] = idx[i - 1] + 1;
        }
    }
    return std::nullopt;
}

CoverCheck verify_two_cover(const CoverProblem& problem, std::span<const SiteId> chosen)
{
    const double d = problem.edge_length();
    const std::set<SiteId> unique(chosen.begin(), chosen.end());

    std::vector<CoverInterval> active;
    std::vector<double> critical{0.0, d};
    for (SiteId id : unique)
    {
        const CoverInterval* iv = problem.find(id);
        if (iv == nullptr)
            throw UnknownSite("verify_two_cover: site " + std::to_string(to_index(id)) + " is not in the problem");
        active.push_back(*iv);
        critical.push_back(iv->a);
        critical.push_back(iv->b);
    }
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    auto multiplicity = [&](double s) {
        return std::count_if(active.begin(), active.end(), [s](const auto& iv) { return iv.contains(s); });
    };

    for (std::size_t i = 0; i < critical.size(); ++i)
    {
        if (multiplicity(critical[i]) < 2)
            return {false, critical[i]};
        if (i + 1 < critical.size())
        {
            const double mid = 0.5 * (critical[i] + critical[i + 1]);
            if (multiplicity(mid) < 2)
                return {false, mid};
        }
    }
    return {true, std::nullopt};
}

} // namespace waymark
