#pragma once

#include "waymark/geometry.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace waymark
{

/// Double-coverage of the segment [0, edge_length] by closed intervals, one
/// per candidate site.
class CoverProblem
{
public:
    /// Throws std::invalid_argument when an interval leaves [0, edge_length],
    /// is inverted, or when two intervals share a site id.
    CoverProblem(double edge_length, std::vector<CoverInterval> intervals);

    double edge_length() const { return edge_length_; }
    std::span<const CoverInterval> intervals() const { return intervals_; }
    const CoverInterval* find(SiteId site) const;

private:
    double edge_length_;
    std::vector<CoverInterval> intervals_;
};

struct CoverSolution
{
    /// Selection order of the greedy sweep (or ascending ids for the oracle).
    std::vector<SiteId> chosen;

    std::size_t cardinality() const { return chosen.size(); }
};

/// No double cover exists; `uncovered_at` is the edge-local abscissa right of
/// which fewer than two intervals remain available.
class Infeasible : public std::runtime_error
{
public:
    explicit Infeasible(double uncovered_at);
    double uncovered_at() const { return uncovered_at_; }

private:
    double uncovered_at_;
};

class TooLarge : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownSite : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Minimum-cardinality double cover by the frontier sweep.
///
/// Two frontiers are tracked: everything left of `c` is seen twice and
/// everything left of `c1 >= c` at least once. The sweep starts with the two
/// intervals through 0 that reach farthest, then repeatedly adds the unused
/// interval that contains `c`, extends past it, and reaches farthest. Ties go
/// to the lower site id. Throws Infeasible when no such interval exists.
CoverSolution greedy_two_cover(const CoverProblem& problem);

inline constexpr std::size_t brute_force_limit = 20;

/// Exhaustive oracle: smallest subset that double covers the edge, the
/// lexicographically smallest id sequence among equal cardinalities.
/// Throws TooLarge above `brute_force_limit` intervals.
std::optional<CoverSolution> brute_force_two_cover(const CoverProblem& problem);

struct CoverCheck
{
    bool covered = false;
    std::optional<double> first_gap;
};

/// Exact sweep over interval endpoints and the midpoints between them.
/// Duplicate ids in `chosen` count once. Throws UnknownSite.
CoverCheck verify_two_cover(const CoverProblem& problem, std::span<const SiteId> chosen);

} // namespace waymark
