#include "waymark/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace waymark
{

namespace
{

constexpr double pixels_per_meter = 60.0;
constexpr double margin_m = 0.6;

class Canvas
{
public:
    Canvas(double min_x, double min_y, double max_x, double max_y)
        : min_x_(min_x - margin_m), max_y_(max_y + margin_m), width_((max_x - min_x + 2 * margin_m) * pixels_per_meter),
          height_((max_y - min_y + 2 * margin_m) * pixels_per_meter)
    {
    }

    double px(double x) const { return (x - min_x_) * pixels_per_meter; }
    double py(double y) const { return (max_y_ - y) * pixels_per_meter; }
    double width() const { return width_; }
    double height() const { return height_; }

private:
    double min_x_;
    double max_y_;
    double width_;
    double height_;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

constexpr std::array<const char*, 6> interval_colors{"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
                                                     "#e6ab02"};

} // namespace

std::string render_svg(const Instance& instance, const Placement* placement, std::span<const TrajectoryPoint> trajectory)
{
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    auto extend = [&](double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    };
    for (const auto& p : instance.path.waypoints())
        extend(p.x(), p.y());
    for (const auto& s : instance.sites)
        extend(s.position.x(), s.position.y());
    for (const auto& t : trajectory)
    {
        extend(t.x_true, t.y_true);
        extend(t.x_est, t.y_est);
    }
    const Canvas cv(min_x, min_y, max_x, max_y);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(cv.width()) << "\" height=\""
        << fmt(cv.height()) << "\" viewBox=\"0 0 " << fmt(cv.width()) << " " << fmt(cv.height()) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fmt(cv.width()) << "\" height=\"" << fmt(cv.height())
        << "\" fill=\"white\"/>\n";

    svg << "<g id=\"candidates\" fill=\"#bbbbbb\">\n";
    for (const auto& s : instance.sites)
        svg << "<circle cx=\"" << fmt(cv.px(s.position.x())) << "\" cy=\"" << fmt(cv.py(s.position.y()))
            << "\" r=\"2\"/>\n";
    svg << "</g>\n";

    svg << "<g id=\"path\">\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (const auto& p : instance.path.waypoints())
        svg << fmt(cv.px(p.x())) << "," << fmt(cv.py(p.y())) << " ";
    svg << "\"/>\n";
    std::size_t index = 0;
    for (const auto& p : instance.path.waypoints())
    {
        svg << "<circle cx=\"" << fmt(cv.px(p.x())) << "\" cy=\"" << fmt(cv.py(p.y()))
            << "\" r=\"5\" fill=\"black\"/>\n"
            << "<text x=\"" << fmt(cv.px(p.x()) + 7) << "\" y=\"" << fmt(cv.py(p.y()) - 7)
            << "\" font-size=\"12\" font-family=\"sans-serif\">t" << ++index << "</text>\n";
    }
    svg << "</g>\n";

    if (placement != nullptr)
    {
        // Covered intervals are drawn parallel to their edge, one lane per
        // chosen site, alternating sides.
        svg << "<g id=\"intervals\" stroke-width=\"3\" stroke-opacity=\"0.7\">\n";
        for (std::size_t e = 0; e < placement->per_edge_intervals.size() && e < instance.path.edge_count(); ++e)
        {
            const EdgeFrame frame = instance.path.frame(e);
            const auto& ivs = placement->per_edge_intervals[e];
            for (std::size_t k = 0; k < ivs.size(); ++k)
            {
                const double lane = 0.08 * static_cast<double>(k / 2 + 1) * (k % 2 == 0 ? 1.0 : -1.0);
                const Point2 a = frame.to_world(Point2(ivs[k].a, lane));
                const Point2 b = frame.to_world(Point2(ivs[k].b, lane));
                svg << "<line x1=\"" << fmt(cv.px(a.x())) << "\" y1=\"" << fmt(cv.py(a.y())) << "\" x2=\""
                    << fmt(cv.px(b.x())) << "\" y2=\"" << fmt(cv.py(b.y())) << "\" stroke=\""
                    << interval_colors[k % interval_colors.size()] << "\"/>\n";
            }
        }
        svg << "</g>\n";

        svg << "<g id=\"landmarks\" fill=\"#d62728\">\n";
        for (const auto& s : placement->sites)
            svg << "<rect x=\"" << fmt(cv.px(s.position.x()) - 4) << "\" y=\"" << fmt(cv.py(s.position.y()) - 4)
                << "\" width=\"8\" height=\"8\"/>\n";
        svg << "</g>\n";
    }

    if (!trajectory.empty())
    {
        svg << "<g id=\"trajectory\" fill=\"none\" stroke-width=\"1.5\">\n<polyline stroke=\"#1f77b4\" points=\"";
        for (const auto& t : trajectory)
            svg << fmt(cv.px(t.x_true)) << "," << fmt(cv.py(t.y_true)) << " ";
        svg << "\"/>\n<polyline stroke=\"#ff7f0e\" stroke-dasharray=\"4 3\" points=\"";
        for (const auto& t : trajectory)
            svg << fmt(cv.px(t.x_est)) << "," << fmt(cv.py(t.y_est)) << " ";
        svg << "\"/>\n</g>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace waymark
