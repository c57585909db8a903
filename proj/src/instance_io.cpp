#include "waymark/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace waymark
{

using Json = nlohmann::ordered_json;

namespace
{

Json parse_json(std::string_view text)
{
    try
    {
        return Json::parse(text.begin(), text.end());
    }
    catch (const Json::parse_error& err)
    {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(err.byte == 0 ? 0 : err.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed JSON");
    }
}

const Json& field(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object())
        throw ParseError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where + "." + key + ": missing field");
    return *it;
}

double number(const Json& j, const std::string& where)
{
    if (!j.is_number())
        throw ParseError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(where + ": non-finite number");
    return v;
}

std::uint64_t unsigned_integer(const Json& j, const std::string& where)
{
    if (!j.is_number_unsigned())
        throw ParseError(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

double number_field(const Json& obj, const std::string& key, const std::string& where)
{
    return number(field(obj, key, where), where + "." + key);
}

Point2 point(const Json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2)
        throw ParseError(where + ": expected [x, y]");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<Point2> point_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array of [x, y]");
    std::vector<Point2> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(point(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::array<double, 3> triple(const Json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 3)
        throw ParseError(where + ": expected three numbers");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]"), number(j[2], where + "[2]")};
}

// Heading entries of the covariance are stored in degrees.
const Vec3 covariance_scale{1.0, 1.0, deg_to_rad(1.0)};

Json sim_to_json(const SimConfig& cfg)
{
    Json sim;
    sim["speed_mps"] = cfg.speed;
    sim["dt_s"] = cfg.dt;
    sim["heading_gain"] = cfg.heading_gain;
    sim["process_noise_std"] = {cfg.process_noise.x, cfg.process_noise.y, rad_to_deg(cfg.process_noise.psi)};
    sim["bearing_noise_std_deg"] = rad_to_deg(cfg.bearing_noise_std);
    Json cov = Json::array();
    for (int r = 0; r < 3; ++r)
    {
        Json row = Json::array();
        for (int c = 0; c < 3; ++c)
            row.push_back(cfg.initial_covariance(r, c) / (covariance_scale(r) * covariance_scale(c)));
        cov.push_back(row);
    }
    sim["initial_covariance"] = cov;
    sim["rng_seed"] = cfg.rng_seed;
    sim["waypoint_capture_radius_m"] = cfg.waypoint_capture_radius;
    return sim;
}

SimConfig sim_from_json(const Json& sim)
{
    const std::string where = "sim";
    if (!sim.is_object())
        throw ParseError(where + ": expected an object");

    SimConfig cfg;
    if (sim.contains("speed_mps"))
        cfg.speed = number(sim["speed_mps"], where + ".speed_mps");
    if (sim.contains("dt_s"))
        cfg.dt = number(sim["dt_s"], where + ".dt_s");
    if (sim.contains("heading_gain"))
        cfg.heading_gain = number(sim["heading_gain"], where + ".heading_gain");
    if (sim.contains("process_noise_std"))
    {
        const auto q = triple(sim["process_noise_std"], where + ".process_noise_std");
        cfg.process_noise = {q[0], q[1], deg_to_rad(q[2])};
    }
    if (sim.contains("bearing_noise_std_deg"))
        cfg.bearing_noise_std = deg_to_rad(number(sim["bearing_noise_std_deg"], where + ".bearing_noise_std_deg"));
    if (sim.contains("initial_covariance"))
    {
        const Json& cov = sim["initial_covariance"];
        if (!cov.is_array() || cov.size() != 3)
            throw ParseError(where + ".initial_covariance: expected a 3x3 array");
        for (int r = 0; r < 3; ++r)
        {
            const auto row = triple(cov[r], where + ".initial_covariance[" + std::to_string(r) + "]");
            for (int c = 0; c < 3; ++c)
                cfg.initial_covariance(r, c) = row[c] * covariance_scale(r) * covariance_scale(c);
        }
    }
    if (sim.contains("rng_seed"))
        cfg.rng_seed = unsigned_integer(sim["rng_seed"], where + ".rng_seed");
    if (sim.contains("waypoint_capture_radius_m"))
        cfg.waypoint_capture_radius = number(sim["waypoint_capture_radius_m"], where + ".waypoint_capture_radius_m");

    try
    {
        cfg.validate();
    }
    catch (const std::invalid_argument& err)
    {
        throw ParseError(where + ": " + err.what());
    }
    return cfg;
}

std::string fov_name(FieldOfView fov) { return fov == FieldOfView::sector ? "sector" : "circular"; }

} // namespace

std::string dump_instance(const Instance& instance)
{
    Json j;
    j["camera"] = {{"range_m", instance.camera.range()},
                   {"view_angle_deg", rad_to_deg(instance.camera.view_angle())},
                   {"clearance_m", instance.camera.clearance()}};
    Json targets = Json::array();
    for (const auto& p : instance.path.waypoints())
        targets.push_back({p.x(), p.y()});
    j["targets"] = targets;
    Json sites = Json::array();
    for (const auto& s : instance.sites)
        sites.push_back({s.position.x(), s.position.y()});
    j["sites"] = sites;
    if (instance.sim)
        j["sim"] = sim_to_json(*instance.sim);
    if (instance.seed)
        j["seed"] = *instance.seed;
    return j.dump(2) + "\n";
}

Instance parse_instance(std::string_view text)
{
    const Json j = parse_json(text);
    const std::string root = "instance";
    if (!j.is_object())
        throw ParseError(root + ": expected an object");

    const Json& cam = field(j, "camera", root);
    const double range = number_field(cam, "range_m", "camera");
    const double angle_deg = number_field(cam, "view_angle_deg", "camera");
    const double clearance = cam.contains("clearance_m") ? number_field(cam, "clearance_m", "camera") : 0.0;

    Instance instance;
    try
    {
        instance.camera = CameraSpec(range, deg_to_rad(angle_deg), clearance);
    }
    catch (const std::invalid_argument& err)
    {
        throw ParseError(std::string("camera: ") + err.what());
    }

    try
    {
        instance.path = PathPlan(point_list(field(j, "targets", root), "targets"));
    }
    catch (const std::invalid_argument& err)
    {
        throw ParseError(std::string("targets: ") + err.what());
    }

    const auto positions = point_list(field(j, "sites", root), "sites");
    for (std::size_t i = 0; i < positions.size(); ++i)
        instance.sites.push_back({static_cast<SiteId>(i), positions[i]});

    if (j.contains("sim"))
        instance.sim = sim_from_json(j["sim"]);
    if (j.contains("seed"))
        instance.seed = unsigned_integer(j["seed"], "seed");
    return instance;
}

std::string dump_placement(const PlacementFile& file)
{
    const Placement& p = file.placement;
    Json j;
    j["field_of_view"] = fov_name(file.fov);
    j["total"] = p.total();
    Json sites = Json::array();
    for (const auto& s : p.sites)
        sites.push_back({{"id", to_index(s.id)}, {"x", s.position.x()}, {"y", s.position.y()}});
    j["sites"] = sites;

    Json edges = Json::array();
    for (std::size_t e = 0; e < p.per_edge.size(); ++e)
    {
        Json chosen = Json::array();
        for (const auto& iv : p.per_edge_intervals[e])
            chosen.push_back({{"id", to_index(iv.site)}, {"a", iv.a}, {"b", iv.b}});
        edges.push_back({{"edge", e}, {"cardinality", p.per_edge[e].size()}, {"chosen", chosen}});
    }
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

PlacementFile parse_placement(std::string_view text)
{
    const Json j = parse_json(text);
    const std::string root = "placement";
    if (!j.is_object())
        throw ParseError(root + ": expected an object");

    PlacementFile file;
    if (j.contains("field_of_view"))
    {
        const Json& fov = j["field_of_view"];
        if (fov == "sector")
            file.fov = FieldOfView::sector;
        else if (fov == "circular")
            file.fov = FieldOfView::circular;
        else
            throw ParseError("field_of_view: expected \"sector\" or \"circular\"");
    }

    Placement& p = file.placement;
    const Json& sites = field(j, "sites", root);
    if (!sites.is_array())
        throw ParseError("sites: expected an array");
    for (std::size_t i = 0; i < sites.size(); ++i)
    {
        const std::string where = "sites[" + std::to_string(i) + "]";
        const auto id = unsigned_integer(field(sites[i], "id", where), where + ".id");
        p.sites.push_back({static_cast<SiteId>(id),
                           Point2(number_field(sites[i], "x", where), number_field(sites[i], "y", where))});
    }
    if (!std::is_sorted(p.sites.begin(), p.sites.end(), [](const auto& l, const auto& r) { return l.id < r.id; }))
        throw ParseError("sites: ids must be ascending");

    const Json& edges = field(j, "edges", root);
    if (!edges.is_array())
        throw ParseError("edges: expected an array");
    for (std::size_t e = 0; e < edges.size(); ++e)
    {
        const std::string where = "edges[" + std::to_string(e) + "]";
        if (unsigned_integer(field(edges[e], "edge", where), where + ".edge") != e)
            throw ParseError(where + ".edge: edges must be listed in order");
        const Json& chosen = field(edges[e], "chosen", where);
        if (!chosen.is_array())
            throw ParseError(where + ".chosen: expected an array");
        std::vector<SiteId> ids;
        std::vector<CoverInterval> intervals;
        for (std::size_t k = 0; k < chosen.size(); ++k)
        {
            const std::string at = where + ".chosen[" + std::to_string(k) + "]";
            const auto id = static_cast<SiteId>(unsigned_integer(field(chosen[k], "id", at), at + ".id"));
            ids.push_back(id);
            intervals.push_back({id, number_field(chosen[k], "a", at), number_field(chosen[k], "b", at)});
        }
        if (edges[e].contains("cardinality") &&
            unsigned_integer(edges[e]["cardinality"], where + ".cardinality") != ids.size())
            throw ParseError(where + ".cardinality: does not match the chosen list");
        p.per_edge.push_back(std::move(ids));
        p.per_edge_intervals.push_back(std::move(intervals));
    }

    for (const auto& ids : p.per_edge)
        for (SiteId id : ids)
            if (std::none_of(p.sites.begin(), p.sites.end(), [id](const auto& s) { return s.id == id; }))
                throw ParseError("edges: site " + std::to_string(to_index(id)) + " is not listed under sites");
    return file;
}

void check_placement_matches(const Instance& instance, const Placement& placement)
{
    for (const auto& s : placement.sites)
    {
        const auto idx = to_index(s.id);
        if (idx >= instance.sites.size())
            throw ParseError("placement: site " + std::to_string(idx) + " does not exist in the instance");
        if (!(instance.sites[idx].position == s.position))
            throw ParseError("placement: site " + std::to_string(idx) + " position differs from the instance");
    }
    if (placement.per_edge.size() != instance.path.edge_count())
        throw ParseError("placement: edge count " + std::to_string(placement.per_edge.size()) +
                         " does not match the instance path (" + std::to_string(instance.path.edge_count()) + ")");
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write " + path.string());
    out << text;
    if (!out)
        throw ParseError("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path)
{
    try
    {
        return parse_instance(read_text_file(path));
    }
    catch (const ParseError& err)
    {
        throw ParseError(path.string() + ": " + err.what());
    }
}

PlacementFile load_placement(const std::filesystem::path& path)
{
    try
    {
        return parse_placement(read_text_file(path));
    }
    catch (const ParseError& err)
    {
        throw ParseError(path.string() + ": " + err.what());
    }
}

std::vector<TrajectoryPoint> parse_trace_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("trace: empty file");

    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ','))
            header.push_back(col);
    }
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError("trace: missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t xt = column("x_true"), yt = column("y_true"), xe = column("x_est"), ye = column("y_est");

    std::vector<TrajectoryPoint> points;
    std::size_t line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<double> values;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
        {
            try
            {
                values.push_back(std::stod(cell));
            }
            catch (const std::exception&)
            {
                throw ParseError("trace: line " + std::to_string(line_no) + ": bad number '" + cell + "'");
            }
        }
        if (values.size() != header.size())
            throw ParseError("trace: line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " columns");
        points.push_back({values[xt], values[yt], values[xe], values[ye]});
    }
    return points;
}

} // namespace waymark
