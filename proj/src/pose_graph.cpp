#include "mrexplore/pose_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/SparseCholesky>
#include <fmt/format.h>

namespace mrexplore {

int PoseGraph::add_node(const Pose2& pose)
{
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({id, pose});
    return id;
}

void PoseGraph::add_edge(int a, int b, double weight, EdgeKind kind)
{
    const int n = static_cast<int>(nodes_.size());
    if (a < 0 || b < 0 || a >= n || b >= n)
        throw std::invalid_argument("pose graph edge references an unknown node");
    if (a == b)
        throw std::invalid_argument("pose graph edges cannot be self-loops");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("pose graph edge weights must be positive");
    edges_.push_back({a, b, weight, kind});
}

std::size_t PoseGraph::loop_closure_count() const
{
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const auto& e) {
        return e.kind == EdgeKind::LoopClosure;
    }));
}

bool PoseGraph::is_connected() const
{
    if (nodes_.empty())
        return true;
    std::vector<std::vector<int>> adjacency(nodes_.size());
    for (const auto& e : edges_) {
        adjacency[e.a].push_back(e.b);
        adjacency[e.b].push_back(e.a);
    }
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == nodes_.size();
}

void GraphBuildParams::validate() const
{
    if (!(node_spacing > 0.0) || !(loop_closure_radius > 0.0) || !(odometry_weight > 0.0) ||
        !(loop_weight > 0.0))
        throw std::invalid_argument("graph build parameters must be positive");
    if (loop_closure_radius < node_spacing)
        throw std::invalid_argument("loop_closure_radius must be at least node_spacing");
}

void extend_trajectory(PoseGraph& graph, const Pose2& pose, const GraphBuildParams& params)
{
    if (graph.empty()) {
        graph.add_node(pose);
        return;
    }
    const PoseNode& last = graph.nodes().back();
    if (distance(last.pose.position(), pose.position()) < params.node_spacing)
        return;

    const int prev = last.id;
    const int id = graph.add_node(pose);
    graph.add_edge(prev, id, params.odometry_weight, EdgeKind::Odometry);

    int nearest = -1;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (const auto& node : graph.nodes()) {
        if (node.id >= prev)
            break;
        const double d = distance(node.pose.position(), pose.position());
        if (d <= params.loop_closure_radius && d < nearest_d) {
            nearest = node.id;
            nearest_d = d;
        }
    }
    if (nearest >= 0)
        graph.add_edge(id, nearest, params.loop_weight, EdgeKind::LoopClosure);
}

Eigen::MatrixXd weighted_laplacian(const PoseGraph& graph)
{
    const auto n = static_cast<Eigen::Index>(graph.node_count());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : graph.edges()) {
        lap(e.a, e.a) += e.weight;
        lap(e.b, e.b) += e.weight;
        lap(e.a, e.b) -= e.weight;
        lap(e.b, e.a) -= e.weight;
    }
    return lap;
}

Eigen::SparseMatrix<double> reduced_laplacian(const PoseGraph& graph)
{
    const auto n = static_cast<Eigen::Index>(graph.node_count());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(graph.edges().size() * 4);
    /* Node k maps to row k - 1; node 0 is dropped */
    for (const auto& e : graph.edges()) {
        if (e.a > 0)
            triplets.emplace_back(e.a - 1, e.a - 1, e.weight);
        if (e.b > 0)
            triplets.emplace_back(e.b - 1, e.b - 1, e.weight);
        if (e.a > 0 && e.b > 0) {
            triplets.emplace_back(e.a - 1, e.b - 1, -e.weight);
            triplets.emplace_back(e.b - 1, e.a - 1, -e.weight);
        }
    }
    Eigen::SparseMatrix<double> reduced(std::max<Eigen::Index>(n - 1, 0),
                                        std::max<Eigen::Index>(n - 1, 0));
    reduced.setFromTriplets(triplets.begin(), triplets.end());
    return reduced;
}

double log_spanning_trees(const PoseGraph& graph)
{
    if (graph.empty())
        throw std::invalid_argument("log_spanning_trees needs at least one node");
    if (graph.node_count() == 1)
        return 0.0;
    if (!graph.is_connected())
        throw DisconnectedGraphError();

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(reduced_laplacian(graph));
    if (ldlt.info() != Eigen::Success)
        throw DisconnectedGraphError();
    double log_det = 0.0;
    const auto d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0))
            throw DisconnectedGraphError();
        log_det += std::log(d[i]);
    }
    return log_det;
}

double spanning_tree_gain(const PoseGraph& graph, double base_log_trees,
                          std::span<const Point2> waypoints, const GraphBuildParams& params)
{
    PoseGraph hypothetical = graph;
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        double heading = 0.0;
        if (i + 1 < waypoints.size())
            heading = std::atan2(waypoints[i + 1].y - waypoints[i].y,
                                 waypoints[i + 1].x - waypoints[i].x);
        extend_trajectory(hypothetical, {waypoints[i].x, waypoints[i].y, heading}, params);
    }
    if (hypothetical.node_count() == graph.node_count())
        return 0.0;
    return log_spanning_trees(hypothetical) - base_log_trees;
}

double spanning_tree_gain(const PoseGraph& graph, std::span<const Point2> waypoints,
                          const GraphBuildParams& params)
{
    return spanning_tree_gain(graph, log_spanning_trees(graph), waypoints, params);
}

std::vector<double> normalize_gains(std::span<const double> gains)
{
    std::vector<double> rho(gains.size(), 1.0);
    if (gains.empty())
        return rho;
    const auto [lo_it, hi_it] = std::minmax_element(gains.begin(), gains.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    /* Gains are log-determinant differences; ignore round-off spread */
    if (hi - lo <= 1e-9 * std::max(1.0, std::abs(hi)))
        return rho;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (hi > 0.0)
            rho[i] = std::clamp(gains[i] / hi, 0.0, 1.0);
        else
            rho[i] = (gains[i] - lo) / (hi - lo);
    }
    return rho;
}

void write_edge_list(std::ostream& out, const PoseGraph& graph)
{
    for (const auto& e : graph.edges())
        out << fmt::format("{} {} {} {}\n", e.a, e.b, e.weight,
                           e.kind == EdgeKind::Odometry ? "odometry" : "loop_closure");
}

std::vector<PoseEdge> read_edge_list(std::istream& in)
{
    std::vector<PoseEdge> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream fields(line);
        PoseEdge e;
        std::string kind;
        if (!(fields >> e.a >> e.b >> e.weight >> kind))
            throw std::invalid_argument("malformed edge line: " + line);
        if (kind == "odometry")
            e.kind = EdgeKind::Odometry;
        else if (kind == "loop_closure")
            e.kind = EdgeKind::LoopClosure;
        else
            throw std::invalid_argument("unknown edge kind: " + kind);
        edges.push_back(e);
    }
    return edges;
}

} // namespace mrexplore
