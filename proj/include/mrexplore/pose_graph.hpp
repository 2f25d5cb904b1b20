#ifndef MREXPLORE_POSE_GRAPH_HPP
#define MREXPLORE_POSE_GRAPH_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "mrexplore/geometry.hpp"

namespace mrexplore {

enum class EdgeKind
{
    Odometry,
    LoopClosure,
};

struct PoseNode
{
    int id = 0;
    Pose2 pose;
};

struct PoseEdge
{
    int a = 0;
    int b = 0;
    double weight = 1.0;
    EdgeKind kind = EdgeKind::Odometry;

    friend bool operator==(const PoseEdge&, const PoseEdge&) = default;
};

/* Thrown when the reduced Laplacian is singular (graph not connected) */
class DisconnectedGraphError : public std::runtime_error
{
public:
    DisconnectedGraphError() : std::runtime_error("zero spanning trees") { }
};

/* Synthetic pose graph of one robot. Node ids are dense from 0. */
class PoseGraph
{
public:
    int add_node(const Pose2& pose);
    /* Throws std::invalid_argument on self-loops, unknown nodes or
     * non-positive weights */
    void add_edge(int a, int b, double weight, EdgeKind kind);

    const std::vector<PoseNode>& nodes() const { return nodes_; }
    const std::vector<PoseEdge>& edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    std::size_t loop_closure_count() const;

    bool is_connected() const;

private:
    std::vector<PoseNode> nodes_;
    std::vector<PoseEdge> edges_;
};

struct GraphBuildParams
{
    double node_spacing = 0.5;
    double loop_closure_radius = 0.75;
    double odometry_weight = 1.0;
    double loop_weight = 2.0;

    void validate() const;
};

/* Appends a node once the robot has moved node_spacing from the last node,
 * linked by an odometry edge, plus at most one loop-closure edge to the
 * nearest earlier non-consecutive node within loop_closure_radius. */
void extend_trajectory(PoseGraph& graph, const Pose2& pose, const GraphBuildParams& params);

/* Dense weighted Laplacian: degree on the diagonal, -w(i, j) off it */
Eigen::MatrixXd weighted_laplacian(const PoseGraph& graph);
/* Sparse Laplacian with row/column 0 removed */
Eigen::SparseMatrix<double> reduced_laplacian(const PoseGraph& graph);

/* Natural log of the weighted spanning-tree count (log-determinant of the
 * reduced Laplacian, by sparse LDL^T). Zero for a single node.
 * Throws DisconnectedGraphError when the graph is not connected. */
double log_spanning_trees(const PoseGraph& graph);

/* Gain in log spanning-tree count from following the waypoints, using the
 * same node and loop-closure rules as extend_trajectory */
double spanning_tree_gain(const PoseGraph& graph, std::span<const Point2> waypoints,
                          const GraphBuildParams& params);
/* Same as above with a precomputed log_spanning_trees(graph) */
double spanning_tree_gain(const PoseGraph& graph, double base_log_trees,
                          std::span<const Point2> waypoints, const GraphBuildParams& params);

/* Max-normalized gains rho in [0, 1]. Equal gains give rho = 1 for all.
 * With a non-positive maximum the gains are min-max scaled instead. */
std::vector<double> normalize_gains(std::span<const double> gains);

/* One edge per line: "a b weight kind" with kind odometry|loop_closure */
void write_edge_list(std::ostream& out, const PoseGraph& graph);
std::vector<PoseEdge> read_edge_list(std::istream& in);

} // namespace mrexplore

#endif // MREXPLORE_POSE_GRAPH_HPP
