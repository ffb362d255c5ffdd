#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>

namespace dgs {

/// Directed weighted graph used as the substrate for node dynamics.
///
/// adjacency(n, m) weights the influence of node m on node n; the diagonal is
/// zero (self-effects belong to the node's own dynamics, not the coupling).
/// Immutable by convention after construction, so instances can be shared
/// read-only across worker threads.
struct Network {
    int n = 0;
    Eigen::MatrixXd adjacency;
    bool directed = true;

    int edge_count() const;
};

/// Validates shape, zero diagonal, finiteness and (for undirected graphs)
/// symmetry; throws on violation.
Network make_network(Eigen::MatrixXd adjacency, bool directed = true);

/// Directed Erdos-Renyi graph with independent 0/1 edge coins. Deterministic
/// in (n, edge_probability, seed); reseeds with seed+1 until at least one
/// edge exists.
Network generate_network(int n, double edge_probability, std::uint64_t seed);

Network load_network(const std::filesystem::path& path);
void save_network(const Network& net, const std::filesystem::path& path);

}  // namespace dgs
