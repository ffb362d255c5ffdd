#include "dgs/network.hpp"

#include "dgs/common.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace dgs {

namespace {

void validate_adjacency(const Eigen::MatrixXd& a, bool directed) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        throw DimensionError("adjacency must be a square matrix with n >= 1, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) {
            throw FormatError("self-loop at node " + std::to_string(i) +
                              " (diagonal entries must be zero)");
        }
    }
    if (!a.allFinite()) {
        throw FormatError("adjacency contains a non-finite weight");
    }
    if (!directed && a != a.transpose().eval()) {
        throw FormatError("undirected network requires a symmetric adjacency");
    }
}

}  // namespace

int Network::edge_count() const {
    int count = 0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (adjacency(r, c) != 0.0) ++count;
        }
    }
    if (!directed) count /= 2;
    return count;
}

Network make_network(Eigen::MatrixXd adjacency, bool directed) {
    validate_adjacency(adjacency, directed);
    Network net;
    net.n = static_cast<int>(adjacency.rows());
    net.adjacency = std::move(adjacency);
    net.directed = directed;
    return net;
}

Network generate_network(int n, double edge_probability, std::uint64_t seed) {
    if (n < 2) {
        throw ParameterError("generate_network requires n >= 2, got " + std::to_string(n));
    }
    if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
        throw ParameterError("edge_probability must lie in (0, 1]");
    }
    constexpr int kMaxAttempts = 10000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        int edges = 0;
        // One draw per ordered pair (source, target); adjacency(target, source).
        for (int src = 0; src < n; ++src) {
            for (int dst = 0; dst < n; ++dst) {
                if (src == dst) continue;
                if (coin(rng) < edge_probability) {
                    a(dst, src) = 1.0;
                    ++edges;
                }
            }
        }
        if (edges == 0) continue;
        Network net;
        net.n = n;
        net.adjacency = std::move(a);
        net.directed = true;
        return net;
    }
    throw ConvergenceError("generate_network produced no edges after " +
                           std::to_string(kMaxAttempts) + " reseeds");
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open network file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("network file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("directed") ||
        !doc.contains("edges")) {
        throw FormatError("network file must be an object with keys n, directed, edges");
    }
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw FormatError("network field 'n' must be a positive integer");
    }
    const int n = doc["n"].get<int>();
    const bool directed = doc["directed"].get<bool>();
    const auto& edges = doc["edges"];
    if (!edges.is_array() || edges.empty()) {
        throw FormatError("network field 'edges' must be a non-empty array");
    }

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd seen = Eigen::MatrixXd::Zero(n, n);
    int record = 0;
    for (const auto& e : edges) {
        std::ostringstream where;
        where << "edge record " << record;
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number()) {
            throw FormatError(where.str() + " must be [from:int, to:int, weight:number]");
        }
        const long long from = e[0].get<long long>();
        const long long to = e[1].get<long long>();
        const double w = e[2].get<double>();
        if (from < 0 || from >= n || to < 0 || to >= n) {
            throw FormatError(where.str() + " has node index out of range [0, " +
                              std::to_string(n) + "): [" + std::to_string(from) + ", " +
                              std::to_string(to) + "]");
        }
        if (from == to) {
            throw FormatError(where.str() + " is a self-loop at node " + std::to_string(from));
        }
        if (!std::isfinite(w)) {
            throw FormatError(where.str() + " has a non-finite weight");
        }
        const int r = static_cast<int>(to);
        const int c = static_cast<int>(from);
        if (seen(r, c) != 0.0 && a(r, c) != w) {
            throw FormatError(where.str() + " conflicts with an earlier weight for the same edge");
        }
        a(r, c) = w;
        seen(r, c) = 1.0;
        if (!directed) {
            if (seen(c, r) != 0.0 && a(c, r) != w) {
                throw FormatError(where.str() +
                                  " conflicts with the mirrored weight of an undirected edge");
            }
            a(c, r) = w;
            seen(c, r) = 1.0;
        }
        ++record;
    }
    return make_network(std::move(a), directed);
}

void save_network(const Network& net, const std::filesystem::path& path) {
    validate_adjacency(net.adjacency, net.directed);
    if (net.edge_count() == 0) {
        throw ParameterError("refusing to save a network with no edges");
    }
    nlohmann::json edges = nlohmann::json::array();
    // Emit sorted by (from, to); undirected graphs list each edge once, from < to.
    for (int from = 0; from < net.n; ++from) {
        for (int to = 0; to < net.n; ++to) {
            const double w = net.adjacency(to, from);
            if (w == 0.0) continue;
            if (!net.directed && from > to) continue;
            edges.push_back({from, to, w});
        }
    }
    nlohmann::json doc;
    doc["n"] = net.n;
    doc["directed"] = net.directed;
    doc["edges"] = std::move(edges);

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write network file: " + path.string());
    }
    out << doc.dump(2) << "\n";
    if (!out) {
        throw IoError("write failure for network file: " + path.string());
    }
}

}  // namespace dgs
