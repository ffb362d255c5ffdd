#include "dgs/common.hpp"
#include "dgs/network.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <fstream>

using namespace dgs;

TEST_CASE("full-density two-node graph has both off-diagonal edges") {
    const Network net = generate_network(2, 1.0, 7);
    Eigen::MatrixXd expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK(net.adjacency == expected);
    CHECK(net.directed);
}

TEST_CASE("generation is a pure function of (n, p, seed)") {
    const Network a = generate_network(5, 0.5, 3);
    const Network b = generate_network(5, 0.5, 3);
    CHECK(a.adjacency == b.adjacency);
    const Network c = generate_network(5, 0.5, 4);
    CHECK(a.adjacency != c.adjacency);
}

TEST_CASE("paper-scale generation stays valid") {
    const Network net = generate_network(500, 0.02, 1);
    CHECK(net.n == 500);
    CHECK(net.adjacency.diagonal().isZero(0.0));
    CHECK(net.edge_count() > 0);
    // ~n(n-1)p edges expected; allow a wide band
    CHECK(net.edge_count() > 3000);
    CHECK(net.edge_count() < 7000);
}

TEST_CASE("invalid generation parameters are rejected") {
    CHECK_THROWS_AS(generate_network(1, 0.5, 1), ParameterError);
    CHECK_THROWS_AS(generate_network(5, 0.0, 1), ParameterError);
    CHECK_THROWS_AS(generate_network(5, 1.5, 1), ParameterError);
}

TEST_CASE("edge orientation: [from, to] lands at row=to, col=from") {
    testutil::TempDir dir("net_orient");
    const auto path = dir / "net.json";
    std::ofstream(path) << R"({"n":2,"directed":true,"edges":[[0,1,1.0]]})";
    const Network net = load_network(path);
    Eigen::MatrixXd expected(2, 2);
    expected << 0, 0, 1, 0;
    CHECK(net.adjacency == expected);
}

TEST_CASE("loader rejects malformed files naming the offending record") {
    testutil::TempDir dir("net_bad");
    SUBCASE("self-loop") {
        const auto path = dir / "loop.json";
        std::ofstream(path) << R"({"n":2,"directed":true,"edges":[[0,0,1.0]]})";
        CHECK_THROWS_WITH_AS(load_network(path), doctest::Contains("edge record 0"),
                             FormatError);
    }
    SUBCASE("index out of range") {
        const auto path = dir / "range.json";
        std::ofstream(path) << R"({"n":2,"directed":true,"edges":[[0,5,1.0]]})";
        CHECK_THROWS_AS(load_network(path), FormatError);
    }
    SUBCASE("not json") {
        const auto path = dir / "garbage.json";
        std::ofstream(path) << "not json at all";
        CHECK_THROWS_AS(load_network(path), FormatError);
    }
    SUBCASE("empty edge list") {
        const auto path = dir / "empty.json";
        std::ofstream(path) << R"({"n":2,"directed":true,"edges":[]})";
        CHECK_THROWS_AS(load_network(path), FormatError);
    }
}

TEST_CASE("save/load round trip is exact, including non-binary weights") {
    testutil::TempDir dir("net_rt");
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Network net = generate_network(10, 0.3, seed);
        net.adjacency *= 0.137 + static_cast<double>(seed);
        const auto path = dir / ("rt_" + std::to_string(seed) + ".json");
        save_network(net, path);
        const Network back = load_network(path);
        CHECK(back.n == net.n);
        CHECK(back.directed == net.directed);
        CHECK(back.adjacency == net.adjacency);  // bit-identical
    }
}

TEST_CASE("undirected graphs round trip through a canonical edge list") {
    testutil::TempDir dir("net_undirected");
    const Network net = testutil::random_undirected_network(12, 0.3, 9);
    const auto path = dir / "undirected.json";
    save_network(net, path);
    const Network back = load_network(path);
    CHECK(back.adjacency == net.adjacency);
    CHECK_FALSE(back.directed);
}

TEST_CASE("saving an edgeless network is refused") {
    Network net;
    net.n = 3;
    net.adjacency = Eigen::MatrixXd::Zero(3, 3);
    net.directed = true;
    testutil::TempDir dir("net_empty");
    CHECK_THROWS_AS(save_network(net, dir / "empty.json"), ParameterError);
}

TEST_CASE("file size grows linearly with edge count") {
    testutil::TempDir dir("net_size");
    const Network small = generate_network(100, 0.02, 2);
    const Network large = generate_network(100, 0.2, 2);
    const auto p_small = dir / "small.json";
    const auto p_large = dir / "large.json";
    save_network(small, p_small);
    save_network(large, p_large);
    const double per_edge_small =
        static_cast<double>(std::filesystem::file_size(p_small)) / small.edge_count();
    const double per_edge_large =
        static_cast<double>(std::filesystem::file_size(p_large)) / large.edge_count();
    CHECK(per_edge_large == doctest::Approx(per_edge_small).epsilon(0.25));
}

TEST_CASE("constructor validation") {
    Eigen::MatrixXd bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(make_network(bad, true), DimensionError);
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0, 0;
    CHECK_THROWS_AS(make_network(asym, false), FormatError);
    CHECK_NOTHROW(make_network(asym, true));
}
