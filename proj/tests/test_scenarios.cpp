#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "polarsim/analysis.hpp"
#include "polarsim/errors.hpp"
#include "polarsim/scenarios.hpp"

using namespace polarsim;
using doctest::Approx;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("uniform beliefs are equally spaced endpoints included") {
    CHECK(beliefs_uniform(3) == BeliefConfig{0.0, 0.5, 1.0});
    CHECK(beliefs_uniform(2) == BeliefConfig{0.0, 1.0});
    CHECK(beliefs_uniform(5) == BeliefConfig{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(beliefs_uniform(1) == BeliefConfig{0.0});
    const auto b = beliefs_uniform(40);
    for (size_t i = 1; i < b.size(); ++i) CHECK(b[i] > b[i - 1]);
}

TEST_CASE("uniform beliefs pair up to exactly one, so the mean is exactly 0.5") {
    for (int n : {2, 3, 4, 7, 21, 50, 101, 399, 997}) {
        const auto b = beliefs_uniform(n);
        double pair_sum_total = 0.0;
        for (int i = 0; i < n / 2; ++i) {
            CHECK(b[i] + b[n - 1 - i] == 1.0);
            pair_sum_total += b[i] + b[n - 1 - i];
        }
        if (n % 2) pair_sum_total += b[n / 2];
        CHECK(pair_sum_total / n == 0.5);
    }
}

TEST_CASE("mild beliefs: two moderate groups") {
    const auto b = beliefs_mild(4);
    REQUIRE(b.size() == 4);
    CHECK(b[0] == Approx(0.2).epsilon(1e-14));
    CHECK(b[1] == Approx(0.3).epsilon(1e-14));
    CHECK(b[2] == Approx(0.6).epsilon(1e-14));
    CHECK(b[3] == Approx(0.7).epsilon(1e-14));
    CHECK(beliefs_mild(2) == BeliefConfig{0.2, 0.6});

    for (int n : {2, 3, 9, 50, 101}) {
        const int h = (n + 1) / 2;
        const auto m = beliefs_mild(n);
        for (int i = 0; i < n; ++i) {
            CHECK(m[i] >= 0.2);
            CHECK(m[i] < 0.8);
            if (i < h) CHECK(m[i] < 0.4);
            if (i >= h) CHECK(m[i] >= 0.6);
        }
    }
    CHECK_THROWS_AS(beliefs_mild(1), std::invalid_argument);
}

TEST_CASE("extreme beliefs: two opposed groups") {
    const auto b = beliefs_extreme(4);
    REQUIRE(b.size() == 4);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == Approx(0.1).epsilon(1e-14));
    CHECK(b[2] == 0.8);
    CHECK(b[3] == Approx(0.9).epsilon(1e-14));
    CHECK(beliefs_extreme(2) == BeliefConfig{0.0, 0.8});

    for (int n : {2, 3, 10, 51, 1000}) {
        const int h = (n + 1) / 2;
        const auto e = beliefs_extreme(n);
        for (int i = 0; i < n; ++i) {
            CHECK(e[i] < 1.0);  // no agent exactly at 1
            if (i < h) CHECK(e[i] < 0.2);
            if (i >= h) CHECK(e[i] >= 0.8);
        }
    }
    CHECK_THROWS_AS(beliefs_extreme(1), std::invalid_argument);
}

TEST_CASE("tripolar beliefs: three groups") {
    CHECK(beliefs_tripolar(3) == BeliefConfig{0.0, 0.4, 0.8});
    const auto b = beliefs_tripolar(6);
    REQUIRE(b.size() == 6);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == Approx(0.1).epsilon(1e-14));
    CHECK(b[2] == 0.4);
    CHECK(b[3] == Approx(0.5).epsilon(1e-14));
    CHECK(b[4] == 0.8);
    CHECK(b[5] == Approx(0.9).epsilon(1e-14));

    for (int n : {3, 4, 5, 8, 50, 100}) {
        const int lo = n / 3, hi = (2 * n + 2) / 3;
        const auto t = beliefs_tripolar(n);
        for (int i = 0; i < n; ++i) {
            if (i < lo) CHECK(t[i] < 0.2);
            if (i >= lo && i < hi) {
                CHECK(t[i] >= 0.4);
                CHECK(t[i] < 0.6);
            }
            if (i >= hi) CHECK(t[i] >= 0.8);
        }
    }
    CHECK_THROWS_AS(beliefs_tripolar(2), std::invalid_argument);
}

TEST_CASE("clique graph") {
    const auto g = graph_clique(2, 0.5);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == 0.5);
    CHECK(g(1, 0) == 0.5);
    CHECK(g(1, 1) == 1.0);
    CHECK(graph_clique(1).agents() == 1);
    CHECK(is_reciprocal(graph_clique(7)));
    CHECK(is_regular(graph_clique(7)));
    CHECK_THROWS_AS(graph_clique(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(graph_clique(3, 1.5), std::invalid_argument);
}

TEST_CASE("circular graph: one successor edge per agent") {
    const auto g = graph_circular(3, 0.5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                CHECK(g(i, j) == 1.0);
            else if ((i + 1) % 3 == j)
                CHECK(g(i, j) == 0.5);
            else
                CHECK(g(i, j) == 0.0);
        }
    CHECK(is_balanced(graph_circular(8)));
    CHECK(is_regular(graph_circular(8)));
    for (int i = 0; i < 8; ++i) CHECK(neighbors(graph_circular(8), i).size() == 2);
    CHECK_FALSE(is_reciprocal(graph_circular(3)));
    CHECK_THROWS_AS(graph_circular(1), std::invalid_argument);
}

TEST_CASE("disconnected graph: two isolated blocks") {
    const auto g = graph_disconnected(4);
    CHECK(g(0, 1) == 0.5);
    CHECK(g(2, 3) == 0.5);
    CHECK(g(0, 2) == 0.0);
    CHECK(g(1, 3) == 0.0);
    CHECK(g(3, 0) == 0.0);
    CHECK_FALSE(is_weakly_connected(g));
    // odd n: first block gets the extra agent
    const auto g5 = graph_disconnected(5);
    CHECK(g5(0, 2) == 0.5);  // agents 0..2 in the first block
    CHECK(g5(2, 3) == 0.0);
}

TEST_CASE("unrelenting graph: two uninfluenceable influencers") {
    const int n = 4;
    const auto g = graph_unrelenting(n);
    for (int i = 0; i < n; ++i) {  // columns 0 and n-1 are zero off-diagonal
        if (i != 0) CHECK(g(i, 0) == 0.0);
        if (i != n - 1) CHECK(g(i, n - 1) == 0.0);
    }
    CHECK(g(0, 1) == 0.6);
    CHECK(g(3, 2) == 0.6);
    CHECK(g(0, 3) == 0.0);
    CHECK(g(3, 0) == 0.0);
    CHECK(g(1, 2) == 0.1);
    CHECK(neighbors(g, 0) == std::vector<int>{0});
    CHECK(neighbors(g, n - 1) == std::vector<int>{n - 1});
    // middle agents hear everyone (both influencers, all middles, self)
    CHECK(neighbors(g, 1).size() == static_cast<size_t>(n));
    CHECK_FALSE(is_balanced(g));
    CHECK_FALSE(is_reciprocal(g));
    CHECK_FALSE(is_regular(g));

    const auto imbalance = flow_imbalances(graph_unrelenting(10));
    CHECK(imbalance[0] == Approx(0.6 * 8).epsilon(1e-14));
    CHECK_THROWS_AS(graph_unrelenting(2), std::invalid_argument);
}

TEST_CASE("faint graph: dense blocks, weak cross links") {
    const auto g = graph_faint(4);
    // the '<=' split puts agents 0..2 in the first group for n=4
    CHECK(g(0, 1) == 0.5);
    CHECK(g(1, 2) == 0.5);
    CHECK(g(0, 3) == 0.1);
    CHECK(g(3, 1) == 0.1);
    CHECK(is_strongly_connected(g));
    CHECK(is_reciprocal(g));
    CHECK(is_regular(g));
}

TEST_CASE("every generator output passes validate") {
    for (int n : {3, 4, 5, 12, 50}) {
        for (const auto& g : {graph_clique(n), graph_circular(n), graph_disconnected(n),
                              graph_unrelenting(n), graph_faint(n)}) {
            for (const auto& b : {beliefs_uniform(n), beliefs_mild(n), beliefs_extreme(n),
                                  beliefs_tripolar(n)}) {
                CHECK(validate(g, b).ok);
            }
        }
    }
}

TEST_CASE("load_graph parses the edge-list format") {
    const auto path = write_temp("polarsim_ok.graph", "n=2\n0 1 0.5\n");
    const auto g = load_graph(path);
    CHECK(g.agents() == 2);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == 0.5);
    CHECK(g(1, 0) == 0.0);
    CHECK(g(1, 1) == 1.0);
}

TEST_CASE("load_graph: comments, blank lines, empty edge list") {
    const auto path = write_temp("polarsim_comments.graph",
                                 "# a hand-authored graph\n\nn=3\n# no edges\n\n");
    const auto g = load_graph(path);
    CHECK(g.agents() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("load_graph rejects bad input with line numbers") {
    auto path = write_temp("polarsim_dup.graph", "n=2\n0 1 0.5\n0 1 0.25\n");
    CHECK_THROWS_WITH_AS(load_graph(path), doctest::Contains(":3:"), ConfigError);

    path = write_temp("polarsim_range.graph", "n=2\n0 1 1.5\n");
    CHECK_THROWS_WITH_AS(load_graph(path), doctest::Contains("weight"), ConfigError);

    path = write_temp("polarsim_idx.graph", "n=2\n0 2 0.5\n");
    CHECK_THROWS_AS(load_graph(path), ConfigError);

    path = write_temp("polarsim_header.graph", "m=2\n");
    CHECK_THROWS_AS(load_graph(path), ConfigError);

    path = write_temp("polarsim_noheader.graph", "# nothing\n");
    CHECK_THROWS_AS(load_graph(path), ConfigError);

    path = write_temp("polarsim_self.graph", "n=2\n0 0 0.5\n");
    CHECK_THROWS_AS(load_graph(path), ConfigError);

    path = write_temp("polarsim_trail.graph", "n=2\n0 1 0.5 junk\n");
    CHECK_THROWS_AS(load_graph(path), ConfigError);

    CHECK_THROWS_AS(load_graph("/nonexistent/file.graph"), ConfigError);
}

TEST_CASE("load_graph accepts an explicit unit self-edge") {
    const auto path = write_temp("polarsim_self1.graph", "n=2\n0 0 1\n0 1 0.25\n");
    const auto g = load_graph(path);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == 0.25);
}

TEST_CASE("save_graph round-trips exactly") {
    testutil::Rng rng(99);
    const auto g = testutil::random_graph(rng, 11, 0.35);
    const auto path = std::filesystem::temp_directory_path() / "polarsim_roundtrip.graph";
    save_graph(g, path);
    const auto g2 = load_graph(path);
    REQUIRE(g2.agents() == g.agents());
    CHECK(g2.weights() == g.weights());
}

TEST_CASE("scenario spec dispatch") {
    ScenarioSpec sc;
    sc.belief_kind = BeliefKind::tripolar;
    sc.graph_kind = GraphKind::faint;
    sc.n = 9;
    CHECK(make_beliefs(sc) == beliefs_tripolar(9));
    CHECK(make_graph(sc).weights() == graph_faint(9).weights());

    sc.belief_kind = BeliefKind::explicit_list;
    sc.explicit_beliefs = {0.25, 0.75};
    CHECK(make_beliefs(sc) == BeliefConfig{0.25, 0.75});

    CHECK(belief_kind_from_string("mild") == BeliefKind::mild);
    CHECK_THROWS_AS(belief_kind_from_string("bogus"), ConfigError);
    CHECK(graph_kind_from_string("unrelenting") == GraphKind::unrelenting);
    CHECK_THROWS_AS(graph_kind_from_string("bogus"), ConfigError);
    CHECK(to_string(BeliefKind::uniform) == "uniform");
    CHECK(to_string(GraphKind::file) == "file");
}
