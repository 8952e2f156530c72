#include "doctest.h"

#include <algorithm>
#include <set>

#include "mea/codec.hpp"
#include "mea/mea.hpp"
#include "test_util.hpp"

using namespace mea;
using testutil::make_graph;

namespace {

const EditCosts kCosts{4, 0, 2, 3, 5, 1, 5};

GraphCollection identical_copies(const LabeledGraph& g, int n) {
    GraphCollection x;
    x.node_label_table = testutil::letters(4, "n");
    x.edge_label_table = testutil::letters(2, "e");
    for (int i = 0; i < n; ++i) {
        x.graphs.push_back(g);
        x.names.push_back("g" + std::to_string(i + 1));
    }
    return x;
}

MeaConfig absolute_k(int k, std::uint64_t seed = 0) {
    MeaConfig cfg;
    cfg.k = k;
    cfg.k_is_fraction = false;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("auxiliary edges") {
    const auto x = identical_copies(make_graph({0, 1}, {{1, 2, 0}}), 3);
    SUBCASE("k=0 is the bare star") {
        const auto edges = build_auxiliary_edges(x, absolute_k(0));
        CHECK(edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}});
    }
    SUBCASE("k=n-1 is complete") {
        const auto edges = build_auxiliary_edges(x, absolute_k(2));
        CHECK(edges.size() == 9);
        for (int i = 1; i <= 3; ++i) {
            int out_degree = 0;
            for (const auto& [s, t] : edges)
                if (s == i) ++out_degree;
            CHECK(out_degree == 2);
        }
    }
    SUBCASE("prior edges are always included") {
        MeaConfig cfg = absolute_k(1);
        cfg.prior_edges = {{1, 2}};
        const auto edges = build_auxiliary_edges(x, cfg);
        CHECK(std::count(edges.begin(), edges.end(), std::pair{1, 2}) == 1);
    }
    SUBCASE("bad prior edges are rejected") {
        MeaConfig cfg = absolute_k(0);
        cfg.prior_edges = {{1, 0}};
        CHECK_THROWS_AS(build_auxiliary_edges(x, cfg), Error);
        cfg.prior_edges = {{4, 1}};
        CHECK_THROWS_AS(build_auxiliary_edges(x, cfg), Error);
        cfg.prior_edges = {{2, 2}};
        CHECK_THROWS_AS(build_auxiliary_edges(x, cfg), Error);
    }
    SUBCASE("samples for smaller k are a prefix set of larger k") {
        const auto big = identical_copies(make_graph({0}), 12);
        const auto few = build_auxiliary_edges(big, absolute_k(3, 99));
        const auto many = build_auxiliary_edges(big, absolute_k(7, 99));
        const std::set<std::pair<int, int>> many_set(many.begin(), many.end());
        for (const auto& e : few) CHECK(many_set.count(e) == 1);
    }
    SUBCASE("fractional k resolution") {
        MeaConfig cfg;
        cfg.k_is_fraction = true;
        cfg.k = 0.4;
        CHECK(cfg.resolve_k(10) == 4);
        cfg.k = 1.0;
        CHECK(cfg.resolve_k(10) == 9);  // capped at n-1
        cfg.k = 0.1;
        CHECK(cfg.resolve_k(3) == 1);   // ceil
        CHECK(cfg.resolve_k(1) == 0);
        CHECK(cfg.resolve_k(0) == 0);
    }
}

TEST_CASE("edge weighing") {
    const auto path2 = make_graph({0, 1}, {{1, 2, 0}});
    GraphCollection x = identical_copies(path2, 2);
    x.graphs[1] = make_graph({0});  // second graph: single node a

    const auto edges = build_auxiliary_edges(x, absolute_k(1));
    const auto weighed = weigh_edges(x, edges, kCosts, absolute_k(1));
    REQUIRE(weighed.size() == edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [s, t] = edges[i];
        if (s == 0) {
            const LabeledGraph& g = x.graphs[t - 1];
            CHECK(weighed[i].weight ==
                  g.node_count() * kCosts.node_insertion + g.edge_count() * kCosts.edge_insertion);
        }
        CHECK(weighed[i].weight == path_cost(weighed[i].path, kCosts));
    }
    // the path-2 -> single-node edge prices at c_nd (matches the exact oracle)
    const auto idx = std::find(edges.begin(), edges.end(), std::pair{1, 2}) - edges.begin();
    CHECK(weighed[idx].weight == exact_ged_bruteforce(x.graphs[0], x.graphs[1], kCosts).cost);
    CHECK(weighed[idx].weight == kCosts.node_deletion);

    // identical graphs weigh zero
    const auto twins = identical_copies(path2, 2);
    const auto tedges = build_auxiliary_edges(twins, absolute_k(1));
    const auto tweighed = weigh_edges(twins, tedges, kCosts, absolute_k(1));
    for (std::size_t i = 0; i < tedges.size(); ++i)
        if (tedges[i].first != 0) CHECK(tweighed[i].weight == 0);
}

TEST_CASE("identifier maps are used when labels are unique") {
    GraphCollection x;
    x.node_label_table = {"s1", "s2", "s3"};
    x.edge_label_table = {"w"};
    x.graphs.push_back(make_graph({0, 1}, {{1, 2, 0}}));
    x.graphs.push_back(make_graph({1, 0, 2}, {{1, 2, 0}}));  // same nodes renamed, one added
    x.names = {"g1", "g2"};

    MeaConfig cfg = absolute_k(1);
    cfg.use_identifier_maps = true;
    const auto edges = build_auxiliary_edges(x, cfg);
    const auto weighed = weigh_edges(x, edges, kCosts, cfg);
    const auto idx = std::find(edges.begin(), edges.end(), std::pair{1, 2}) - edges.begin();
    // s1 and s2 pair up by identity, s3 is inserted
    CHECK(weighed[idx].map.image(1) == 2);
    CHECK(weighed[idx].map.image(2) == 1);
    CHECK(weighed[idx].weight == kCosts.node_insertion);
}

TEST_CASE("solve_mea") {
    SUBCASE("singleton collection") {
        const auto x = identical_copies(make_graph({0, 1}, {{1, 2, 0}}), 1);
        const EditArborescence arb = solve_mea(x, kCosts, absolute_k(0));
        CHECK(arb.parents == std::vector<int>{0});
        CHECK(arb.total_cost == path_cost(insertion_path_from_empty(x.graphs[0]), kCosts));
    }
    SUBCASE("empty collection") {
        const EditArborescence arb = solve_mea(GraphCollection{}, kCosts, absolute_k(0));
        CHECK(arb.size() == 0);
        CHECK(arb.total_cost == 0);
    }
    SUBCASE("identical triple costs one insertion") {
        const auto g = make_graph({0, 1}, {{1, 2, 0}});
        const auto x = identical_copies(g, 3);
        const EditArborescence arb = solve_mea(x, kCosts, absolute_k(2));
        CHECK(arb.total_cost == path_cost(insertion_path_from_empty(g), kCosts));
        // exactly one root child, everything else rides on zero-cost edges
        CHECK(std::count(arb.parents.begin(), arb.parents.end(), 0) == 1);
    }
    SUBCASE("complete candidate set is bounded by the oracle-weighted exact solution") {
        std::mt19937_64 rng(6);
        GraphCollection x;
        x.node_label_table = testutil::letters(2, "n");
        x.edge_label_table = testutil::letters(2, "e");
        for (int i = 0; i < 4; ++i) {
            LabeledGraph g = testutil::random_graph(rng, 4, 2, 2);
            x.graphs.push_back(g);
            x.names.push_back("g" + std::to_string(i + 1));
        }
        const EditArborescence arb = solve_mea(x, kCosts, absolute_k(3));

        // exact-GED-weighted complete digraph solved exactly
        WeightedDigraph complete;
        complete.node_count = 4;
        for (int j = 1; j <= 4; ++j)
            complete.edges.push_back(
                {0, j, static_cast<double>(path_cost(insertion_path_from_empty(x.graphs[j - 1]), kCosts))});
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (i != j)
                    complete.edges.push_back(
                        {i, j,
                         static_cast<double>(
                             exact_ged_bruteforce(x.graphs[i - 1], x.graphs[j - 1], kCosts).cost)});
        const MsaResult lower = enumerate_min_arborescence(complete);
        CHECK(static_cast<double>(arb.total_cost) >= lower.weight);
        // and never worse than the heuristic-weighted star
        std::int64_t star = 0;
        for (const auto& g : x.graphs) star += path_cost(insertion_path_from_empty(g), kCosts);
        CHECK(arb.total_cost <= star);
    }
}

TEST_CASE("star bound and refinement monotonicity on random chains") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 10; ++round) {
        const auto base = make_graph({0, 1, 2}, {{1, 2, 0}, {2, 3, 1}});
        const auto x = generate_perturbation_chain(base, testutil::letters(3, "n"),
                                                   testutil::letters(2, "e"), 8, 0.2, rng());
        MeaConfig cfg = absolute_k(2, round);
        const EditArborescence plain = solve_mea(x, kCosts, cfg);

        std::int64_t star = 0;
        for (const auto& g : x.graphs) star += path_cost(insertion_path_from_empty(g), kCosts);
        CHECK(plain.total_cost <= star);

        cfg.refine_selected = true;
        cfg.refine_iters = 8;
        const EditArborescence refined = solve_mea(x, kCosts, cfg);
        CHECK(refined.total_cost <= plain.total_cost);
    }
}

TEST_CASE("results are identical across thread counts") {
    const auto base = make_graph({0, 1, 2}, {{1, 2, 0}, {2, 3, 1}});
    const auto x = generate_perturbation_chain(base, testutil::letters(3, "n"),
                                               testutil::letters(2, "e"), 10, 0.1, 5);
    MeaConfig cfg = absolute_k(3, 7);
    cfg.refine_selected = true;
    cfg.threads = 1;
    const EditArborescence a = solve_mea(x, kCosts, cfg);
    cfg.threads = 8;
    const EditArborescence b = solve_mea(x, kCosts, cfg);
    CHECK(a.parents == b.parents);
    CHECK(a.total_cost == b.total_cost);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].stored_counts() == b.paths[i].stored_counts());
        CHECK(a.maps[i] == b.maps[i]);
    }
}

TEST_CASE("adding a constant to every weight keeps the argmin") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 50; ++round) {
        const int n = 2 + static_cast<int>(uniform_below(rng, 4));
        WeightedDigraph g, shifted;
        g.node_count = shifted.node_count = n;
        for (int i = 1; i <= n; ++i) {
            const auto w = static_cast<double>(uniform_below(rng, 8));
            g.edges.push_back({0, i, w});
            shifted.edges.push_back({0, i, w + 10});
        }
        for (int s = 1; s <= n; ++s)
            for (int t = 1; t <= n; ++t)
                if (s != t && uniform_below(rng, 2) == 0) {
                    const auto w = static_cast<double>(uniform_below(rng, 8));
                    g.edges.push_back({s, t, w});
                    shifted.edges.push_back({s, t, w + 10});
                }
        CHECK(min_spanning_arborescence(g).arb.parents ==
              min_spanning_arborescence(shifted).arb.parents);
    }
}
