// Acceptance suite: one pass/fail line per criterion, nonzero exit when a
// blocking criterion fails. Criterion 7 needs externally fetched datasets
// (MEA_DATASETS); it is skipped when they are absent and never blocks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mea/codec.hpp"
#include "mea/rng.hpp"

using namespace mea;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::uint64_t corpus_seed(int index) { return derive_seed(0xACCE97ULL, static_cast<std::uint64_t>(index)); }

// seeded perturbation-chain corpus: up to 50 graphs of up to 30 nodes,
// mutation rate cycling through {0, 0.05, 0.2}
GraphCollection make_corpus(int index) {
    std::mt19937_64 rng(corpus_seed(index));
    const int nodes = 2 + static_cast<int>(uniform_below(rng, 29));      // 2..30
    const int chain_length = 2 + static_cast<int>(uniform_below(rng, 49));  // 2..50
    const double rate = std::array{0.0, 0.05, 0.2}[index % 3];
    const int node_alphabet = 1 + static_cast<int>(uniform_below(rng, 3));
    const int edge_alphabet = 1 + static_cast<int>(uniform_below(rng, 2));

    LabeledGraph base;
    for (int v = 0; v < nodes; ++v)
        base.add_node(static_cast<LabelId>(uniform_below(rng, node_alphabet)));
    const long long max_edges = static_cast<long long>(nodes) * (nodes - 1) / 2;
    const long long want = 1 + static_cast<long long>(uniform_below(
                                   rng, static_cast<std::uint64_t>(std::min<long long>(2 * nodes, max_edges))));
    while (base.edge_count() < want) {
        const NodeId u = 1 + static_cast<NodeId>(uniform_below(rng, nodes));
        const NodeId v = 1 + static_cast<NodeId>(uniform_below(rng, nodes));
        if (u == v || base.has_edge(Edge(u, v))) continue;
        base.add_edge(Edge(u, v), static_cast<LabelId>(uniform_below(rng, edge_alphabet)));
    }

    std::vector<std::string> node_table, edge_table;
    for (int i = 0; i < node_alphabet; ++i) node_table.push_back("n" + std::to_string(i));
    for (int i = 0; i < edge_alphabet; ++i) edge_table.push_back("e" + std::to_string(i));
    return generate_perturbation_chain(base, node_table, edge_table, chain_length, rate,
                                       corpus_seed(index) ^ 0x5eedULL);
}

MeaConfig corpus_config(const GraphCollection& x, int index, int threads) {
    MeaConfig cfg;
    cfg.k = std::min(3, x.size() - 1);
    cfg.k_is_fraction = false;
    cfg.seed = corpus_seed(index);
    cfg.threads = threads;
    for (int i = 1; i < x.size(); ++i) cfg.prior_edges.emplace_back(i, i + 1);
    return cfg;
}

constexpr int kCorpusCount = 200;

Outcome criterion1_roundtrip() {
    for (int c = 0; c < kCorpusCount; ++c) {
        const GraphCollection x = make_corpus(c);
        const EditArborescence arb = solve_mea(x, derive_costs(plan_base_params(x)), corpus_config(x, c, 4));
        const EncodeResult encoded = encode_archive(x, arb);
        const GraphCollection decoded = decode_archive(encoded.bytes);
        if (decoded.size() != x.size())
            return {false, "corpus " + std::to_string(c) + ": graph count mismatch"};
        for (int i = 0; i < x.size(); ++i)
            if (!check_certificate(x.graphs[i], decoded.graphs[i], encoded.certificates[i]))
                return {false, "corpus " + std::to_string(c) + ": graph " + std::to_string(i + 1) +
                                   " failed its certificate"};
    }
    return {true, std::to_string(kCorpusCount) + "/" + std::to_string(kCorpusCount) + " corpora lossless"};
}

Outcome criterion2_size_preservation() {
    std::mt19937_64 rng(0x51CE);
    for (int round = 0; round < 10000; ++round) {
        CodecParams p;
        p.node_bits = 1 + static_cast<int>(uniform_below(rng, 8));
        p.node_label_bits = static_cast<int>(uniform_below(rng, 6));
        p.edge_label_bits = static_cast<int>(uniform_below(rng, 5));
        p.count_bits = 4 + static_cast<int>(uniform_below(rng, 5));
        auto field = [&](int bits) {
            return bits == 0 ? 0 : static_cast<int>(uniform_below(rng, 1ULL << bits));
        };
        auto some_edge = [&]() {
            const int u = field(p.node_bits);
            int v = field(p.node_bits);
            if (v == u) v = u ^ 1;
            return Edge(u, v);
        };
        EditPath path;
        for (auto i = uniform_below(rng, 9); i-- > 0;) path.edge_deletions.push_back(some_edge());
        for (auto i = uniform_below(rng, 9); i-- > 0;) path.node_deletions.push_back(field(p.node_bits));
        for (auto i = uniform_below(rng, 9); i-- > 0;)
            path.node_relabels.emplace_back(field(p.node_bits), field(p.node_label_bits));
        for (auto i = uniform_below(rng, 9); i-- > 0;)
            path.edge_relabels.emplace_back(some_edge(), field(p.edge_label_bits));
        for (auto i = uniform_below(rng, 9); i-- > 0;)
            path.node_insertions.push_back(field(p.node_label_bits));
        for (auto i = uniform_below(rng, 9); i-- > 0;)
            path.edge_insertions.emplace_back(some_edge(), field(p.edge_label_bits));
        path.implied_edge_deletions = static_cast<std::int64_t>(uniform_below(rng, 9));

        BitWriter out;
        encode_path(out, path, p);
        const auto expected =
            static_cast<std::uint64_t>(path_cost(path, derive_costs(p))) + 6ULL * p.count_bits;
        if (out.bit_count() != expected)
            return {false, "path " + std::to_string(round) + ": " + std::to_string(out.bit_count()) +
                               " bits emitted, " + std::to_string(expected) + " expected"};
    }
    return {true, "10000/10000 paths emitted exactly cost + 6*beta_cnt bits"};
}

Outcome criterion3_msa_oracle() {
    std::mt19937_64 rng(0xED30);
    for (int round = 0; round < 500; ++round) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 6));
        WeightedDigraph g;
        g.node_count = n;
        for (int i = 1; i <= n; ++i)
            g.edges.push_back({0, i, static_cast<double>(3 + uniform_below(rng, 6))});
        for (int s = 1; s <= n; ++s)
            for (int t = 1; t <= n; ++t)
                if (s != t && uniform_below(rng, 100) < 50)
                    g.edges.push_back({s, t, static_cast<double>(uniform_below(rng, 6))});
        // force cheap 2- and 3-cycles so contraction always triggers
        if (n >= 2) {
            const int a = 1 + static_cast<int>(uniform_below(rng, n));
            int b = 1 + static_cast<int>(uniform_below(rng, n));
            if (b == a) b = a == n ? 1 : a + 1;
            g.edges.push_back({a, b, 0.0});
            g.edges.push_back({b, a, 0.0});
        }
        if (n >= 3) {
            g.edges.push_back({1, 2, 1.0});
            g.edges.push_back({2, 3, 1.0});
            g.edges.push_back({3, 1, 1.0});
        }

        const MsaResult oracle = enumerate_min_arborescence(g);
        const MsaResult fast = min_spanning_arborescence(g);
        if (fast.weight != oracle.weight)
            return {false, "digraph " + std::to_string(round) + ": weight " +
                               std::to_string(fast.weight) + " vs oracle " + std::to_string(oracle.weight)};
        if (fast.arb.parents != oracle.arb.parents)
            return {false, "digraph " + std::to_string(round) + ": tie-break vectors differ"};
    }
    return {true, "500/500 digraphs match the enumerator, tie-breaks included"};
}

Outcome criterion4_ged_bounds() {
    const EditCosts costs = derive_costs([] {
        CodecParams p;
        p.node_bits = 3;
        p.node_label_bits = 2;
        p.edge_label_bits = 1;
        return p;
    }());
    std::mt19937_64 rng(0x6ED);
    int optimal_hits = 0;
    const int rounds = 300;
    for (int round = 0; round < rounds; ++round) {
        auto random_graph = [&]() {
            LabeledGraph g;
            const int n = static_cast<int>(uniform_below(rng, 6));  // up to 5
            for (int i = 0; i < n; ++i) g.add_node(static_cast<LabelId>(uniform_below(rng, 3)));
            for (NodeId u = 1; u <= n; ++u)
                for (NodeId v = u + 1; v <= n; ++v)
                    if (uniform_below(rng, 100) < 50)
                        g.add_edge(Edge(u, v), static_cast<LabelId>(uniform_below(rng, 2)));
            return g;
        };
        const LabeledGraph g = random_graph(), h = random_graph();
        const GedResult exact = exact_ged_bruteforce(g, h, costs);
        const GedResult upper = branch_upper_bound(g, h, costs);
        if (upper.cost < exact.cost)
            return {false, "pair " + std::to_string(round) + ": upper bound below the optimum"};
        const NodeMap refined = refine_node_map(g, h, upper.map, costs, 16, round);
        const std::int64_t refined_cost = path_cost(induced_edit_path(g, h, refined), costs);
        if (refined_cost > upper.cost)
            return {false, "pair " + std::to_string(round) + ": refinement increased the cost"};
        if (refined_cost < exact.cost)
            return {false, "pair " + std::to_string(round) + ": refinement beat the exact optimum"};
        if (refined_cost == exact.cost) ++optimal_hits;
    }
    const double hit_rate = 100.0 * optimal_hits / rounds;
    if (optimal_hits * 10 < rounds * 3)
        return {false, "refined cost optimal on only " + std::to_string(hit_rate) + "% of pairs (< 30%)"};
    std::ostringstream detail;
    detail << "bounds valid on " << rounds << " pairs; refinement optimal on " << hit_rate << "%";
    return {true, detail.str()};
}

Outcome criterion5_star_bound() {
    int with_isomorphic_pair = 0;
    for (int c = 0; c < kCorpusCount; ++c) {
        const GraphCollection x = make_corpus(c);
        const EditCosts costs = derive_costs(plan_base_params(x));
        const EditArborescence arb = solve_mea(x, costs, corpus_config(x, c, 4));

        std::int64_t star_cost = 0;
        for (const LabeledGraph& g : x.graphs) star_cost += path_cost(insertion_path_from_empty(g), costs);
        if (arb.total_cost > star_cost)
            return {false, "corpus " + std::to_string(c) + ": arborescence cost exceeds the star"};

        bool has_pair = false;
        for (int i = 0; i < x.size() && !has_pair; ++i)
            for (int j = i + 1; j < x.size() && !has_pair; ++j)
                if (find_isomorphism(x.graphs[i], x.graphs[j]).has_value()) has_pair = true;
        if (has_pair) {
            ++with_isomorphic_pair;
            const ArchiveStats stats = collect_stats(x, arb, plan_params(x, arb));
            if (!(stats.star_ratio < 1.0))
                return {false, "corpus " + std::to_string(c) +
                                   " holds isomorphic graphs but star ratio is " +
                                   std::to_string(stats.star_ratio)};
        }
    }
    return {true, "star bound held on " + std::to_string(kCorpusCount) + " corpora; ratio < 1 on all " +
                      std::to_string(with_isomorphic_pair) + " corpora with isomorphic pairs"};
}

Outcome criterion6_k_sweep() {
    LabeledGraph base;
    std::mt19937_64 rng(0x6B);
    for (int v = 0; v < 15; ++v) base.add_node(static_cast<LabelId>(uniform_below(rng, 3)));
    while (base.edge_count() < 20) {
        const NodeId u = 1 + static_cast<NodeId>(uniform_below(rng, 15));
        const NodeId v = 1 + static_cast<NodeId>(uniform_below(rng, 15));
        if (u == v || base.has_edge(Edge(u, v))) continue;
        base.add_edge(Edge(u, v), static_cast<LabelId>(uniform_below(rng, 2)));
    }

    auto mean_bits = [&](double k, std::uint64_t seed_base) {
        double total = 0;
        for (int rep = 0; rep < 10; ++rep) {
            const GraphCollection x = generate_perturbation_chain(
                base, {"n0", "n1", "n2"}, {"e0", "e1"}, 100, 0.05, derive_seed(0xC6, rep));
            MeaConfig cfg;
            cfg.k = k;
            cfg.k_is_fraction = true;
            cfg.seed = derive_seed(seed_base, rep);
            cfg.threads = 4;
            const EditArborescence arb = solve_mea(x, derive_costs(plan_base_params(x)), cfg);
            total += static_cast<double>(collect_stats(x, arb, plan_params(x, arb)).total_bits);
        }
        return total / 10.0;
    };
    const double at_01 = mean_bits(0.1, 0x9A);
    const double at_04 = mean_bits(0.4, 0x9A);
    const double at_10 = mean_bits(1.0, 0x9A);

    std::ostringstream detail;
    detail << "mean bits: k=0.1 -> " << at_01 << ", k=0.4 -> " << at_04 << ", k=1.0 -> " << at_10;
    if (at_04 > at_01) return {false, "k=0.4 mean exceeds k=0.1 mean; " + detail.str()};
    if (std::abs(at_10 - at_04) > 0.05 * at_04)
        return {false, "k=1.0 mean not within 5% of k=0.4 mean; " + detail.str()};
    return {true, detail.str()};
}

Outcome criterion7_datasets() {
    const char* root = std::getenv("MEA_DATASETS");
    if (root == nullptr)
        return {true, "skipped: MEA_DATASETS not set (non-blocking reference point)"};
    struct Entry {
        const char* name;
        double threshold;
    };
    std::ostringstream detail;
    bool all_within = true;
    for (const Entry& entry : {Entry{"mao", 0.35}, Entry{"pah", 0.55}, Entry{"acyclic", 0.55}}) {
        GraphCollection x;
        bool loaded = false;
        for (const char* extension : {".txt", ".gxl"}) {
            const std::filesystem::path path =
                std::filesystem::path(root) / (std::string(entry.name) + extension);
            if (!std::filesystem::exists(path)) continue;
            std::ifstream in(path, std::ios::binary);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            x = parse_collection(buffer.str(), extension == std::string(".txt")
                                                   ? CollectionFormat::text
                                                   : CollectionFormat::gxl);
            loaded = true;
            break;
        }
        if (!loaded) {
            detail << entry.name << ": missing; ";
            continue;
        }
        MeaConfig cfg;
        cfg.k = 0.4;
        cfg.k_is_fraction = true;
        cfg.seed = 0;
        cfg.refine_selected = true;
        cfg.refine_iters = 16;
        cfg.threads = 4;
        const EditArborescence arb = solve_mea(x, derive_costs(plan_base_params(x)), cfg);
        const ArchiveStats stats = collect_stats(x, arb, plan_params(x, arb));
        detail << entry.name << ": star ratio " << stats.star_ratio << " (threshold " << entry.threshold
               << "); ";
        if (stats.star_ratio > entry.threshold) all_within = false;
    }
    if (!all_within) detail << "outside the reference thresholds — logged, non-blocking";
    return {true, detail.str()};
}

Outcome criterion8_determinism() {
    for (int c = 0; c < 20; ++c) {
        const GraphCollection x = make_corpus(c);
        const EditCosts costs = derive_costs(plan_base_params(x));
        MeaConfig cfg = corpus_config(x, c, 1);
        const EditArborescence arb1 = solve_mea(x, costs, cfg);
        cfg.threads = 8;
        const EditArborescence arb8 = solve_mea(x, costs, cfg);
        if (encode_archive(x, arb1).bytes != encode_archive(x, arb8).bytes)
            return {false, "corpus " + std::to_string(c) + ": archives differ across thread counts"};
    }
    return {true, "20 corpora byte-identical with 1 and 8 threads"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "lossless roundtrip", criterion1_roundtrip},
        {2, "encoding-size preservation", criterion2_size_preservation},
        {3, "MSA oracle equivalence", criterion3_msa_oracle},
        {4, "GED upper-bound validity and refinement", criterion4_ged_bounds},
        {5, "star bound and compression gain", criterion5_star_bound},
        {6, "k-sweep trend", criterion6_k_sweep},
        {7, "dataset reference points", criterion7_datasets},
        {8, "thread-count determinism", criterion8_determinism},
    };

    bool all_pass = true;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%s) [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", criterion.id,
                    criterion.name, outcome.detail.c_str(), seconds);
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
