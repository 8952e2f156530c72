// meac: arborescence-based compressor for labeled graph collections.
//
// Subcommands: compress, decompress, verify, stats, bench.
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 parse, 4 pipeline, 5 verification
// failed, 6 corrupt archive.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mea/codec.hpp"
#include "mea/rng.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kParse = 3, kPipeline = 4, kVerify = 5, kCorrupt = 6 };

struct CliError : std::runtime_error {
    int code;
    CliError(int code_, const std::string& what) : std::runtime_error(what), code(code_) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kIo, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) throw CliError(kIo, "cannot read " + path);
    return buffer.str();
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(kIo, "cannot open " + path + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out.good()) {
        out.close();
        std::remove(path.c_str());  // no partial outputs
        throw CliError(kIo, "cannot write " + path);
    }
}

mea::CollectionFormat parse_format(const std::string& name) {
    if (name == "text") return mea::CollectionFormat::text;
    if (name == "gxl") return mea::CollectionFormat::gxl;
    throw CliError(kUsage, "unknown format '" + name + "'");
}

mea::GraphCollection load_collection(const std::string& path, const std::string& format) {
    const std::string bytes = read_file(path);
    try {
        return mea::parse_collection(bytes, parse_format(format));
    } catch (const mea::ParseError& e) {
        throw CliError(kParse, path + ": " + e.what());
    }
}

std::vector<std::pair<int, int>> load_prior_edges(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue;
        if (a[0] == '#') continue;
        if (!(fields >> b) || (fields >> extra))
            throw CliError(kParse, path + ": line " + std::to_string(line_no) + ": expected 'i j'");
        try {
            edges.emplace_back(std::stoi(a), std::stoi(b));
        } catch (const std::exception&) {
            throw CliError(kParse, path + ": line " + std::to_string(line_no) + ": expected 'i j'");
        }
    }
    return edges;
}

struct PipelineOptions {
    std::string k_text = "0.4";
    std::uint64_t seed = 0;
    bool refine = false;
    int refine_iters = 32;
    std::string prior_edges_path;
    bool use_identifier_maps = false;
    int threads = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--k", k_text,
                       "out-degree of the auxiliary graph; values with a '.' are fractions of |X|")
            ->capture_default_str();
        cmd.add_option("--seed", seed, "seed for edge sampling and refinement")->capture_default_str();
        cmd.add_flag("--refine", refine, "tighten the selected edit paths by local search");
        cmd.add_option("--refine-iters", refine_iters, "maximum refinement sweeps per path")
            ->capture_default_str();
        cmd.add_option("--prior-edges", prior_edges_path, "file with extra candidate edges, lines 'i j'");
        cmd.add_flag("--identifier-maps", use_identifier_maps,
                     "pair nodes by unique labels when possible");
        cmd.add_option("--threads", threads, "worker threads for edge weighting")->capture_default_str();
    }

    mea::MeaConfig to_config() const {
        mea::MeaConfig cfg;
        try {
            std::size_t pos = 0;
            cfg.k = std::stod(k_text, &pos);
            if (pos != k_text.size()) throw std::invalid_argument(k_text);
        } catch (const std::exception&) {
            throw CliError(kUsage, "--k expects a number, got '" + k_text + "'");
        }
        cfg.k_is_fraction = k_text.find('.') != std::string::npos;
        cfg.seed = seed;
        cfg.refine_selected = refine;
        cfg.refine_iters = refine_iters;
        cfg.use_identifier_maps = use_identifier_maps;
        cfg.threads = threads;
        if (!prior_edges_path.empty()) cfg.prior_edges = load_prior_edges(prior_edges_path);
        return cfg;
    }
};

struct Solved {
    mea::EditArborescence arb;
    mea::CodecParams params;
    mea::ArchiveStats stats;
};

Solved solve(const mea::GraphCollection& x, const mea::MeaConfig& cfg) {
    Solved s;
    s.arb = mea::solve_mea(x, mea::derive_costs(mea::plan_base_params(x)), cfg);
    s.params = mea::plan_params(x, s.arb);
    s.stats = mea::collect_stats(x, s.arb, s.params);
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_compress(const std::string& input, const std::string& output, const std::string& format,
                 const PipelineOptions& options, bool verify) {
    const auto start = std::chrono::steady_clock::now();
    const mea::GraphCollection x = load_collection(input, format);
    const Solved s = solve(x, options.to_config());
    const mea::EncodeResult encoded = mea::encode_archive(x, s.arb);
    if (verify) {
        const mea::GraphCollection decoded = mea::decode_archive(encoded.bytes);
        if (decoded.size() != x.size()) throw CliError(kVerify, "verification failed: graph count");
        for (int i = 0; i < x.size(); ++i)
            if (!mea::check_certificate(x.graphs[i], decoded.graphs[i], encoded.certificates[i]))
                throw CliError(kVerify, "verification failed on graph " + std::to_string(i + 1));
    }
    write_file(output, encoded.bytes.data(), encoded.bytes.size());
    std::printf("graphs: %d\n", x.size());
    std::printf("archive bits: %llu (%zu bytes on disk)\n",
                static_cast<unsigned long long>(s.stats.total_bits), encoded.bytes.size());
    std::printf("star ratio: %.3f\n", s.stats.star_ratio);
    if (verify) std::printf("verified: yes\n");
    std::printf("wall time: %.3f s\n", seconds_since(start));
    return kOk;
}

int cmd_decompress(const std::string& archive, const std::string& output, const std::string& format) {
    const std::string bytes = read_file(archive);
    const mea::GraphCollection x =
        mea::decode_archive(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
    const std::string text = mea::serialize_collection(x, parse_format(format));
    write_file(output, text.data(), text.size());
    std::printf("graphs: %d\n", x.size());
    return kOk;
}

int cmd_verify(const std::string& archive, const std::string& input, const std::string& format) {
    const std::string bytes = read_file(archive);
    const mea::GraphCollection decoded =
        mea::decode_archive(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
    const mea::GraphCollection original = load_collection(input, format);
    if (decoded.size() != original.size()) {
        std::fprintf(stderr, "graph counts differ: %d vs %d\n", original.size(), decoded.size());
        return kVerify;
    }
    for (int i = 0; i < original.size(); ++i) {
        const auto cert = mea::find_isomorphism(original.graphs[i], decoded.graphs[i]);
        if (!cert || !mea::check_certificate(original.graphs[i], decoded.graphs[i], *cert)) {
            std::fprintf(stderr, "graph %d is not isomorphic to its archived form\n", i + 1);
            return kVerify;
        }
    }
    std::printf("ok: %d graphs isomorphic\n", original.size());
    return kOk;
}

int cmd_stats(const std::string& input, const std::string& format, const PipelineOptions& options) {
    const mea::GraphCollection x = load_collection(input, format);
    const Solved s = solve(x, options.to_config());
    const mea::ArchiveStats& st = s.stats;
    std::printf("graphs: %d\n", x.size());
    std::printf("archive bits: %llu\n", static_cast<unsigned long long>(st.total_bits));
    std::printf("star bits: %llu\n", static_cast<unsigned long long>(st.star_bits));
    std::printf("star ratio: %.3f\n", st.star_ratio);
    std::printf("arborescence cost: %lld\n", static_cast<long long>(st.arborescence_cost));
    std::printf("ops: ni-ed=%lld i-ed=%lld nd=%lld nr=%lld er=%lld ni=%lld ei=%lld\n",
                static_cast<long long>(st.ops.edge_deletions),
                static_cast<long long>(st.ops.implied_edge_deletions),
                static_cast<long long>(st.ops.node_deletions),
                static_cast<long long>(st.ops.node_relabels),
                static_cast<long long>(st.ops.edge_relabels),
                static_cast<long long>(st.ops.node_insertions),
                static_cast<long long>(st.ops.edge_insertions));
    std::printf("mean depth: %.2f  max depth: %d\n", st.mean_depth, st.max_depth);
    std::printf("leaves: %d  inner: %d\n", st.leaf_count, st.inner_count);
    return kOk;
}

int cmd_bench(const std::string& input, const std::string& format, const PipelineOptions& options,
              const std::string& k_list, int repetitions, const std::string& csv_path) {
    const mea::GraphCollection x = load_collection(input, format);
    std::vector<std::string> k_values;
    {
        std::istringstream in(k_list);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) k_values.push_back(item);
    }
    if (k_values.empty()) throw CliError(kUsage, "--k-list is empty");
    if (repetitions < 1) throw CliError(kUsage, "--repetitions must be at least 1");

    std::ostringstream csv;
    csv << "k,repetitions,mean_bits,std_bits,mean_star_ratio,mean_seconds\n";
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
        PipelineOptions run = options;
        run.k_text = k_values[ki];
        double sum_bits = 0, sum_sq = 0, sum_ratio = 0, sum_time = 0;
        for (int rep = 0; rep < repetitions; ++rep) {
            mea::MeaConfig cfg = run.to_config();
            cfg.seed = mea::derive_seed(options.seed, ki, static_cast<std::uint64_t>(rep));
            const auto start = std::chrono::steady_clock::now();
            Solved s;
            s.arb = mea::solve_mea(x, mea::derive_costs(mea::plan_base_params(x)), cfg);
            s.params = mea::plan_params(x, s.arb);
            s.stats = mea::collect_stats(x, s.arb, s.params);
            const double elapsed = seconds_since(start);
            const double bits = static_cast<double>(s.stats.total_bits);
            sum_bits += bits;
            sum_sq += bits * bits;
            sum_ratio += s.stats.star_ratio;
            sum_time += elapsed;
        }
        const double mean = sum_bits / repetitions;
        const double variance = std::max(0.0, sum_sq / repetitions - mean * mean);
        csv << k_values[ki] << ',' << repetitions << ',' << mean << ',' << std::sqrt(variance) << ','
            << sum_ratio / repetitions << ',' << sum_time / repetitions << '\n';
        std::fprintf(stderr, "k=%s: mean %.0f bits over %d runs (%.3f s/run)\n", k_values[ki].c_str(),
                     mean, repetitions, sum_time / repetitions);
    }
    if (csv_path.empty()) {
        std::fputs(csv.str().c_str(), stdout);
    } else {
        const std::string text = csv.str();
        write_file(csv_path, text.data(), text.size());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arborescence-based compressor for labeled graph collections"};
    app.require_subcommand(1);

    std::string input, output, archive, format = "text";
    bool verify = false;
    PipelineOptions options;
    std::string k_list = "0.1,0.2,0.4,1.0", csv_path;
    int repetitions = 5;

    CLI::App* compress = app.add_subcommand("compress", "compress a collection into an archive");
    compress->add_option("input", input, "collection file")->required();
    compress->add_option("--output", output, "archive path")->required();
    compress->add_option("--format", format, "text|gxl")->capture_default_str();
    options.add_to(*compress);
    compress->add_flag("--verify", verify, "decode the fresh archive and check certificates");

    CLI::App* decompress = app.add_subcommand("decompress", "reconstruct a collection from an archive");
    decompress->add_option("archive", archive, "archive path")->required();
    decompress->add_option("--output", output, "collection output path")->required();
    decompress->add_option("--format", format, "text|gxl")->capture_default_str();

    CLI::App* verify_cmd = app.add_subcommand("verify", "check an archive against the original collection");
    verify_cmd->add_option("archive", archive, "archive path")->required();
    verify_cmd->add_option("--input", input, "original collection file")->required();
    verify_cmd->add_option("--format", format, "text|gxl")->capture_default_str();

    CLI::App* stats = app.add_subcommand("stats", "solve and report sizes without writing an archive");
    stats->add_option("input", input, "collection file")->required();
    stats->add_option("--format", format, "text|gxl")->capture_default_str();
    options.add_to(*stats);

    CLI::App* bench = app.add_subcommand("bench", "sweep k and report archive sizes");
    bench->add_option("input", input, "collection file")->required();
    bench->add_option("--format", format, "text|gxl")->capture_default_str();
    bench->add_option("--k-list", k_list, "comma-separated k values")->capture_default_str();
    bench->add_option("--repetitions", repetitions, "runs per k value")->capture_default_str();
    bench->add_option("--output", csv_path, "write the CSV table here instead of stdout");
    options.add_to(*bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (compress->parsed()) return cmd_compress(input, output, format, options, verify);
        if (decompress->parsed()) return cmd_decompress(archive, output, format);
        if (verify_cmd->parsed()) return cmd_verify(archive, input, format);
        if (stats->parsed()) return cmd_stats(input, format, options);
        if (bench->parsed()) return cmd_bench(input, format, options, k_list, repetitions, csv_path);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code;
    } catch (const mea::ArchiveError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kCorrupt;
    } catch (const mea::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kParse;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kPipeline;
    }
    return kUsage;
}
