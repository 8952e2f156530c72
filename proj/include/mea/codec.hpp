#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mea/bitstream.hpp"
#include "mea/mea.hpp"

namespace mea {

// Field widths of the fixed-length archive code plus the label dictionaries.
struct CodecParams {
    int node_bits = 0;        // per node reference
    int node_label_bits = 0;  // per node label
    int edge_label_bits = 0;  // per edge label
    int count_bits = 0;       // per stored operation count (six per path)
    int parent_bits = 0;      // per entry of the parent array
    std::vector<std::string> node_label_table;
    std::vector<std::string> edge_label_table;
};

// Per-operation bit prices implied by the field widths: a stored operation
// costs exactly the bits of its encoded fields, and implied edge deletions
// are free because they are never stored.
EditCosts derive_costs(const CodecParams& p);

// Widths that depend only on the collection; count_bits stays 0. Enough to
// price edit operations before an arborescence exists.
CodecParams plan_base_params(const GraphCollection& x);

// Full widths for encoding `arb` over `x`.
CodecParams plan_params(const GraphCollection& x, const EditArborescence& arb);

// Encodes the six stored counts followed by the operations, all at the
// widths in `params`. The emitted length is exactly
// 6*count_bits + path_cost(p, derive_costs(params)) bits.
void encode_path(BitWriter& out, const EditPath& p, const CodecParams& params);
EditPath decode_path(BitReader& in, const CodecParams& params);

struct EncodeResult {
    std::vector<std::uint8_t> bytes;
    // certificates[i-1] maps graph i of the input onto graph i of the
    // decoded archive (archives store graphs up to renumbering).
    std::vector<IsomorphismCertificate> certificates;
    std::uint64_t payload_bits = 0;  // exact size before byte padding
};

// Re-labels the arborescence into decodable form (BFS from the root,
// survivors keep their parent order) and emits the archive.
EncodeResult encode_archive(const GraphCollection& x, const EditArborescence& arb);

GraphCollection decode_archive(const std::uint8_t* data, std::size_t size);
GraphCollection decode_archive(const std::vector<std::uint8_t>& bytes);

std::uint64_t archive_header_bits(const GraphCollection& x);

// Size in bits of the degenerate star arborescence (every graph encoded
// from scratch), with count_bits recomputed for the star's own counts.
std::uint64_t star_size_bits(const GraphCollection& x, const CodecParams& params);

struct OpTotals {
    std::int64_t edge_deletions = 0;
    std::int64_t implied_edge_deletions = 0;
    std::int64_t node_deletions = 0;
    std::int64_t node_relabels = 0;
    std::int64_t edge_relabels = 0;
    std::int64_t node_insertions = 0;
    std::int64_t edge_insertions = 0;
};

struct ArchiveStats {
    std::uint64_t total_bits = 0;  // exact archive size before byte padding
    std::uint64_t star_bits = 0;
    double star_ratio = 1.0;
    std::int64_t arborescence_cost = 0;  // sum of path costs
    OpTotals ops;
    double mean_depth = 0.0;
    int max_depth = 0;
    int leaf_count = 0;
    int inner_count = 0;
};

ArchiveStats collect_stats(const GraphCollection& x, const EditArborescence& arb,
                           const CodecParams& params);

}  // namespace mea
