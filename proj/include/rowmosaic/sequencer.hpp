#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rowmosaic/match_gate.hpp"

namespace rowmosaic {

struct ChainLink {
    int from = 0;
    int to = 0;
    PairVerdict verdict;
};

struct ChainAttempt {
    int from = 0;
    int to = 0;
    PairVerdict verdict;
};

struct ChainBreak {
    int break_at = 0;
    std::vector<std::pair<int, RejectReason>> tried;  // candidate, reason (farthest first)
};

struct StitchChain {
    std::vector<int> used_indices;
    std::vector<ChainLink> links;
    // Every gate evaluation in farthest-first order, truncated at the
    // accepted candidate of each focal image; doubles as the verdict log.
    std::vector<ChainAttempt> attempts;
    std::optional<ChainBreak> break_info;
};

using GateFn = std::function<PairVerdict(int, int)>;

// Greedy farthest-first selection: from focal i, candidates i+window down to
// i+1; the first accepted becomes the next chain node. Gate results are
// memoized per ordered pair. strict mode throws Error(chain_break) on a
// break; partial mode records it and returns the chain built so far. With
// threads > 1 all candidates of a focal are gated concurrently (the logged
// attempts are identical either way).
StitchChain build_chain(int n_images, const PipelineConfig& cfg, const GateFn& gate,
                        bool strict = false, int threads = 1);

// Contiguous slice of chain positions [first_pos, last_pos].
struct Batch {
    int first_pos = 0;
    int last_pos = 0;

    int size() const { return last_pos - first_pos + 1; }
};

// Consecutive slices of batch_size used images, adjacent batches sharing
// exactly one image; a would-be 1-image tail is never produced.
std::vector<Batch> build_batches(const StitchChain& chain, int batch_size);

}  // namespace rowmosaic
