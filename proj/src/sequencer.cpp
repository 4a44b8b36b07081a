#include "rowmosaic/sequencer.hpp"

#include <map>
#include <sstream>

#include "rowmosaic/errors.hpp"
#include "rowmosaic/parallel.hpp"

namespace rowmosaic {

StitchChain build_chain(int n_images, const PipelineConfig& cfg, const GateFn& gate,
                        bool strict, int threads) {
    if (n_images < 2)
        throw Error(ErrorCode::empty_input, "chain needs at least 2 images");

    StitchChain chain;
    chain.used_indices.push_back(0);

    std::map<std::pair<int, int>, PairVerdict> memo;
    auto gated = [&](int i, int j) -> const PairVerdict& {
        auto it = memo.find({i, j});
        if (it == memo.end()) it = memo.emplace(std::pair{i, j}, gate(i, j)).first;
        return it->second;
    };

    int focal = 0;
    const int last = n_images - 1;
    while (focal < last) {
        const int far = std::min(focal + cfg.window, last);

        if (threads != 1 && far - focal > 1) {
            // Gate the whole window concurrently; selection below still
            // honors farthest-first order.
            std::vector<int> todo;
            for (int j = far; j > focal; --j)
                if (!memo.count({focal, j})) todo.push_back(j);
            std::vector<PairVerdict> verdicts(todo.size());
            parallel_for(0, int(todo.size()), threads,
                         [&](int k) { verdicts[std::size_t(k)] = gate(focal, todo[k]); });
            for (std::size_t k = 0; k < todo.size(); ++k)
                memo.emplace(std::pair{focal, todo[k]}, std::move(verdicts[k]));
        }

        int accepted = -1;
        for (int j = far; j > focal; --j) {
            const PairVerdict& v = gated(focal, j);
            chain.attempts.push_back({focal, j, v});
            if (v.accepted) {
                accepted = j;
                chain.links.push_back({focal, j, v});
                chain.used_indices.push_back(j);
                break;
            }
        }
        if (accepted < 0) {
            ChainBreak brk;
            brk.break_at = focal;
            for (int j = far; j > focal; --j)
                brk.tried.emplace_back(j, gated(focal, j).reject_reason);
            if (strict) {
                std::ostringstream msg;
                msg << "chain break at image " << focal << "; tried";
                for (const auto& [j, reason] : brk.tried)
                    msg << " " << j << ":" << to_string(reason);
                throw Error(ErrorCode::chain_break, msg.str());
            }
            chain.break_info = brk;
            break;
        }
        focal = accepted;
    }
    return chain;
}

std::vector<Batch> build_batches(const StitchChain& chain, int batch_size) {
    const int n = int(chain.used_indices.size());
    if (n < 2)
        throw Error(ErrorCode::empty_input, "batches need a chain of >= 2 used images");
    if (batch_size < 3)
        throw Error(ErrorCode::config, "batch_size must be >= 3");

    std::vector<Batch> batches;
    int pos = 0;
    while (pos < n - 1) {
        const int end = std::min(pos + batch_size - 1, n - 1);
        batches.push_back({pos, end});
        pos = end;
    }
    return batches;
}

}  // namespace rowmosaic
