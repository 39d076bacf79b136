#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace projpart {

/// Environment variable holding the default worker count.
inline constexpr const char* workers_env = "PROJPART_WORKERS";

void set_worker_count(int workers);
/// Explicit setting, else $PROJPART_WORKERS, else hardware concurrency.
int worker_count();

/// Runs fn(shard) for shard in [0, shards) on up to worker_count() threads.
/// Shards are claimed in index order; results must be merged by the caller
/// per shard so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_shards(std::size_t shards, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, worker_count()));
    if (workers == 1 || shards <= 1) {
        for (std::size_t s = 0; s < shards; ++s) fn(s);
        return;
    }
    std::mutex guard;
    std::size_t next = 0;
    std::exception_ptr error;
    auto body = [&] {
        while (true) {
            std::size_t s = 0;
            {
                std::lock_guard lock(guard);
                if (next >= shards || error) return;
                s = next++;
            }
            try {
                fn(s);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, shards); ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace projpart
