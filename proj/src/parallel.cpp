#include "projpart/parallel.hpp"

#include <atomic>
#include <string>

namespace projpart {

namespace {
std::atomic<int> explicit_workers{0};
}

void set_worker_count(int workers) { explicit_workers = std::max(0, workers); }

int worker_count() {
    if (const int w = explicit_workers.load(); w > 0) return w;
    if (const char* env = std::getenv(workers_env)) {
        try {
            const int w = std::stoi(env);
            if (w > 0) return w;
        } catch (...) {
        }
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

}  // namespace projpart
