#include "qbethe/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace qbethe {

double LowDiscrepancy::component(std::uint64_t k, int i) const {
    // Weyl sequence with sqrt-prime irrationals; the seed offsets the index so
    // different seeds give different (still deterministic) sequences.
    static const double alpha[] = {0.4142135623730951, 0.7320508075688772, 0.2360679774997896,
                                   0.6457513110645906, 0.3166247903553998, 0.6055512754639891,
                                   0.1231056256176605, 0.3588989435406736, 0.7958315233127195,
                                   0.3851648071345040};
    const int na = static_cast<int>(sizeof(alpha) / sizeof(alpha[0]));
    double a = alpha[i % na];
    double x = 0.5 + (static_cast<double>(k) + static_cast<double>(seed_ % 4096) * 17.0 + i * 3.0) * a;
    return x - std::floor(x);
}

int thread_cap() {
    if (const char* env = std::getenv("QBETHE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int cap = thread_cap();
    int workers = cap > 0 ? std::min(cap, hw) : hw;
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qbethe
