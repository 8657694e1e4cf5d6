#include "srm/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace srm::parallel {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) {
    if (n < 0) throw std::invalid_argument("set_max_threads: thread cap must be >= 0");
    g_max_threads.store(n);
}

int max_threads() {
    return g_max_threads.load();
}

void for_index(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    int cap = max_threads();
    if (cap == 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    const auto workers = static_cast<std::int64_t>(cap) < n ? cap : static_cast<int>(n);

    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace srm::parallel
