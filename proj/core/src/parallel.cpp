#include "hydra/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hydra {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("HYDRA_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) return cap;
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn) {
    if (n == 0) return;
    const int workers = worker_count();
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto body = [&](int worker) {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) break;
            try {
                fn(i, worker);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };

    std::vector<std::thread> threads;
    const int spawn = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(workers)));
    threads.reserve(spawn - 1);
    for (int w = 1; w < spawn; ++w) threads.emplace_back(body, w);
    body(0);
    for (std::thread& t : threads) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace hydra
