#include "hexcurv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hexcurv {

int thread_count()
{
    int n = 0;
    if (const char* env = std::getenv("HEXCURV_THREADS"))
        n = std::atoi(env);
    if (n <= 0)
        n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

void parallel_for(int n, const std::function<void(int)>& body)
{
    const int workers = std::min(thread_count(), n);
    if (workers <= 1 || n < 64) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    int firstIndex = n;
    std::mutex m;
    auto run = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                // keep the error of the lowest index so failures are reproducible
                if (i < firstIndex) {
                    firstIndex = i;
                    first = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    for (auto& t : pool)
        t.join();
    if (first)
        std::rethrow_exception(first);
}

}  // namespace hexcurv
