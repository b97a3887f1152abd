#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace polsar {

/// Worker count: POLSAR_SD_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
inline int default_workers() {
    if (const char* env = std::getenv("POLSAR_SD_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) {
                return n;
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Runs fn(row) for every row in [0, rows) on a bounded pool. Rows are handed
/// out from a shared counter; fn must only write state owned by its row, which
/// keeps results independent of the schedule. The first exception thrown by a
/// worker is rethrown on the calling thread.
template <class Fn>
void parallel_for_rows(int rows, int workers, Fn&& fn) {
    workers = std::clamp(workers, 1, std::max(rows, 1));
    if (workers == 1) {
        for (int r = 0; r < rows; ++r) {
            fn(r);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) {
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(rows);
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace polsar
