#include "retcc/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace retcc {

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;

    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, n);
    if (workers == 1) {
        fn(0, n);
        return;
    }

    const std::size_t base = n / workers;
    const std::size_t rem = n % workers;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);

    auto guarded = [&](std::size_t w, std::size_t begin, std::size_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < rem ? 1 : 0);
        const std::size_t end = begin + len;
        if (w + 1 == workers) {
            guarded(w, begin, end); // last chunk runs on this thread
        } else {
            threads.emplace_back(guarded, w, begin, end);
        }
        begin = end;
    }
    for (auto& t : threads) t.join();

    // Lowest chunk's failure wins so the surfaced error is deterministic.
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace retcc
