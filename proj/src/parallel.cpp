#include "hypercolor/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hypercolor {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t environment_threads() {
    if (const char* value = std::getenv("HYPERCOLOR_THREADS")) {
        try {
            const long parsed = std::stol(value);
            if (parsed > 0) {
                return static_cast<std::size_t>(parsed);
            }
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace

std::size_t thread_count() {
    const std::size_t forced = g_override.load();
    return forced != 0 ? forced : environment_threads();
}

void set_thread_count(std::size_t threads) {
    g_override.store(threads);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    constexpr std::size_t kChunk = 256;
    const std::size_t workers = std::min(thread_count(), (count + kChunk - 1) / kChunk);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= count) {
                    return;
                }
                const std::size_t end = std::min(count, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next.store(count);
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace hypercolor
