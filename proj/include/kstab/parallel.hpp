#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace kstab {

/// Worker count: KSTAB_THREADS if set and positive, else the hardware count.
inline unsigned worker_count() {
    if (const char* env = std::getenv("KSTAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(0..count-1) on a pool; results are indexed by case, so output
/// order never depends on scheduling. The first exception (by index) is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace kstab
