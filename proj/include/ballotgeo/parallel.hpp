#ifndef BALLOTGEO_PARALLEL_HPP
#define BALLOTGEO_PARALLEL_HPP

#include <functional>
#include <thread>
#include <vector>

namespace ballotgeo {

/// Runs fn(i) for i in [0, n). Work items write to disjoint slots, so the
/// result is identical for any job count.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, n);
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ballotgeo

#endif
