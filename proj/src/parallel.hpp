#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <future>
#include <thread>
#include <vector>

namespace trustgraph::detail {

/// results[i] = task(i) for i in [0, count), spread over worker threads.
/// Result order never depends on scheduling; the first exception is rethrown.
template <typename Result, typename Task>
std::vector<Result> parallel_map(std::size_t count, Task task) {
    std::vector<Result> results(count);
    if (count == 0)
        return results;
    std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            results[i] = task(i);
        return results;
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers)
                results[i] = task(i);
        }));
    }
    std::exception_ptr failure;
    for (auto &job : jobs) {
        try {
            job.get();
        } catch (...) {
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

} // namespace trustgraph::detail
