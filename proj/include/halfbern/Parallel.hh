//---------------------------------------------------------------------------//
//! \file halfbern/Parallel.hh
//! \brief Minimal fork-join loop over independent chunks
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Call \c body(i) for every i in [0, count) using up to \c threads workers.
 *
 * Work is handed out dynamically, so callers must make each iteration write
 * only to its own slot; reductions are done afterwards in index order, which
 * keeps results independent of the worker count. The first exception thrown
 * by any iteration is rethrown on the calling thread.
 */
template<class F>
void parallel_for(std::size_t count, unsigned threads, F&& body)
{
    unsigned const workers = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
