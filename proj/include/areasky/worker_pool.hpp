/**
 * @file worker_pool.hpp
 * @brief Fixed-size pool of logical workers executing indexed task batches.
 *
 * Stages submit a batch of tasks 0..count-1; workers pull indices from the
 * batch's shared counter and the call blocks until the batch drains (a
 * barrier). Each batch is a self-contained shared state object, so a worker
 * waking late simply finds the old batch exhausted and moves on — it can
 * never pull from a newer batch's counter with an older batch's function.
 * Tasks write results into caller-owned slots keyed by index, so outputs
 * are identical for any worker count or schedule. Per-worker busy time is
 * tracked per batch to report the stage's critical path.
 */

#ifndef AREASKY_WORKER_POOL_HPP
#define AREASKY_WORKER_POOL_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace areasky {

class WorkerPool {
public:
    struct BatchTiming {
        double wall_ms = 0.0;           ///< barrier-to-barrier elapsed time
        double critical_path_ms = 0.0;  ///< max over workers of busy time
    };

    explicit WorkerPool(int workers) {
        if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
        threads_.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            threads_.emplace_back([this, w] { worker_loop(w); });
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            shutdown_ = true;
        }
        work_cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    int worker_count() const { return static_cast<int>(threads_.size()); }

    /// Runs fn(task) for every task in [0, count). Blocks until the batch
    /// completes; rethrows the first task exception after the barrier.
    BatchTiming run(int count, std::function<void(int)> fn) {
        const auto start = std::chrono::steady_clock::now();
        BatchTiming timing;
        if (count <= 0) return timing;

        auto batch = std::make_shared<Batch>();
        batch->fn = std::move(fn);
        batch->count = count;
        batch->remaining = count;
        batch->busy_ns.assign(threads_.size(), 0);

        {
            std::lock_guard<std::mutex> lock(mutex_);
            current_ = batch;
            ++generation_;
        }
        work_cv_.notify_all();

        {
            std::unique_lock<std::mutex> lock(mutex_);
            done_cv_.wait(lock, [&] { return batch->remaining == 0; });
            if (current_ == batch) current_.reset();
        }

        timing.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        for (long long ns : batch->busy_ns)
            timing.critical_path_ms =
                std::max(timing.critical_path_ms, static_cast<double>(ns) / 1e6);
        if (batch->error) std::rethrow_exception(batch->error);
        return timing;
    }

private:
    struct Batch {
        std::function<void(int)> fn;
        int count = 0;
        std::atomic<int> next{0};
        int remaining = 0;                // guarded by the pool mutex
        std::vector<long long> busy_ns;   // per worker, guarded by the pool mutex
        std::exception_ptr error;         // first failure, guarded by the pool mutex
    };

    void worker_loop(int worker_id) {
        std::uint64_t seen_generation = 0;
        while (true) {
            std::shared_ptr<Batch> batch;
            {
                std::unique_lock<std::mutex> lock(mutex_);
                work_cv_.wait(lock, [&] {
                    return shutdown_ || (current_ != nullptr && generation_ != seen_generation);
                });
                if (shutdown_) return;
                seen_generation = generation_;
                batch = current_;
            }

            long long busy_ns = 0;
            int completed = 0;
            std::exception_ptr error;
            while (true) {
                const int task = batch->next.fetch_add(1, std::memory_order_relaxed);
                if (task >= batch->count) break;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    batch->fn(task);
                } catch (...) {
                    if (!error) error = std::current_exception();
                }
                busy_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
                ++completed;
            }

            {
                std::lock_guard<std::mutex> lock(mutex_);
                batch->busy_ns[static_cast<std::size_t>(worker_id)] += busy_ns;
                batch->remaining -= completed;
                if (error && !batch->error) batch->error = error;
                if (batch->remaining == 0) done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable work_cv_;
    std::condition_variable done_cv_;
    std::shared_ptr<Batch> current_;
    std::uint64_t generation_ = 0;
    bool shutdown_ = false;
};

}  // namespace areasky

#endif  // AREASKY_WORKER_POOL_HPP
