#ifndef WCE_PARALLEL_HPP
#define WCE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wce {

// Worker count: WCE_WORKERS env var overrides, otherwise hardware threads.
int worker_count();

// Compensated (Neumaier) accumulator; used wherever chunk results are
// merged so parallel reductions stay order-independent bit for bit.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const Kahan& o) {
        add(o.sum);
        comp += o.comp;
    }
    double value() const { return sum + comp; }
};

// Runs body(ctx, chunk_index, lo, hi) over the fixed chunk grid
// [c*chunk, min(n,(c+1)*chunk)). The chunk grid does not depend on the
// worker count; callers that need determinism collect one result per
// chunk and merge in chunk order.
template <class MakeCtx, class Body>
void parallel_chunks(std::int64_t n, std::int64_t chunk, MakeCtx make_ctx, Body body) {
    if (n <= 0) return;
    const std::int64_t num_chunks = (n + chunk - 1) / chunk;
    const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(), num_chunks));
    if (workers <= 1) {
        auto ctx = make_ctx();
        for (std::int64_t c = 0; c < num_chunks; ++c)
            body(ctx, c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mtx;
    auto run = [&] {
        try {
            auto ctx = make_ctx();
            for (;;) {
                const std::int64_t c = next.fetch_add(1);
                if (c >= num_chunks) break;
                body(ctx, c, c * chunk, std::min(n, (c + 1) * chunk));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mtx);
            if (!err) err = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}

#endif
