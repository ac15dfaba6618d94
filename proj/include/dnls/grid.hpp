#ifndef DNLS_GRID_HPP
#define DNLS_GRID_HPP

#include <atomic>
#include <complex>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dnls/config.hpp"

namespace dnls {

inline unsigned worker_count() {
    if (const char* env = std::getenv("DNLSE_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 512) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Evaluate f(xi, t) over the grid, t-major, in parallel over t-rows.
/// The output ordering is deterministic: rows are indexed, not raced.
template <typename F>
std::vector<cplx> evaluate_grid(const grid_spec& g, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = worker_count();
    const int nt = g.n_t, nx = g.n_xi;
    std::vector<cplx> out(static_cast<std::size_t>(nt) * nx);
    auto t_of = [&](int r) {
        return (nt == 1) ? g.t_min : g.t_min + (g.t_max - g.t_min) * r / (nt - 1);
    };
    auto xi_of = [&](int c) {
        return (nx == 1) ? g.xi_min : g.xi_min + (g.xi_max - g.xi_min) * c / (nx - 1);
    };
    std::exception_ptr error;
    std::mutex error_mutex;
    std::atomic<bool> failed{false};
    auto worker = [&](unsigned id) {
        try {
            for (int r = static_cast<int>(id); r < nt; r += static_cast<int>(threads)) {
                if (failed.load(std::memory_order_relaxed)) return;
                double t = t_of(r);
                for (int c = 0; c < nx; ++c) {
                    out[static_cast<std::size_t>(r) * nx + c] = f(xi_of(c), t);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace dnls

#endif
