#include "shellwave/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace shellwave {

namespace {
std::atomic<int> g_threads{1};
thread_local bool t_in_pool = false;
}

void set_num_threads(int n) { g_threads = n < 1 ? 1 : n; }
int num_threads() { return g_threads; }

int init_threads_from_env()
{
    if (const char* s = std::getenv("SHELLWAVE_THREADS")) {
        try {
            set_num_threads(std::stoi(s));
        } catch (const std::exception&) {
            set_num_threads(1);
        }
    }
    return num_threads();
}

void parallel_for(int n, const std::function<void(int)>& fn)
{
    // nested calls run inline on the calling worker
    const int nt = t_in_pool ? 1 : std::min(num_threads(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        t_in_pool = true;
        for (int i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
        t_in_pool = false;
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace shellwave
