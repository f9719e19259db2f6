#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "embgc/cache.hpp"
#include "embgc/complex_e.hpp"
#include "embgc/complex_hh.hpp"

namespace embgc {

// Runs fn(i) for i in [0, count) on a bounded worker pool.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned jobs = 0) {
    if (count == 0) return;
    unsigned hw = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
    hw = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (hw <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < hw; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Memoizing front end over the slice builders, with an optional disk cache.
// Distinct slices are independent work units and may be requested from
// several threads.
class Engine {
public:
    Engine() = default;
    explicit Engine(std::filesystem::path cache_root) {
        if (!cache_root.empty()) cache_.emplace(std::move(cache_root));
    }

    std::shared_ptr<const EpiSlice> epi(int mpar, int npar, int s, int t, bool reduced = false) {
        auto key = std::tuple(mpar & 1, npar & 1, s, t, reduced);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = epi_memo_.find(key);
            if (it != epi_memo_.end()) return it->second;
        }
        std::shared_ptr<const EpiSlice> built;
        if (cache_) {
            if (auto loaded = cache_->load_epi(mpar & 1, npar & 1, s, t, reduced)) {
                built = std::make_shared<EpiSlice>(std::move(*loaded));
                ++cache_hits_;
            }
        }
        if (!built) {
            built = std::make_shared<EpiSlice>(build_epi_slice(mpar, npar, s, t, reduced));
            ++computed_;
            if (cache_) cache_->store_epi(*built);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return epi_memo_.try_emplace(key, built).first->second;
    }

    std::shared_ptr<const HHSlice> hh(int mpar, int npar, int s, int t, bool connected = true) {
        auto key = std::tuple(mpar & 1, npar & 1, s, t, connected);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = hh_memo_.find(key);
            if (it != hh_memo_.end()) return it->second;
        }
        std::shared_ptr<const HHSlice> built;
        if (cache_) {
            if (auto loaded = cache_->load_hh(mpar & 1, npar & 1, s, t, connected)) {
                built = std::make_shared<HHSlice>(std::move(*loaded));
                ++cache_hits_;
            }
        }
        if (!built) {
            built = std::make_shared<HHSlice>(build_hh_slice(mpar, npar, s, t, connected));
            ++computed_;
            if (cache_) cache_->store_hh(*built);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return hh_memo_.try_emplace(key, built).first->second;
    }

    long cache_hits() const { return cache_hits_; }
    long computed() const { return computed_; }

private:
    std::optional<SliceCache> cache_;
    std::mutex mu_;
    std::map<std::tuple<int, int, int, int, bool>, std::shared_ptr<const EpiSlice>> epi_memo_;
    std::map<std::tuple<int, int, int, int, bool>, std::shared_ptr<const HHSlice>> hh_memo_;
    std::atomic<long> cache_hits_{0};
    std::atomic<long> computed_{0};
};

}  // namespace embgc
