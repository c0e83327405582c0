#pragma once

#include <atomic>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>

namespace parametrix {

// Keyed memo table with a once-only computation contract: the first caller of
// a key runs the compute function, concurrent callers for the same key block
// on the shared future, later callers read the cached value. Values are
// immutable after insertion.
template <class K, class V>
class OnceMap {
public:
    std::shared_ptr<const V> get_or_compute(const K& key, const std::function<V()>& compute) {
        std::shared_future<std::shared_ptr<const V>> fut;
        bool owner = false;
        std::promise<std::shared_ptr<const V>> prom;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = entries_.find(key);
            if (it == entries_.end()) {
                fut = prom.get_future().share();
                entries_.emplace(key, fut);
                owner = true;
            } else {
                fut = it->second;
            }
        }
        if (owner) {
            ++computations_;
            try {
                prom.set_value(std::make_shared<const V>(compute()));
            } catch (...) {
                prom.set_exception(std::current_exception());
            }
        }
        return fut.get();
    }

    long computations() const { return computations_.load(); }

private:
    std::mutex mu_;
    std::map<K, std::shared_future<std::shared_ptr<const V>>> entries_;
    std::atomic<long> computations_{0};
};

} // namespace parametrix
