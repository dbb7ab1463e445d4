#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace linkpoly {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& key) const noexcept {
    std::size_t h = key.size();
    for (int x : key) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Insert-if-absent table shared by evaluation workers. Equal keys always map
/// to equal values, so a lost race only wastes work.
template <class Value>
class ConcurrentMemo {
 public:
  std::optional<Value> find(const std::vector<int>& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const std::vector<int>& key, const Value& value) {
    std::unique_lock lock(mutex_);
    table_.try_emplace(key, value);
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }
  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<int>, Value, KeyHash> table_;
};

}  // namespace linkpoly
