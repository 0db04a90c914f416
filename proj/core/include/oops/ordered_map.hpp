#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oops {

// Map with string keys that preserves insertion order. Documents use it for
// paths, operations, responses, and content so serialization stays stable.
template <typename V>
class OrderedMap {
public:
    using Item = std::pair<std::string, V>;
    using iterator = typename std::vector<Item>::iterator;
    using const_iterator = typename std::vector<Item>::const_iterator;

    V& operator[](const std::string& key) {
        if (V* existing = find(key)) return *existing;
        items_.emplace_back(key, V{});
        return items_.back().second;
    }

    V* find(const std::string& key) {
        for (auto& [k, v] : items_) {
            if (k == key) return &v;
        }
        return nullptr;
    }

    const V* find(const std::string& key) const {
        for (const auto& [k, v] : items_) {
            if (k == key) return &v;
        }
        return nullptr;
    }

    bool contains(const std::string& key) const { return find(key) != nullptr; }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    iterator begin() { return items_.begin(); }
    iterator end() { return items_.end(); }
    const_iterator begin() const { return items_.begin(); }
    const_iterator end() const { return items_.end(); }

private:
    std::vector<Item> items_;
};

} // namespace oops
