#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace rtsearch {

/// Indexed binary min-heap over dense integer ids, instrumented with a
/// percolation counter: every time an element moves one level during a
/// sift-up or sift-down the counter is incremented.
///
/// `Before(a, b)` must be a strict weak order on keys that returns true when
/// `a` should leave the heap first.
template <typename Key, typename Before>
class IndexedBinaryHeap {
public:
    static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

    IndexedBinaryHeap() = default;
    explicit IndexedBinaryHeap(std::size_t capacity, Before before = Before{})
        : before_(std::move(before)), position_(capacity, kAbsent) {}

    void reserve_ids(std::size_t capacity) {
        if (position_.size() < capacity) position_.resize(capacity, kAbsent);
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool contains(std::uint32_t id) const { return id < position_.size() && position_[id] != kAbsent; }

    std::uint32_t top() const {
        assert(!empty());
        return entries_.front().id;
    }
    const Key& top_key() const {
        assert(!empty());
        return entries_.front().key;
    }
    const Key& key(std::uint32_t id) const { return entries_[position_[id]].key; }

    void push(std::uint32_t id, Key key) {
        assert(!contains(id));
        entries_.push_back({std::move(key), id});
        position_[id] = static_cast<std::uint32_t>(entries_.size() - 1);
        sift_up(entries_.size() - 1);
    }

    std::uint32_t pop() {
        assert(!empty());
        const std::uint32_t id = entries_.front().id;
        remove_at(0);
        return id;
    }

    void erase(std::uint32_t id) {
        assert(contains(id));
        remove_at(position_[id]);
    }

    /// Removes everything; cost proportional to the current size only.
    void clear() {
        for (const auto& e : entries_) position_[e.id] = kAbsent;
        entries_.clear();
    }

    /// Ids in array order (not priority order).
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& e : entries_) fn(e.id, e.key);
    }

    std::uint64_t percolations() const { return percolations_; }
    void reset_percolations() { percolations_ = 0; }

private:
    struct Entry {
        Key key;
        std::uint32_t id;
    };

    void place(std::size_t i, Entry e) {
        position_[e.id] = static_cast<std::uint32_t>(i);
        entries_[i] = std::move(e);
    }

    void remove_at(std::size_t i) {
        position_[entries_[i].id] = kAbsent;
        Entry last = std::move(entries_.back());
        entries_.pop_back();
        if (i == entries_.size()) return;
        place(i, std::move(last));
        if (i > 0 && before_(entries_[i].key, entries_[(i - 1) / 2].key))
            sift_up(i);
        else
            sift_down(i);
    }

    void sift_up(std::size_t i) {
        Entry moving = std::move(entries_[i]);
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!before_(moving.key, entries_[parent].key)) break;
            place(i, std::move(entries_[parent]));
            ++percolations_;
            i = parent;
        }
        place(i, std::move(moving));
    }

    void sift_down(std::size_t i) {
        const std::size_t n = entries_.size();
        Entry moving = std::move(entries_[i]);
        while (true) {
            std::size_t child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && before_(entries_[child + 1].key, entries_[child].key)) ++child;
            if (!before_(entries_[child].key, moving.key)) break;
            place(i, std::move(entries_[child]));
            ++percolations_;
            i = child;
        }
        place(i, std::move(moving));
    }

    Before before_{};
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> position_;
    std::uint64_t percolations_ = 0;
};

}  // namespace rtsearch
