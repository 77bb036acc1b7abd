#pragma once

#include <cstddef>
#include <deque>
#include <utility>

namespace repsim {

// Drop-tail FIFO interface queue.
template <typename T>
class NodeBuffer {
  public:
    explicit NodeBuffer(std::size_t capacity = 64) : cap_(capacity) {}

    // false = queue full, arrival dropped from the tail
    bool push(T v) {
        if (q_.size() >= cap_) return false;
        q_.push_back(std::move(v));
        return true;
    }

    T pop() {
        T v = std::move(q_.front());
        q_.pop_front();
        return v;
    }

    std::size_t size() const { return q_.size(); }
    bool empty() const { return q_.empty(); }
    std::size_t capacity() const { return cap_; }

  private:
    std::size_t cap_;
    std::deque<T> q_;
};

} // namespace repsim
