#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <new>
#include <type_traits>

namespace indset {

/// Vector of trivially copyable values with N slots stored inline. Spills
/// to the heap past N. Only the operations the engine needs.
template <class T, std::uint32_t N>
class SmallVector {
  static_assert(std::is_trivially_copyable_v<T>);

 public:
  SmallVector() noexcept = default;
  SmallVector(const SmallVector&) = delete;
  SmallVector& operator=(const SmallVector&) = delete;

  SmallVector(SmallVector&& other) noexcept { steal(other); }
  SmallVector& operator=(SmallVector&& other) noexcept {
    if (this != &other) {
      release();
      steal(other);
    }
    return *this;
  }

  ~SmallVector() { release(); }

  T* data() noexcept { return heap_ ? heap_ : inline_; }
  const T* data() const noexcept { return heap_ ? heap_ : inline_; }
  std::uint32_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  T* begin() noexcept { return data(); }
  T* end() noexcept { return data() + size_; }
  const T* begin() const noexcept { return data(); }
  const T* end() const noexcept { return data() + size_; }

  T& operator[](std::size_t k) noexcept { return data()[k]; }
  const T& operator[](std::size_t k) const noexcept { return data()[k]; }
  T& back() noexcept { return data()[size_ - 1]; }

  void push_back(T value) {
    if (size_ == capacity()) grow();
    data()[size_++] = value;
  }

  void pop_back() noexcept {
    assert(size_ != 0);
    --size_;
  }

  // Keeps any heap block for reuse.
  void clear() noexcept { size_ = 0; }

 private:
  std::uint32_t capacity() const noexcept { return heap_ ? heap_cap_ : N; }

  void grow() {
    const std::uint32_t cap = capacity() * 2;
    auto* block = static_cast<T*>(std::malloc(sizeof(T) * cap));
    if (!block) throw std::bad_alloc();
    std::copy(data(), data() + size_, block);
    std::free(heap_);
    heap_ = block;
    heap_cap_ = cap;
  }

  void release() noexcept {
    std::free(heap_);
    heap_ = nullptr;
    size_ = 0;
  }

  void steal(SmallVector& other) noexcept {
    size_ = other.size_;
    heap_ = other.heap_;
    heap_cap_ = other.heap_cap_;
    if (!heap_) std::copy(other.inline_, other.inline_ + size_, inline_);
    other.heap_ = nullptr;
    other.size_ = 0;
  }

  T* heap_ = nullptr;
  std::uint32_t size_ = 0;
  std::uint32_t heap_cap_ = 0;
  T inline_[N];
};

}  // namespace indset
