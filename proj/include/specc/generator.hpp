#pragma once

// Minimal lazy generator coroutine. Single-consumer: each Generator owns its
// cursor; distinct generators over shared (sealed) tables may run concurrently.

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

namespace specc {

template <typename T>
class Generator {
 public:
  struct promise_type {
    std::optional<T> current;
    std::exception_ptr pending;

    Generator get_return_object() {
      return Generator{std::coroutine_handle<promise_type>::from_promise(*this)};
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    std::suspend_always yield_value(T value) {
      current = std::move(value);
      return {};
    }
    void return_void() {}
    void unhandled_exception() { pending = std::current_exception(); }
  };

  Generator() = default;
  Generator(Generator&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Generator& operator=(Generator&& other) noexcept {
    if (this != &other) {
      destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Generator(const Generator&) = delete;
  Generator& operator=(const Generator&) = delete;
  ~Generator() { destroy(); }

  // Advances to the next value; returns false when exhausted.
  bool next() {
    if (!handle_ || handle_.done()) return false;
    handle_.resume();
    if (handle_.promise().pending) std::rethrow_exception(handle_.promise().pending);
    return !handle_.done();
  }

  T& value() { return *handle_.promise().current; }

  struct iterator {
    Generator* gen = nullptr;
    bool operator!=(std::default_sentinel_t) const { return gen != nullptr; }
    iterator& operator++() {
      if (!gen->next()) gen = nullptr;
      return *this;
    }
    T& operator*() const { return gen->value(); }
  };

  iterator begin() {
    iterator it{this};
    return next() ? it : iterator{};
  }
  std::default_sentinel_t end() { return {}; }

 private:
  explicit Generator(std::coroutine_handle<promise_type> h) : handle_(h) {}
  void destroy() {
    if (handle_) handle_.destroy();
  }
  std::coroutine_handle<promise_type> handle_;
};

}  // namespace specc
