#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>

namespace matot {

/**
 * Gateway-side request throttle: a cap on concurrently in-flight requests
 * plus a sliding-window requests-per-minute budget. Zero disables either
 * limit. Callers block in acquire() until both constraints allow a slot.
 */
class RateLimiter {
 public:
  explicit RateLimiter(int max_in_flight = 0, int requests_per_minute = 0)
      : max_in_flight_(max_in_flight), requests_per_minute_(requests_per_minute) {}

  void acquire() {
    std::unique_lock<std::mutex> lock(mutex_);
    for (;;) {
      const auto now = std::chrono::steady_clock::now();
      prune(now);
      if ((max_in_flight_ <= 0 || in_flight_ < max_in_flight_) &&
          (requests_per_minute_ <= 0 ||
           static_cast<int>(window_.size()) < requests_per_minute_)) {
        ++in_flight_;
        if (requests_per_minute_ > 0) window_.push_back(now);
        return;
      }
      if (requests_per_minute_ > 0 && !window_.empty() &&
          static_cast<int>(window_.size()) >= requests_per_minute_) {
        cv_.wait_until(lock, window_.front() + std::chrono::minutes(1));
      } else {
        cv_.wait(lock);
      }
    }
  }

  void release() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      --in_flight_;
    }
    cv_.notify_all();
  }

  /// RAII slot held for the duration of one backend call.
  class Ticket {
   public:
    explicit Ticket(RateLimiter* limiter) : limiter_(limiter) {
      if (limiter_) limiter_->acquire();
    }
    ~Ticket() {
      if (limiter_) limiter_->release();
    }
    Ticket(const Ticket&) = delete;
    Ticket& operator=(const Ticket&) = delete;

   private:
    RateLimiter* limiter_;
  };

 private:
  void prune(std::chrono::steady_clock::time_point now) {
    while (!window_.empty() && now - window_.front() >= std::chrono::minutes(1)) {
      window_.pop_front();
    }
  }

  int max_in_flight_;
  int requests_per_minute_;
  int in_flight_ = 0;
  std::deque<std::chrono::steady_clock::time_point> window_;
  std::mutex mutex_;
  std::condition_variable cv_;
};

}  // namespace matot
