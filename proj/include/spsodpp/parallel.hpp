#pragma once

#include <cstddef>
#include <functional>
#include <memory>

namespace spsodpp {

/// Fixed-size pool for index-parallel loops. `workers <= 1` runs inline.
/// Each index is processed exactly once and writes only its own slot, so
/// results never depend on the worker count.
class WorkPool {
 public:
  explicit WorkPool(std::size_t workers);
  ~WorkPool();
  WorkPool(const WorkPool&) = delete;
  WorkPool& operator=(const WorkPool&) = delete;

  std::size_t workers() const { return workers_; }

  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

 private:
  std::size_t workers_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace spsodpp
