#include "spsodpp/parallel.hpp"

#include <algorithm>

#include <tbb/blocked_range.h>
#include <tbb/info.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace spsodpp {

struct WorkPool::Impl {
  explicit Impl(int n) : arena(n) {}
  tbb::task_arena arena;
};

WorkPool::WorkPool(std::size_t workers) : workers_(workers == 0 ? 1 : workers) {
  // More threads than cores only makes TBB warn; results are identical anyway.
  const int threads = std::min(static_cast<int>(workers_), tbb::info::default_concurrency());
  if (workers_ > 1) impl_ = std::make_unique<Impl>(std::max(threads, 1));
}

WorkPool::~WorkPool() = default;

void WorkPool::parallel_for(std::size_t n,
                            const std::function<void(std::size_t)>& body) {
  if (!impl_ || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  impl_->arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
                      });
  });
}

}  // namespace spsodpp
