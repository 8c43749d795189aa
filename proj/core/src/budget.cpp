#include "blab/budget.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "blab/errors.hpp"

namespace blab {

std::uint64_t default_node_budget() {
  const char* env = std::getenv("BURNSIDE_LAB_BUDGET");
  if (env == nullptr || *env == '\0') {
    return kDefaultNodeBudget;
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    return kDefaultNodeBudget;
  }
  return v;
}

void NodeBudget::charge(std::uint64_t nodes, const char* what) {
  const std::uint64_t total = used_.fetch_add(nodes) + nodes;
  if (total > limit_) {
    throw BudgetExceeded(std::string(what) + ": node budget of " +
                         std::to_string(limit_) + " exceeded");
  }
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) {
    return jobs;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!stop.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          stop.store(true);
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace blab
