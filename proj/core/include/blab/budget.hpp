#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace blab {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000ULL;

// BURNSIDE_LAB_BUDGET if set and valid, else kDefaultNodeBudget.
std::uint64_t default_node_budget();

/// Shared node counter for exhaustive enumerations. Whether a run exceeds
/// the budget depends only on the total node count, so the outcome does not
/// depend on how the work is sharded.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit = default_node_budget())
      : limit_(limit) {}
  NodeBudget(const NodeBudget&) = delete;
  NodeBudget& operator=(const NodeBudget&) = delete;

  // Throws BudgetExceeded once the running total passes the limit.
  void charge(std::uint64_t nodes, const char* what);

  std::uint64_t used() const noexcept { return used_.load(); }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

// Number of workers to use for `jobs` (0 means hardware concurrency).
unsigned resolve_jobs(unsigned jobs);

// Runs task(i) for i in [0, count) on up to `jobs` threads. Tasks must write
// only to their own output slot. The first exception thrown by any task is
// rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task);

}  // namespace blab
