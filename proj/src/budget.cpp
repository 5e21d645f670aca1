#include "uag/budget.hpp"

#include <atomic>
#include <string>

#include "uag/error.hpp"

namespace uag::budget {

namespace {
std::atomic<std::size_t> g_limit{kDefaultLimit};
}

std::size_t limit() noexcept { return g_limit.load(std::memory_order_relaxed); }

void set_limit(std::size_t entries) noexcept { g_limit.store(entries, std::memory_order_relaxed); }

void require(std::size_t entries, std::string_view what) {
  if (entries > limit())
    throw BudgetError(std::string(what) + " needs " + std::to_string(entries) + " entries; size guard is " +
                      std::to_string(limit()) + " (raise UAG_BUDGET)");
}

std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp) noexcept {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > static_cast<std::size_t>(-1) / base) return std::nullopt;
    out *= base;
  }
  return out;
}

std::size_t require_pow(std::size_t base, std::size_t exp, std::string_view what) {
  const auto v = checked_pow(base, exp);
  if (!v)
    throw BudgetError(std::string(what) + " needs " + std::to_string(base) + "^" + std::to_string(exp) +
                      " entries; size guard is " + std::to_string(limit()) + " (raise UAG_BUDGET)");
  require(*v, what);
  return *v;
}

}  // namespace uag::budget
