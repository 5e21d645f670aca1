#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

// Global size guard. Anything that would materialize more entries than the
// limit (a carrier, a table, a function space, a lattice) fails with a
// BudgetError instead.
namespace uag::budget {

inline constexpr std::size_t kDefaultLimit = 65536;

std::size_t limit() noexcept;
void set_limit(std::size_t entries) noexcept;

/// Throws BudgetError when `entries` exceeds the limit.
void require(std::size_t entries, std::string_view what);

/// base^exp, or nullopt on overflow of std::size_t.
std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp) noexcept;

/// base^exp checked against the limit.
std::size_t require_pow(std::size_t base, std::size_t exp, std::string_view what);

/// Restores the previous limit on destruction.
class ScopedLimit {
 public:
  explicit ScopedLimit(std::size_t entries) : saved_(limit()) { set_limit(entries); }
  ~ScopedLimit() { set_limit(saved_); }
  ScopedLimit(const ScopedLimit&) = delete;
  ScopedLimit& operator=(const ScopedLimit&) = delete;

 private:
  std::size_t saved_;
};

}  // namespace uag::budget
