#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace banditstream {

enum class Errc {
  domain,            // argument outside the operation's domain
  config,            // inconsistent configuration
  budget_exhausted,  // single pull attempted with pulls_used == horizon
  budget_truncated,  // batch could only be partially served
  stale_handle,      // arm was dropped or never arrived (single-pass rule)
  overflow,          // value does not fit the machine integer width
  aggregation,       // relative table cannot be formed
  io,
  parse,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::domain: return "domain";
    case Errc::config: return "config";
    case Errc::budget_exhausted: return "budget-exhausted";
    case Errc::budget_truncated: return "budget-truncated";
    case Errc::stale_handle: return "stale-handle";
    case Errc::overflow: return "overflow";
    case Errc::aggregation: return "aggregation";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

class BanditError : public std::runtime_error {
 public:
  BanditError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by batch pulls that hit the horizon. The served prefix has already
/// been charged to the environment; `served()` says how many pulls that was.
class BudgetTruncated : public BanditError {
 public:
  BudgetTruncated(std::uint64_t requested, std::uint64_t served)
      : BanditError(Errc::budget_truncated,
                    "requested " + std::to_string(requested) + " pulls, only " +
                        std::to_string(served) + " remained"),
        requested_(requested),
        served_(served) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t served() const noexcept { return served_; }

 private:
  std::uint64_t requested_;
  std::uint64_t served_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw BanditError(code, what); }

}  // namespace banditstream
