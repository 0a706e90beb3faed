#pragma once

#include <atomic>
#include <cmath>

namespace ifcr {

/// Rate unit for every mutual-information and capacity value in the library.
/// Bits (log base 2) by default; switchable to nats process-wide. Intended to
/// be set once at startup (e.g. from a CLI flag) before any computation.
enum class RateBase { bits, nats };

namespace detail {
inline std::atomic<RateBase>& rate_base_storage() {
    static std::atomic<RateBase> base{RateBase::bits};
    return base;
}
}  // namespace detail

inline void set_rate_base(RateBase b) { detail::rate_base_storage().store(b); }
inline RateBase rate_base() { return detail::rate_base_storage().load(); }

/// log of x in the configured base.
inline double rate_log(double x) {
    return rate_base() == RateBase::bits ? std::log2(x) : std::log(x);
}

/// x * log(x) with the 0 log 0 = 0 convention.
inline double xlogx(double x) { return x > 0.0 ? x * rate_log(x) : 0.0; }

}  // namespace ifcr
