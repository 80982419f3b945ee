#pragma once

#include <array>
#include <cstdint>

namespace ordopt {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key);
};

/// Deterministic random stream keyed by (seed, stream id).
///
/// Every stream is an independent counter range of the same bijection, so
/// stream i produces the same draws no matter which thread consumes it.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller on two uniforms).
  double normal();

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  std::array<double, 2> uniforms_{};
  int uniforms_left_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ordopt
