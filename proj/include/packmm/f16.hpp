#pragma once

// IEEE 754 binary16 stored as a raw 16-bit pattern. Kernel operands are f16;
// all arithmetic happens in f32 after a lossless widening conversion
// (the vfwmacc-style contract), so only the two conversions live here.
//
// layout, msb to lsb:
//   f16 -> 1 sign + 5 exponent (bias 15) + 10 fraction
//   f32 -> 1 sign + 8 exponent (bias 127) + 23 fraction

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <span>

namespace packmm {

struct F16 {
  std::uint16_t bits = 0;

  friend constexpr bool operator==(F16 a, F16 b) { return a.bits == b.bits; }
};

// Exact widening: every finite binary16 value is representable in binary32,
// so this never rounds. NaN payloads are shifted into the f32 fraction.
constexpr float f16_to_f32(F16 x) {
  const std::uint32_t sign = static_cast<std::uint32_t>(x.bits & 0x8000u) << 16;
  std::uint32_t exp = (x.bits >> 10) & 0x1fu;
  std::uint32_t man = x.bits & 0x3ffu;
  std::uint32_t out;
  if (exp == 0x1fu) {
    out = sign | 0x7f800000u | (man << 13);  // inf / nan
  } else if (exp != 0) {
    out = sign | ((exp + 112u) << 23) | (man << 13);
  } else if (man != 0) {
    // subnormal: man * 2^-24, renormalize into the f32 exponent range
    exp = 113u;
    while ((man & 0x400u) == 0) {
      man <<= 1;
      --exp;
    }
    out = sign | (exp << 23) | ((man & 0x3ffu) << 13);
  } else {
    out = sign;  // +-0
  }
  return std::bit_cast<float>(out);
}

// Round-to-nearest-even narrowing. Overflow goes to +-inf, the subnormal
// range is handled per IEEE 754, NaNs are quieted (payload may canonicalize).
constexpr F16 f32_to_f16(float f) {
  const std::uint32_t u = std::bit_cast<std::uint32_t>(f);
  const auto sign = static_cast<std::uint16_t>((u >> 16) & 0x8000u);
  const std::uint32_t mag = u & 0x7fffffffu;

  if (mag >= 0x7f800000u) {
    if (mag == 0x7f800000u) return F16{static_cast<std::uint16_t>(sign | 0x7c00u)};
    const auto payload = static_cast<std::uint16_t>(((mag >> 13) & 0x3ffu) | 0x200u);
    return F16{static_cast<std::uint16_t>(sign | 0x7c00u | payload)};
  }

  const std::int32_t exp = static_cast<std::int32_t>(mag >> 23) - 127 + 15;
  std::uint32_t man = mag & 0x7fffffu;

  if (exp >= 0x1f) return F16{static_cast<std::uint16_t>(sign | 0x7c00u)};

  if (exp <= 0) {
    if (exp < -10) return F16{sign};  // below half the smallest subnormal
    man |= 0x800000u;
    const auto shift = static_cast<std::uint32_t>(14 - exp);
    auto val = static_cast<std::uint16_t>(man >> shift);
    const std::uint32_t rem = man & ((1u << shift) - 1u);
    const std::uint32_t half = 1u << (shift - 1);
    if (rem > half || (rem == half && (val & 1u))) ++val;
    return F16{static_cast<std::uint16_t>(sign | val)};  // carry lands on min normal
  }

  auto out = static_cast<std::uint16_t>((exp << 10) | (man >> 13));
  const std::uint32_t rem = man & 0x1fffu;
  if (rem > 0x1000u || (rem == 0x1000u && (out & 1u))) ++out;  // carry may reach inf
  return F16{static_cast<std::uint16_t>(sign | out)};
}

constexpr bool f16_is_nan(F16 x) {
  return (x.bits & 0x7c00u) == 0x7c00u && (x.bits & 0x3ffu) != 0;
}

// All 2^16 widened values, built once. The hot loops (kernels and the naive
// path) widen through this table instead of re-deriving the bit pattern.
inline std::span<const float, 65536> f16_widen_table() {
  static const auto table = [] {
    auto t = std::make_unique<std::array<float, 65536>>();
    for (std::uint32_t p = 0; p < 65536; ++p)
      (*t)[p] = f16_to_f32(F16{static_cast<std::uint16_t>(p)});
    return t;
  }();
  return *table;
}

}  // namespace packmm
