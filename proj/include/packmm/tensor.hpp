#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "packmm/f16.hpp"

namespace packmm {

enum class DType : std::uint8_t { F16, F32 };

constexpr std::size_t dtype_size(DType d) { return d == DType::F16 ? 2 : 4; }
std::string to_string(DType d);
std::optional<DType> dtype_from_string(std::string_view s);

// Role of a packed tensor; fixes which logical 2-D index map applies.
//   Lhs  [M1][K1][m0][k0]   from an M x K matrix
//   RhsT [N1][K1][n0][k0]   from a K x N matrix, tiles transposed
//   Acc  [M1][N1][m0][n0]   the f32 accumulator, unpacks to M x N
enum class PackRole : std::uint8_t { Lhs, RhsT, Acc };

std::string to_string(PackRole r);

namespace detail {
template <typename T>
inline constexpr bool dependent_false = false;

template <typename T>
constexpr DType dtype_of() {
  if constexpr (std::is_same_v<T, std::uint16_t>)
    return DType::F16;
  else if constexpr (std::is_same_v<T, float>)
    return DType::F32;
  else
    static_assert(dependent_false<T>, "element type must be uint16_t or float");
}
}  // namespace detail

// Row-major 2-D matrix, the pre-pack / post-unpack form of A, B and C.
// F16 payloads are raw binary16 bit patterns.
class Mat2D {
 public:
  Mat2D(std::int64_t rows, std::int64_t cols, DType dtype);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  DType dtype() const { return dtype_; }
  std::int64_t size() const { return rows_ * cols_; }

  template <typename T>
  std::span<T> data() {
    check_access(detail::dtype_of<T>());
    return {reinterpret_cast<T*>(raw_.data()), static_cast<std::size_t>(size())};
  }
  template <typename T>
  std::span<const T> data() const {
    check_access(detail::dtype_of<T>());
    return {reinterpret_cast<const T*>(raw_.data()), static_cast<std::size_t>(size())};
  }

  // Widened element view, valid for both dtypes.
  float value_f32(std::int64_t r, std::int64_t c) const;

  std::span<const std::byte> bytes() const { return raw_; }
  std::span<std::byte> bytes() { return raw_; }

 private:
  void check_access(DType expected) const;

  std::int64_t rows_;
  std::int64_t cols_;
  DType dtype_;
  std::vector<std::byte> raw_;
};

// 4-D tiled tensor: [outer0][outer1][inner0][inner1], inner1 fastest.
// Slots whose logical source index falls outside (orig_rows, orig_cols)
// hold +0.0 padding.
class Packed4D {
 public:
  Packed4D(std::int64_t outer0, std::int64_t outer1, std::int64_t inner0,
           std::int64_t inner1, PackRole role, DType dtype,
           std::int64_t orig_rows, std::int64_t orig_cols);

  std::int64_t outer0() const { return dims_[0]; }
  std::int64_t outer1() const { return dims_[1]; }
  std::int64_t inner0() const { return dims_[2]; }
  std::int64_t inner1() const { return dims_[3]; }
  PackRole role() const { return role_; }
  DType dtype() const { return dtype_; }
  std::int64_t orig_rows() const { return orig_rows_; }
  std::int64_t orig_cols() const { return orig_cols_; }

  std::int64_t size() const { return dims_[0] * dims_[1] * dims_[2] * dims_[3]; }

  std::int64_t index(std::int64_t i0, std::int64_t i1, std::int64_t j0,
                     std::int64_t j1) const {
    return ((i0 * dims_[1] + i1) * dims_[2] + j0) * dims_[3] + j1;
  }

  template <typename T>
  std::span<T> data() {
    check_access(detail::dtype_of<T>());
    return {reinterpret_cast<T*>(raw_.data()), static_cast<std::size_t>(size())};
  }
  template <typename T>
  std::span<const T> data() const {
    check_access(detail::dtype_of<T>());
    return {reinterpret_cast<const T*>(raw_.data()), static_cast<std::size_t>(size())};
  }

  std::span<const std::byte> bytes() const { return raw_; }
  std::span<std::byte> bytes() { return raw_; }

 private:
  void check_access(DType expected) const;

  std::int64_t dims_[4];
  PackRole role_;
  DType dtype_;
  std::int64_t orig_rows_;
  std::int64_t orig_cols_;
  std::vector<std::byte> raw_;
};

// First difference between two f32 matrices, if any. +0.0 and -0.0 compare
// equal when ignore_zero_sign is set; everything else is bitwise.
struct MatDiff {
  std::int64_t row = -1;
  std::int64_t col = -1;
  float got = 0.0f;
  float want = 0.0f;
};
std::optional<MatDiff> first_diff_f32(const Mat2D& got, const Mat2D& want,
                                      bool ignore_zero_sign = true);

// Binary fixture dump: "PK4D" magic, then outer0, outer1, inner0, inner1,
// orig_rows, orig_cols, dtype, role as little-endian u32, then raw
// little-endian element data. See docs/formats.md.
void save_pk4d(const Packed4D& t, const std::filesystem::path& path);
Packed4D load_pk4d(const std::filesystem::path& path);

}  // namespace packmm
