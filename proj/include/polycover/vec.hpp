#pragma once

#include <array>
#include <compare>
#include <ostream>

#include "polycover/numeric.hpp"

namespace polycover {

template <typename T>
struct Vec3 {
  T x{}, y{}, z{};

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  Vec3 operator-() const { return {-x, -y, -z}; }
  friend Vec3 operator*(const T& k, const Vec3& v) {
    return {k * v.x, k * v.y, k * v.z};
  }
  Vec3& operator+=(const Vec3& o) { return *this = *this + o; }
  Vec3& operator-=(const Vec3& o) { return *this = *this - o; }

  friend bool operator==(const Vec3& a, const Vec3& b) = default;

  // Lexicographic order; used for all canonical sorts.
  friend bool operator<(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }

  bool is_zero() const { return x == 0 && y == 0 && z == 0; }

  friend std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
  }
};

using LatticePoint = Vec3<Int>;
using RationalPoint = Vec3<Rat>;

template <typename T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline RationalPoint to_rational(const LatticePoint& p) {
  return {Rat(p.x), Rat(p.y), Rat(p.z)};
}

inline bool is_lattice(const RationalPoint& p) {
  return is_integer(p.x) && is_integer(p.y) && is_integer(p.z);
}

// Exact conversion; requires integral coordinates.
inline LatticePoint to_lattice(const RationalPoint& p) {
  require(is_lattice(p), "NotLattice", "point has non-integer coordinates");
  return {rat_num(p.x), rat_num(p.y), rat_num(p.z)};
}

inline Rat dot(const LatticePoint& a, const RationalPoint& b) {
  return Rat(a.x) * b.x + Rat(a.y) * b.y + Rat(a.z) * b.z;
}

template <typename T>
struct Vec2 {
  T x{}, y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  friend Vec2 operator*(const T& k, const Vec2& v) { return {k * v.x, k * v.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) = default;
  friend bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.x << ", " << v.y << ")";
  }
};

using GridPoint = Vec2<Int>;
using RatGridPoint = Vec2<Rat>;

template <typename T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

inline RatGridPoint to_rational(const GridPoint& p) { return {Rat(p.x), Rat(p.y)}; }

// 3x3 integer matrix, column-major: columns are vectors.
struct IntMatrix3 {
  std::array<LatticePoint, 3> col;

  static IntMatrix3 identity() {
    return {{{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}}}};
  }

  friend bool operator==(const IntMatrix3&, const IntMatrix3&) = default;

  Int& at(int row, int c) {
    LatticePoint& v = col[static_cast<size_t>(c)];
    return row == 0 ? v.x : (row == 1 ? v.y : v.z);
  }
  const Int& at(int row, int c) const {
    const LatticePoint& v = col[static_cast<size_t>(c)];
    return row == 0 ? v.x : (row == 1 ? v.y : v.z);
  }

  LatticePoint apply(const LatticePoint& v) const {
    return v.x * col[0] + v.y * col[1] + v.z * col[2];
  }

  friend IntMatrix3 operator*(const IntMatrix3& a, const IntMatrix3& b) {
    return {{a.apply(b.col[0]), a.apply(b.col[1]), a.apply(b.col[2])}};
  }
};

// Exact determinant of the matrix whose columns are a, b, c.
template <typename T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

inline Int det3(const IntMatrix3& m) { return det3(m.col[0], m.col[1], m.col[2]); }

// Linear form a(x) = a . x on lattice or rational points.
struct LinearForm {
  LatticePoint a;

  Int operator()(const LatticePoint& x) const { return dot(a, x); }
  Rat operator()(const RationalPoint& x) const { return dot(a, x); }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend std::ostream& operator<<(std::ostream& os, const LinearForm& f) {
    return os << f.a;
  }
};

}  // namespace polycover
