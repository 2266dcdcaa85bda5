#pragma once

// Discrete calculus on fields indexed by Z^2 and its dual (Z + 1/2)^2.
//
// Every position of the grid (vertex, u-edge, v-edge, face) is addressed by
// doubled integer coordinates: du = 2u for an integer u and du = 2u + 1 for the
// half-integer u + 1/2. The parity of (du, dv) gives the cell kind.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diias/error.hpp"

namespace diias {

enum class Axis { U, V };

enum class CellKind { Vertex, UEdge, VEdge, Face };

constexpr CellKind cell_kind(int du, int dv) {
  const bool odd_u = (du & 1) != 0;
  const bool odd_v = (dv & 1) != 0;
  if (!odd_u && !odd_v) return CellKind::Vertex;
  if (odd_u && !odd_v) return CellKind::UEdge;
  if (!odd_u && odd_v) return CellKind::VEdge;
  return CellKind::Face;
}

struct GridAddress {
  int du = 0;
  int dv = 0;

  /// Vertex (u, v).
  static constexpr GridAddress vertex(int u, int v) { return {2 * u, 2 * v}; }
  /// Edge (u + 1/2, v) joining (u, v) and (u + 1, v).
  static constexpr GridAddress u_edge(int u, int v) { return {2 * u + 1, 2 * v}; }
  /// Edge (u, v + 1/2) joining (u, v) and (u, v + 1).
  static constexpr GridAddress v_edge(int u, int v) { return {2 * u, 2 * v + 1}; }
  /// Face (u + 1/2, v + 1/2) with lower corner (u, v).
  static constexpr GridAddress face(int u, int v) { return {2 * u + 1, 2 * v + 1}; }

  constexpr CellKind kind() const { return cell_kind(du, dv); }

  /// Integer part: u for both u and u + 1/2 (floor of du / 2).
  constexpr int u() const { return du >> 1; }
  constexpr int v() const { return dv >> 1; }

  constexpr double u_value() const { return du * 0.5; }
  constexpr double v_value() const { return dv * 0.5; }

  constexpr GridAddress shifted(Axis axis, int half_steps) const {
    return axis == Axis::U ? GridAddress{du + half_steps, dv} : GridAddress{du, dv + half_steps};
  }

  friend constexpr auto operator<=>(const GridAddress&, const GridAddress&) = default;
};

inline std::string to_string(const GridAddress& a);

/// Rectangle of addresses of one cell kind, inclusive bounds in doubled coordinates.
class GridRange {
 public:
  GridRange(int du_min, int du_max, int dv_min, int dv_max)
      : du_min_(du_min), du_max_(du_max), dv_min_(dv_min), dv_max_(dv_max) {
    if (du_min > du_max || dv_min > dv_max)
      throw DomainError("GridRange: empty range");
    if (((du_max - du_min) & 1) != 0 || ((dv_max - dv_min) & 1) != 0)
      throw DomainError("GridRange: bounds of mixed parity");
  }

  static GridRange vertices(int u_min, int u_max, int v_min, int v_max) {
    return {2 * u_min, 2 * u_max, 2 * v_min, 2 * v_max};
  }
  /// Faces (u + 1/2, v + 1/2) with u in [u_min, u_max], v in [v_min, v_max].
  static GridRange faces(int u_min, int u_max, int v_min, int v_max) {
    return {2 * u_min + 1, 2 * u_max + 1, 2 * v_min + 1, 2 * v_max + 1};
  }

  int du_min() const { return du_min_; }
  int du_max() const { return du_max_; }
  int dv_min() const { return dv_min_; }
  int dv_max() const { return dv_max_; }

  CellKind kind() const { return cell_kind(du_min_, dv_min_); }
  GridAddress min_corner() const { return {du_min_, dv_min_}; }
  GridAddress max_corner() const { return {du_max_, dv_max_}; }

  int count(Axis axis) const {
    return axis == Axis::U ? (du_max_ - du_min_) / 2 + 1 : (dv_max_ - dv_min_) / 2 + 1;
  }
  int count_u() const { return count(Axis::U); }
  int count_v() const { return count(Axis::V); }
  std::size_t size() const { return static_cast<std::size_t>(count_u()) * count_v(); }

  bool contains(const GridAddress& a) const {
    return a.du >= du_min_ && a.du <= du_max_ && a.dv >= dv_min_ && a.dv <= dv_max_ &&
           ((a.du - du_min_) & 1) == 0 && ((a.dv - dv_min_) & 1) == 0;
  }

  /// Row-major position: u is the slow index, v the fast one.
  std::size_t index(const GridAddress& a) const {
    return static_cast<std::size_t>((a.du - du_min_) / 2) * count_v() + (a.dv - dv_min_) / 2;
  }

  GridAddress address(std::size_t i) const {
    const int nv = count_v();
    return {du_min_ + 2 * static_cast<int>(i / nv), dv_min_ + 2 * static_cast<int>(i % nv)};
  }

  std::vector<GridAddress> addresses() const {
    std::vector<GridAddress> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(address(i));
    return out;
  }

  /// Domain of a first difference along axis: half a step inwards on both ends.
  GridRange shrunk(Axis axis) const {
    if (count(axis) < 2)
      throw DomainError("discrete derivative needs at least 2 samples along the axis");
    return axis == Axis::U ? GridRange{du_min_ + 1, du_max_ - 1, dv_min_, dv_max_}
                           : GridRange{du_min_, du_max_, dv_min_ + 1, dv_max_ - 1};
  }

  friend bool operator==(const GridRange&, const GridRange&) = default;

 private:
  int du_min_;
  int du_max_;
  int dv_min_;
  int dv_max_;
};

/// Immutable map from every address of a GridRange to a value.
template <class V>
class Field {
 public:
  Field(GridRange domain, std::vector<V> values) : domain_(domain), values_(std::move(values)) {
    if (values_.size() != domain_.size())
      throw DomainError("Field: value count does not match domain size");
  }

  template <class Fn>
  static Field generate(const GridRange& domain, Fn&& fn) {
    std::vector<V> values;
    values.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) values.push_back(fn(domain.address(i)));
    return Field(domain, std::move(values));
  }

  const GridRange& domain() const { return domain_; }
  std::span<const V> values() const& { return values_; }
  /// By value on a temporary, so `for (x : partial(f, axis).values())` is safe.
  std::vector<V> values() && { return std::move(values_); }
  bool contains(const GridAddress& a) const { return domain_.contains(a); }

  const V& at(const GridAddress& a) const {
    if (!domain_.contains(a)) throw DomainError("Field: address " + to_string(a) + " outside domain");
    return values_[domain_.index(a)];
  }
  const V& operator()(const GridAddress& a) const { return at(a); }

  /// Pointer to the value, or nullptr outside the domain.
  const V* find(const GridAddress& a) const {
    return domain_.contains(a) ? &values_[domain_.index(a)] : nullptr;
  }

 private:
  GridRange domain_;
  std::vector<V> values_;
};

/// First difference: result(a + 1/2 e) = f(a + e) - f(a).
template <class V>
Field<V> partial(const Field<V>& f, Axis axis) {
  const GridRange out = f.domain().shrunk(axis);
  return Field<V>::generate(out, [&](const GridAddress& a) {
    return f.at(a.shifted(axis, 1)) - f.at(a.shifted(axis, -1));
  });
}

/// f_12 = (f_1)_2, living on the faces of a vertex field.
template <class V>
Field<V> mixed12(const Field<V>& f) {
  return partial(partial(f, Axis::U), Axis::V);
}

template <class V>
Field<V> mixed21(const Field<V>& f) {
  return partial(partial(f, Axis::V), Axis::U);
}

inline std::string to_string(const GridAddress& a) {
  auto half = [](int d) {
    const int whole = d >> 1;
    if ((d & 1) == 0) return std::to_string(whole);
    // whole + 1/2, e.g. d = -1 -> "-1/2", d = 3 -> "3/2"
    return std::to_string(d) + "/2";
  };
  return "(" + half(a.du) + ", " + half(a.dv) + ")";
}

}  // namespace diias
