#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrleq/distribution.hpp"

namespace mrleq {

enum class Order { st, hr, mrl, cx, disp, ew };
enum class Direction { both, first_le_second, second_le_first, neither, inapplicable };

std::string to_string(Order o);
std::string to_string(Direction d);
Order order_from_string(const std::string& name);

// Point where the defining inequality lhs <= rhs fails. `coords` holds r, (u, v)
// or p depending on the order; `coord_names` labels them.
struct OrderWitness {
  std::vector<std::string> coord_names;
  std::vector<double> coords;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct DirectionCheck {
  bool holds = false;
  double max_violation = 0.0;  // max of lhs - rhs (scaled where documented)
  std::optional<OrderWitness> witness;
};

struct OrderGridInfo {
  std::string kind;  // "r", "uv-lattice" or "p"
  int points = 0;
  double low = 0.0;
  double high = 0.0;
};

struct OrderVerdict {
  Order order = Order::st;
  Direction direction = Direction::neither;
  DirectionCheck forward;  // X1 <= X2
  DirectionCheck reverse;  // X2 <= X1
  double tolerance = 0.0;
  OrderGridInfo grid;
  std::string method;
  std::string note;
  // hr only: density missing for an input, verdict comes from the survival-ratio test.
  bool unsupported_input = false;
  std::optional<DirectionCheck> ratio_forward;
  std::optional<DirectionCheck> ratio_reverse;

  bool applicable() const { return direction != Direction::inapplicable; }
  // X1 <= X2 certified on the grid.
  bool holds() const { return applicable() && forward.holds; }
};

// Grid on r shared by st / hr / mrl / cx: log-spaced between the smaller
// p_low-quantile and the larger p_high-quantile of the two inputs.
struct OrderGrid {
  int points = 2000;
  double p_low = 1e-6;
  double p_high = 1.0 - 1e-6;
};

// Probability probes for disp (u <= v lattice) and ew.
struct ProbeSpec {
  int points = 0;
  double low = 0.001;
  double high = 0.999;
};

inline constexpr double kStTolerance = 1e-9;
inline constexpr double kHrTolerance = 1e-9;
inline constexpr double kMrlTolerance = 1e-7;
inline constexpr double kCxTolerance = 1e-7;
inline constexpr double kDispTolerance = 1e-8;
inline constexpr double kEwTolerance = 1e-7;

std::vector<double> common_grid(const Distribution& x1, const Distribution& x2,
                                const OrderGrid& spec, bool include_zero);

// survival_1(r) <= survival_2(r)
OrderVerdict check_st(const Distribution& x1, const Distribution& x2, const OrderGrid& grid = {});
// h_1(r) >= h_2(r) on the common support, i.e. survival_2 / survival_1 nondecreasing.
OrderVerdict check_hr(const Distribution& x1, const Distribution& x2, const OrderGrid& grid = {});
// m_1(r) <= m_2(r)
OrderVerdict check_mrl(const Distribution& x1, const Distribution& x2, const OrderGrid& grid = {});
// Equal means and tail_1(r) <= tail_2(r) for r >= 0; inapplicable when means differ.
OrderVerdict check_cx(const Distribution& x1, const Distribution& x2, const OrderGrid& grid = {});
// Q_1(v) - Q_1(u) <= Q_2(v) - Q_2(u) for u <= v on a probe lattice (default 200 points).
OrderVerdict check_disp(const Distribution& x1, const Distribution& x2, ProbeSpec probes = {});
// tail_1(Q_1(p)) <= tail_2(Q_2(p)) on a p grid (default 500 points).
OrderVerdict check_ew(const Distribution& x1, const Distribution& x2, ProbeSpec probes = {});

OrderVerdict check_order(Order order, const Distribution& x1, const Distribution& x2);

}  // namespace mrleq
