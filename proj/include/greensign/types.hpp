#pragma once

#include <array>
#include <functional>
#include <string_view>

namespace greensign {

/// Boundary conditions for u'' + a(t)u = sigma on [0,T].
///   Periodic      u(0)=u(T),   u'(0)=u'(T)
///   Antiperiodic  u(0)=-u(T),  u'(0)=-u'(T)
///   Dirichlet     u(0)=u(T)=0
///   Neumann       u'(0)=u'(T)=0
///   Mixed1        u'(0)=u(T)=0
///   Mixed2        u(0)=u'(T)=0
enum class BoundaryKind { Periodic, Antiperiodic, Dirichlet, Neumann, Mixed1, Mixed2 };

inline constexpr std::array<BoundaryKind, 6> kAllBoundaryKinds = {
    BoundaryKind::Periodic, BoundaryKind::Antiperiodic, BoundaryKind::Dirichlet,
    BoundaryKind::Neumann,  BoundaryKind::Mixed1,       BoundaryKind::Mixed2};

std::string_view to_string(BoundaryKind bc);

/// Accepts the lower-case names used on the command line ("periodic",
/// "antiperiodic", "dirichlet", "neumann", "mixed1", "mixed2").
BoundaryKind parse_boundary_kind(std::string_view name);

/// Kernel ends at which G(t, .) vanishes identically because the boundary
/// condition pins u there.
struct VanishingEnds {
  bool left = false;
  bool right = false;
};

VanishingEnds vanishing_ends(BoundaryKind bc);

/// A scalar function of one variable, used for weights, forcing terms and
/// eigenfunctions.
using ScalarFunction = std::function<double(double)>;

/// The interval [0,T].
class Interval {
 public:
  explicit Interval(double T);
  double T() const noexcept { return T_; }
  bool contains(double t) const noexcept { return t >= 0.0 && t <= T_; }

 private:
  double T_;
};

}  // namespace greensign
