#pragma once

namespace curvham {

/// Unit system for all assembled operators and analytic references.
/// Defaults are natural units hbar = m = e = 1; dimensional variants are
/// possible by overriding the three entries together.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;

  bool operator==(const PhysicalConstants&) const = default;
};

}  // namespace curvham
