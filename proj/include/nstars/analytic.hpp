#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nstars/params.hpp"

// Limit joint distribution x_{w1,w2} of (central weight, peripheral weight)
// and the quantities derived from it. Every function reads the roles from the
// DerivedParams view it is given, so passing swap_roles(d) yields the
// symmetric quantities x_{.,w2}, E_{w2}, M_{w2}.
//
// Second moments are std::optional: nullopt marks a divergent moment
// (b1 + 1 <= 2 a2) and is a value, not an error.
namespace nstars::analytic {

/// Dense row-major rectangle of x_{w1,w2}, 0 <= w1 <= w1_max, 0 <= w2 <= w2_max.
class JointTable {
 public:
  JointTable(int w1_max, int w2_max);

  int w1_max() const { return w1_max_; }
  int w2_max() const { return w2_max_; }

  double at(int w1, int w2) const { return values_[index(w1, w2)]; }
  double& at(int w1, int w2) { return values_[index(w1, w2)]; }

  /// Entries x_{w1,0..w2_max}.
  std::span<const double> row(int w1) const;

 private:
  std::size_t index(int w1, int w2) const {
    return static_cast<std::size_t>(w1) * static_cast<std::size_t>(w2_max_ + 1) +
           static_cast<std::size_t>(w2);
  }

  int w1_max_;
  int w2_max_;
  std::vector<double> values_;
};

struct MomentRow {
  int w1 = 0;
  double marginal = 0;
  double mean = 0;
  std::optional<double> second_moment;
};

struct TailCoefficients {
  double A_of_w2 = 0;
  double C_of_w1 = 0;
};

/// Shifted moment ledgers: A_w = sum_l x_{w,l} (l + c),
/// B_w = sum_l x_{w,l} (l + c)(l + 1 + c) with c = b2 / a2.
struct AuxMoments {
  double A_w1 = 0;
  std::optional<double> B_w1;
  double A_1 = 0;
  std::optional<double> B_1;
};

/// Truncated sums over one table row with the power-law tail estimate of
/// what lies beyond w2_max.
struct TruncatedMoments {
  double marginal = 0;
  double mean = 0;
  double second_moment = 0;
  double tail_mass = 0;    // estimate of sum_{l > w2_max} x_{w1,l}
  double tail_first = 0;   // ... of sum l x_{w1,l} (inf if not summable)
  double tail_second = 0;  // ... of sum l^2 x_{w1,l} (inf if not summable)
};

/// Throws InvalidParams unless the view comes from p, q, r in (0, 1).
void require_analytic(const DerivedParams& d);

/// Fills x_{w1,w2} by the two-predecessor recurrence, sweeping anti-diagonals
/// w1 + w2 = s in ascending order.
JointTable joint_table(const DerivedParams& d, int w1_max, int w2_max);

double x_0l_closed(const DerivedParams& d, int l);
double x_k0_closed(const DerivedParams& d, int k);

/// x_{w1,l} from the previous row and x_{w1,0}. `previous_row[i]` must hold
/// x_{w1-1,i} for 1 <= i <= l (index 0 is ignored), so a JointTable row can be
/// passed as is.
double row_via_b_coefficients(const DerivedParams& d, int w1, int l,
                              std::span<const double> previous_row,
                              double x_w1_0);

/// Coefficient multiplying x_{w1-1,i} in row_via_b_coefficients.
double b_coefficient_previous(const DerivedParams& d, int w1, int l, int i);
/// Coefficient multiplying x_{w1,0} in row_via_b_coefficients.
double b_coefficient_zero(const DerivedParams& d, int w1, int l);

/// x_{w1,.}; w1 = 0 and w1 = 1 use their dedicated expressions.
double marginal_closed(const DerivedParams& d, int w1);

/// Throws DivergentMoment when b1 + 1 <= a2. B fields are nullopt when
/// b1 + 1 <= 2 a2.
AuxMoments aux_moments(const DerivedParams& d, int w1);

/// E_{w1}. Defined for every w1 >= 0; w1 in {0, 1} go through A_0 and A_1.
/// Throws DivergentMoment when b1 + 1 <= a2.
double expectation_closed(const DerivedParams& d, int w1);

/// M_{w1}, or nullopt when b1 + 1 <= 2 a2.
std::optional<double> second_moment_closed(const DerivedParams& d, int w1);

MomentRow moment_row(const DerivedParams& d, int w1);

TailCoefficients tail_coefficients(const DerivedParams& d, int w1, int w2);

/// Limit of M_{w1} / E_{w1}^2, or nullopt when the second moment diverges.
std::optional<double> taylor_constant(const DerivedParams& d);

TruncatedMoments truncated_moments(const JointTable& table,
                                   const DerivedParams& d, int w1);

}  // namespace nstars::analytic
