#include "nstars/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nstars/errors.hpp"
#include "nstars/gammakit.hpp"

namespace nstars::analytic {
namespace {

using gammakit::log_gamma_ratio;

void require_nonnegative(int value, const char* what) {
  if (value < 0) {
    throw InvalidParams(std::string(what) + " must be non-negative");
  }
}

// Shape constants shared by the marginal and moment formulas.
struct Shape {
  double c;  // b2 / a2
  double s;  // (b1 + 1) / a1
  double u;  // (b1 + 1 - a2) / a1
  double v;  // (b1 + 1 - 2 a2) / a1
};

Shape shape_of(const DerivedParams& d) {
  return {d.b2 / d.a2, (d.b1 + 1.0) / d.a1, (d.b1 + 1.0 - d.a2) / d.a1,
          (d.b1 + 1.0 - 2.0 * d.a2) / d.a1};
}

bool first_moment_finite(const DerivedParams& d) { return d.b1 + 1.0 > d.a2; }
bool second_moment_finite(const DerivedParams& d) {
  return d.b1 + 1.0 > 2.0 * d.a2;
}

double marginal_one(const DerivedParams& d) {
  const double r = d.r_center;
  return d.b1 / (d.a1 + d.b1 + 1.0) *
         (r / (d.b1 + 1.0) + d.r_peripheral / d.b1);
}

double A_zero(const DerivedParams& d) {
  return d.r_center / (d.b1 + 1.0 - d.a2) * (1.0 + d.b2 / d.a2);
}

double A_one(const DerivedParams& d) {
  const double c = d.b2 / d.a2;
  const double gap = d.a1 + d.b1 + 1.0 - d.a2;
  return d.r_center / (d.b1 + 1.0 - d.a2) * (1.0 + c) * d.b1 / gap +
         d.r_peripheral * c / gap;
}

double B_zero(const DerivedParams& d) {
  const double c = d.b2 / d.a2;
  return d.r_center / (d.b1 + 1.0 - 2.0 * d.a2) * (1.0 + c) * (2.0 + c);
}

double B_one(const DerivedParams& d) {
  const double c = d.b2 / d.a2;
  const double gap = d.a1 + d.b1 + 1.0 - 2.0 * d.a2;
  return d.b1 / gap * d.r_center / (d.b1 + 1.0 - 2.0 * d.a2) * (1.0 + c) *
             (2.0 + c) +
         c * (1.0 + c) * d.r_peripheral / gap;
}

void require_first_moment(const DerivedParams& d) {
  if (!first_moment_finite(d)) {
    throw DivergentMoment(
        "conditional expectation needs b1 + 1 > a2 for the shifted ledger A_0");
  }
}

}  // namespace

JointTable::JointTable(int w1_max, int w2_max)
    : w1_max_(w1_max), w2_max_(w2_max) {
  if (w1_max < 0 || w2_max < 0) {
    throw InvalidParams("table bounds must be non-negative");
  }
  values_.assign(static_cast<std::size_t>(w1_max + 1) *
                     static_cast<std::size_t>(w2_max + 1),
                 0.0);
}

std::span<const double> JointTable::row(int w1) const {
  return std::span<const double>(values_).subspan(index(w1, 0),
                                                  static_cast<std::size_t>(w2_max_ + 1));
}

void require_analytic(const DerivedParams& d) {
  const bool ok = d.a11 > 0.0 && d.a12 > 0.0 && d.b1 > 0.0 && d.b2 > 0.0 &&
                  d.r_center > 0.0 && d.r_center < 1.0 &&
                  d.r_peripheral > 0.0 && d.r_peripheral < 1.0;
  if (!ok) {
    throw InvalidParams(
        "limit formulas require p, q and r in the open interval (0, 1)");
  }
}

JointTable joint_table(const DerivedParams& d, int w1_max, int w2_max) {
  require_analytic(d);
  if (w1_max < 1 || w2_max < 1) {
    throw InvalidParams("joint table needs w1_max >= 1 and w2_max >= 1");
  }
  JointTable table(w1_max, w2_max);
  table.at(1, 0) = d.r_peripheral / (d.a1 + d.b + 1.0);
  table.at(0, 1) = d.r_center / (d.a2 + d.b + 1.0);

  for (int diag = 2; diag <= w1_max + w2_max; ++diag) {
    const int lo = std::max(0, diag - w2_max);
    const int hi = std::min(diag, w1_max);
    for (int w1 = lo; w1 <= hi; ++w1) {
      const int w2 = diag - w1;
      double numer = 0.0;
      if (w1 > 0) numer += (d.a1 * (w1 - 1) + d.b1) * table.at(w1 - 1, w2);
      if (w2 > 0) numer += (d.a2 * (w2 - 1) + d.b2) * table.at(w1, w2 - 1);
      table.at(w1, w2) = numer / (d.a1 * w1 + d.a2 * w2 + d.b + 1.0);
    }
  }
  return table;
}

double x_0l_closed(const DerivedParams& d, int l) {
  require_analytic(d);
  if (l < 1) throw InvalidParams("x_{0,l} closed form needs l >= 1");
  const double c = d.b2 / d.a2;
  const double log_value = std::log(d.r_center / d.a2) +
                           log_gamma_ratio(1.0, (d.b + 1.0) / d.a2, c) +
                           log_gamma_ratio(l, c, (d.a2 + d.b + 1.0) / d.a2);
  return std::exp(log_value);
}

double x_k0_closed(const DerivedParams& d, int k) {
  require_analytic(d);
  if (k < 1) throw InvalidParams("x_{k,0} closed form needs k >= 1");
  const double e = d.b1 / d.a1;
  const double log_value = std::log(d.r_peripheral / d.a1) +
                           log_gamma_ratio(1.0, (d.b + 1.0) / d.a1, e) +
                           log_gamma_ratio(k, e, (d.a1 + d.b + 1.0) / d.a1);
  return std::exp(log_value);
}

double b_coefficient_previous(const DerivedParams& d, int w1, int l, int i) {
  require_analytic(d);
  if (w1 < 1 || l < 1 || i < 1 || i > l) {
    throw InvalidParams("b-coefficient needs w1 >= 1 and 1 <= i <= l");
  }
  const double c = d.b2 / d.a2;
  const double shift = (w1 * d.a1 + d.b + 1.0) / d.a2;
  const double lead = ((w1 - 1) * d.a1 + d.b1) / d.a2;
  return lead * std::exp(log_gamma_ratio(l, c, 1.0 + shift) +
                         log_gamma_ratio(i, shift, c));
}

double b_coefficient_zero(const DerivedParams& d, int w1, int l) {
  require_analytic(d);
  if (w1 < 1 || l < 1) {
    throw InvalidParams("b-coefficient needs w1 >= 1 and l >= 1");
  }
  const double c = d.b2 / d.a2;
  const double shift = (w1 * d.a1 + d.b + 1.0) / d.a2;
  return std::exp(log_gamma_ratio(0.0, 1.0 + shift, c) +
                  log_gamma_ratio(l, c, 1.0 + shift));
}

double row_via_b_coefficients(const DerivedParams& d, int w1, int l,
                              std::span<const double> previous_row,
                              double x_w1_0) {
  if (w1 < 1 || l < 1) {
    throw InvalidParams("row_via_b_coefficients needs w1 >= 1 and l >= 1");
  }
  if (previous_row.size() < static_cast<std::size_t>(l) + 1) {
    throw InvalidParams("previous row must hold entries 1..l");
  }
  gammakit::CompensatedSum acc;
  for (int i = 1; i <= l; ++i) {
    acc.add(b_coefficient_previous(d, w1, l, i) *
            previous_row[static_cast<std::size_t>(i)]);
  }
  acc.add(b_coefficient_zero(d, w1, l) * x_w1_0);
  return acc.value();
}

double marginal_closed(const DerivedParams& d, int w1) {
  require_analytic(d);
  require_nonnegative(w1, "w1");
  if (w1 == 0) return d.r_center / (d.b1 + 1.0);
  if (w1 == 1) return marginal_one(d);
  const double e = d.b1 / d.a1;
  const double top = 1.0 + (d.b1 + 1.0) / d.a1;
  const double log_ratio =
      log_gamma_ratio(w1, e, top) - log_gamma_ratio(0.0, e, top);
  return std::exp(log_ratio) * (d.r_peripheral + d.b1) / (d.b1 * (d.b1 + 1.0));
}

AuxMoments aux_moments(const DerivedParams& d, int w1) {
  require_analytic(d);
  require_nonnegative(w1, "w1");
  require_first_moment(d);
  const Shape sh = shape_of(d);
  const double e = d.b1 / d.a1;

  AuxMoments aux;
  aux.A_1 = A_one(d);
  if (w1 == 0) {
    aux.A_w1 = A_zero(d);
  } else if (w1 == 1) {
    aux.A_w1 = aux.A_1;
  } else {
    aux.A_w1 = std::exp(log_gamma_ratio(w1, e, 1.0 + sh.u) -
                        log_gamma_ratio(1.0, e, 1.0 + sh.u)) *
               aux.A_1;
  }
  if (second_moment_finite(d)) {
    aux.B_1 = B_one(d);
    if (w1 == 0) {
      aux.B_w1 = B_zero(d);
    } else if (w1 == 1) {
      aux.B_w1 = aux.B_1;
    } else {
      aux.B_w1 = std::exp(log_gamma_ratio(w1, e, 1.0 + sh.v) -
                          log_gamma_ratio(1.0, e, 1.0 + sh.v)) *
                 *aux.B_1;
    }
  }
  return aux;
}

double expectation_closed(const DerivedParams& d, int w1) {
  require_analytic(d);
  require_nonnegative(w1, "w1");
  require_first_moment(d);
  const Shape sh = shape_of(d);
  if (w1 == 0) return A_zero(d) / marginal_closed(d, 0) - sh.c;
  const double a1_over_x1 = A_one(d) / marginal_one(d);
  if (w1 == 1) return a1_over_x1 - sh.c;
  const double log_growth = log_gamma_ratio(0.0, 2.0 + sh.u, 2.0 + sh.s) +
                            log_gamma_ratio(w1, 1.0 + sh.s, 1.0 + sh.u);
  return std::exp(log_growth) * a1_over_x1 - sh.c;
}

std::optional<double> second_moment_closed(const DerivedParams& d, int w1) {
  require_analytic(d);
  require_nonnegative(w1, "w1");
  if (!second_moment_finite(d)) return std::nullopt;
  const Shape sh = shape_of(d);
  const double mean = expectation_closed(d, w1);
  const double offset = (1.0 + 2.0 * sh.c) * mean + sh.c * (1.0 + sh.c);
  if (w1 == 0) return B_zero(d) / marginal_closed(d, 0) - offset;
  const double b1_over_x1 = B_one(d) / marginal_one(d);
  if (w1 == 1) return b1_over_x1 - offset;
  const double log_growth = log_gamma_ratio(0.0, 2.0 + sh.v, 2.0 + sh.s) +
                            log_gamma_ratio(w1, 1.0 + sh.s, 1.0 + sh.v);
  return std::exp(log_growth) * b1_over_x1 - offset;
}

MomentRow moment_row(const DerivedParams& d, int w1) {
  MomentRow row;
  row.w1 = w1;
  row.marginal = marginal_closed(d, w1);
  row.mean = expectation_closed(d, w1);
  row.second_moment = second_moment_closed(d, w1);
  return row;
}

TailCoefficients tail_coefficients(const DerivedParams& d, int w1, int w2) {
  require_analytic(d);
  require_nonnegative(w1, "w1");
  require_nonnegative(w2, "w2");
  const double c1 = d.b1 / d.a1;
  const double c2 = d.b2 / d.a2;
  // Gamma(w + c) / (w! Gamma(c)) = exp(lgr(w, c, 1) - lgamma(c)).
  const double log_a =
      std::log(d.r_peripheral / d.a1) + log_gamma_ratio(w2, c2, 1.0) -
      std::lgamma(c2) + log_gamma_ratio(1.0, (d.b + 1.0) / d.a1, c1);
  const double log_c =
      std::log(d.r_center / d.a2) + log_gamma_ratio(w1, c1, 1.0) -
      std::lgamma(c1) + log_gamma_ratio(1.0, (d.b + 1.0) / d.a2, c2);
  return {std::exp(log_a), std::exp(log_c)};
}

std::optional<double> taylor_constant(const DerivedParams& d) {
  require_analytic(d);
  if (!second_moment_finite(d)) return std::nullopt;
  const Shape sh = shape_of(d);
  const double a1 = A_one(d);
  const double log_gamma_part = log_gamma_ratio(0.0, 2.0 + sh.v, 2.0 + sh.u) +
                                log_gamma_ratio(0.0, 2.0 + sh.s, 2.0 + sh.u);
  return B_one(d) * marginal_one(d) / (a1 * a1) * std::exp(log_gamma_part);
}

TruncatedMoments truncated_moments(const JointTable& table,
                                   const DerivedParams& d, int w1) {
  if (w1 < 0 || w1 > table.w1_max()) {
    throw InvalidParams("row index outside the table");
  }
  gammakit::CompensatedSum mass;
  gammakit::CompensatedSum first;
  gammakit::CompensatedSum second;
  const auto row = table.row(w1);
  for (std::size_t l = 0; l < row.size(); ++l) {
    const double x = row[l];
    const double ld = static_cast<double>(l);
    mass.add(x);
    first.add(x * ld);
    second.add(x * ld * ld);
  }
  TruncatedMoments out;
  out.marginal = mass.value();
  out.mean = first.value() / out.marginal;
  out.second_moment = second.value() / out.marginal;

  // sum_{l > L} l^{-k} <= L^{1-k} / (k - 1) for k > 1.
  const double coeff = tail_coefficients(d, w1, 0).C_of_w1;
  const double decay = 1.0 + (d.b1 + 1.0) / d.a2;
  const double L = table.w2_max();
  auto tail = [&](double k) {
    if (k <= 1.0) return std::numeric_limits<double>::infinity();
    return coeff * std::pow(L, 1.0 - k) / (k - 1.0);
  };
  out.tail_mass = tail(decay);
  out.tail_first = tail(decay - 1.0);
  out.tail_second = tail(decay - 2.0);
  return out;
}

}  // namespace nstars::analytic
