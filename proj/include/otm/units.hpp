#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "otm/field.hpp"

namespace otm {

/// An element of Z[a] with norm +-1.
struct Unit {
  AlgebraicInt element;
  int norm_sign = 1;
};

/// Throws NotAUnit unless |N(a)| = 1.
Unit make_unit(const AlgebraicInt& a, const NumberField& field);

Unit operator*(const Unit& a, const Unit& b);
Unit inverse(const Unit& u);

bool is_unit(const AlgebraicInt& a, const NumberField& field);

/// Default threshold below which a real embedding value is treated as
/// undecided and the precision is doubled.
inline constexpr double kDefaultSignTolerance = 1e-20;
inline constexpr double kDefaultDetTolerance = 1e-8;

/// sigma_i(u) > tau_sign for every real embedding. Undecided values trigger up
/// to three precision doublings before SignUndecidable is thrown.
bool is_totally_positive(const AlgebraicInt& a, const NumberField& field,
                         double tau_sign = kDefaultSignTolerance);
inline bool is_totally_positive(const Unit& u, const NumberField& field,
                                double tau_sign = kDefaultSignTolerance) {
  return is_totally_positive(u.element, field, tau_sign);
}

struct FoundUnit {
  Unit unit;
  Unit positive;  // unit itself when totally positive, otherwise its square
  int power = 1;
};

/// Every unit other than +-1 whose coordinates lie in [-bound, bound]^n, in a
/// deterministic order (max |c|, then sum |c|, then coefficients). Cost is
/// (2 bound + 1)^n norm evaluations; a floating-point prefilter discards
/// elements whose embedding product is far from +-1 before the exact
/// resultant is taken. Throws NoUnitFound when nothing turns up.
std::vector<FoundUnit> search_units(const NumberField& field, int bound);

/// l(u) = (ln|sigma_1 u|, ..., ln|sigma_s u|, 2 ln|sigma_{s+1} u|, ..., 2 ln|sigma_{s+t} u|).
struct LogVector {
  std::vector<double> components;
  double sum = 0;  // should vanish for units
};

LogVector log_embedding(const Unit& u, const NumberField& field);

struct AdmissibleCertificate {
  std::vector<Unit> generators;
  Eigen::MatrixXd log_matrix;        // s x m
  Eigen::MatrixXd projected_matrix;  // s x s, first s columns
  double det = 0;
  std::vector<double> singular_values;  // of log_matrix
  int rank = 0;
  double tau_det = kDefaultDetTolerance;
  bool admissible = false;
};

/// Builds the s x s projected log matrix of the generators and decides
/// admissibility: |det| > tau_det and the full log matrix has rank s.
/// Throws WrongGeneratorCount or NotTotallyPositive (detail carries the index).
AdmissibleCertificate check_admissible(std::span<const Unit> generators, const NumberField& field,
                                       double tau_det = kDefaultDetTolerance);

/// Greedy choice of s generators: totally positive candidates with nonzero
/// log vector are taken in order of increasing log length, and a candidate is
/// kept when it raises the rank of the projected log matrix. Throws
/// NoUnitFound when fewer than s independent candidates exist.
std::vector<Unit> select_generators(std::span<const FoundUnit> found, const NumberField& field,
                                    double tau_det = kDefaultDetTolerance);

}  // namespace otm
