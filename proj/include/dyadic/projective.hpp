#pragma once

#include <string>
#include <string_view>

#include "dyadic/dyadic.hpp"

namespace dyadic {

// A point of P^1(Q_2) in canonical homogeneous coordinates:
//   [z : 1]  for |z| <= 1,   [1 : w] with |w| < 1  for the rest (w = 0 at
// infinity). Normalization divides by the coordinate of largest absolute
// value, so [x1 : x2] and [l*x1 : l*x2] construct the same point.
class ProjPoint {
 public:
  static ProjPoint infinity() { return ProjPoint(Dyadic::from_int(1), Dyadic::zero()); }
  static ProjPoint finite(const Dyadic& z);
  static ProjPoint from_coords(const Dyadic& x1, const Dyadic& x2);
  // "inf" or a dyadic literal.
  static ProjPoint parse(std::string_view text, int max_precision = kDefaultPrecision);

  const Dyadic& coord1() const { return x1_; }
  const Dyadic& coord2() const { return x2_; }
  bool is_infinity() const { return x2_.is_zero(); }
  // The affine value; requires a finite point.
  Dyadic value() const;

  friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
    return p.x1_ == q.x1_ && p.x2_ == q.x2_;
  }
  friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }

  std::string str() const;

 private:
  ProjPoint(Dyadic a, Dyadic b) : x1_(std::move(a)), x2_(std::move(b)) {}
  Dyadic x1_, x2_;
};

// Spherical metric rho(P,Q) = |x1 y2 - x2 y1| / (max(|x1|,|x2|) max(|y1|,|y2|)).
// Always an exact power of two (or zero), bounded by 1.
Abs2 spherical_distance(const ProjPoint& p, const ProjPoint& q);

// A region of P^1(Q_2) with power-of-two radius 2^radius_log:
//   Disk      D(c, 2^r)    = { |x - c| <= 2^r }
//   Sphere    S(c, 2^r)    = { |x - c|  = 2^r }
//   OuterDisk Outer(2^r)   = { |x| > 2^r } together with infinity
// In Q_2 a sphere S(c, 2^r) is itself the disk D(c + 2^-r, 2^(r-1)), so all
// predicates reduce to disk/outer algebra; the declared kind is kept for
// presentation.
class PRegion {
 public:
  enum class Kind { Disk, Sphere, OuterDisk };

  static PRegion disk(const Dyadic& center, long long radius_log);
  static PRegion sphere(const Dyadic& center, long long radius_log);
  static PRegion outer_disk(long long radius_log);

  Kind kind() const { return kind_; }
  const Dyadic& center() const { return center_; }
  long long radius_log() const { return radius_log_; }

  bool contains(const ProjPoint& x) const;
  bool contains(const Dyadic& x) const;

  std::string str() const;

  // Equivalent representation with the sphere collapsed to its disk form;
  // OuterDisk is returned unchanged.
  PRegion canonical() const;

 private:
  PRegion(Kind k, Dyadic c, long long r) : kind_(k), center_(std::move(c)), radius_log_(r) {}
  Kind kind_;
  Dyadic center_;
  long long radius_log_;
};

bool region_subset(const PRegion& inner, const PRegion& outer);
bool region_equal(const PRegion& a, const PRegion& b);
bool region_disjoint(const PRegion& a, const PRegion& b);

// Image of a disk under a map that is a scaling bijection on it with
// |f(x)-f(y)| = 2^exponent |x-y|.
PRegion image_under_scaling(const PRegion& disk, const Dyadic& image_center, long long exponent);

}  // namespace dyadic
