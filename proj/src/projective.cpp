#include "dyadic/projective.hpp"

namespace dyadic {

ProjPoint ProjPoint::finite(const Dyadic& z) {
  if (z.is_zero() || z.valuation() >= 0) return ProjPoint(z, Dyadic::from_int(1));
  return ProjPoint(Dyadic::from_int(1), Dyadic::from_int(1) / z);
}

ProjPoint ProjPoint::from_coords(const Dyadic& x1, const Dyadic& x2) {
  if (x2.is_zero()) {
    if (x1.is_zero()) throw DomainError("projective point needs a nonzero coordinate");
    return infinity();
  }
  return finite(x1 / x2);
}

ProjPoint ProjPoint::parse(std::string_view text, int max_precision) {
  if (text == "inf") return infinity();
  return finite(Dyadic::parse(text, max_precision));
}

Dyadic ProjPoint::value() const {
  if (is_infinity()) throw DomainError("value() of the point at infinity");
  if (x2_ == Dyadic::from_int(1)) return x1_;
  return x1_ / x2_;
}

std::string ProjPoint::str() const {
  if (is_infinity()) return "inf";
  return value().str();
}

Abs2 spherical_distance(const ProjPoint& p, const ProjPoint& q) {
  Dyadic det = p.coord1() * q.coord2() - p.coord2() * q.coord1();
  Abs2 num = det.abs2();
  Abs2 dp = std::max(p.coord1().abs2(), p.coord2().abs2());
  Abs2 dq = std::max(q.coord1().abs2(), q.coord2().abs2());
  if (num.is_zero()) return num;
  return Abs2::pow2(num.log2() - dp.log2() - dq.log2());
}

PRegion PRegion::disk(const Dyadic& center, long long radius_log) {
  return PRegion(Kind::Disk, center, radius_log);
}

PRegion PRegion::sphere(const Dyadic& center, long long radius_log) {
  return PRegion(Kind::Sphere, center, radius_log);
}

PRegion PRegion::outer_disk(long long radius_log) {
  return PRegion(Kind::OuterDisk, Dyadic::zero(), radius_log);
}

PRegion PRegion::canonical() const {
  if (kind_ != Kind::Sphere) return *this;
  // S(c, 2^r) = D(c + 2^-r, 2^(r-1))
  return PRegion(Kind::Disk, center_ + dyadic_pow2(-radius_log_), radius_log_ - 1);
}

namespace {

// Decidable comparisons of |x - y| against a power of two. When the digits
// cannot settle the answer the comparison throws rather than guessing.
bool diff_leq(const Dyadic& x, const Dyadic& y, Abs2 threshold) {
  Abs2Bound b = abs2_of_difference(x, y);
  if (b.value <= threshold) return true;
  if (b.exact) return false;
  throw PrecisionError("region test undecidable at this precision");
}

bool diff_eq(const Dyadic& x, const Dyadic& y, Abs2 threshold) {
  Abs2Bound b = abs2_of_difference(x, y);
  if (b.exact) return b.value == threshold;
  if (b.value < threshold) return false;  // true difference is below the sphere radius
  throw PrecisionError("region test undecidable at this precision");
}

}  // namespace

bool PRegion::contains(const Dyadic& x) const {
  switch (kind_) {
    case Kind::Disk:
      return diff_leq(x, center_, Abs2::pow2(radius_log_));
    case Kind::Sphere:
      return diff_eq(x, center_, Abs2::pow2(radius_log_));
    case Kind::OuterDisk:
      return x.abs2() > Abs2::pow2(radius_log_);
  }
  return false;
}

bool PRegion::contains(const ProjPoint& x) const {
  if (x.is_infinity()) return kind_ == Kind::OuterDisk;
  return contains(x.value());
}

std::string PRegion::str() const {
  switch (kind_) {
    case Kind::Disk:
      return "D(" + center_.str() + ", 2^" + std::to_string(radius_log_) + ")";
    case Kind::Sphere:
      return "S(" + center_.str() + ", 2^" + std::to_string(radius_log_) + ")";
    case Kind::OuterDisk:
      return "P1 \\ D(0, 2^" + std::to_string(radius_log_) + ")";
  }
  return "?";
}

namespace {

// max |x| over a disk; every point of a disk avoiding 0 has |center|.
Abs2 disk_sup_abs(const PRegion& d) {
  return std::max(d.center().abs2(), Abs2::pow2(d.radius_log()));
}

}  // namespace

bool region_subset(const PRegion& inner_raw, const PRegion& outer_raw) {
  PRegion a = inner_raw.canonical(), b = outer_raw.canonical();
  if (a.kind() == PRegion::Kind::OuterDisk) {
    if (b.kind() != PRegion::Kind::OuterDisk) return false;  // infinity is only in outer regions
    return a.radius_log() >= b.radius_log();
  }
  if (b.kind() == PRegion::Kind::OuterDisk) {
    // every point of the disk must have |x| > 2^R; if 0 is inside there is
    // no hope, otherwise all points share |center|.
    Abs2 c = a.center().abs2();
    return c > Abs2::pow2(a.radius_log()) && c > Abs2::pow2(b.radius_log());
  }
  return a.radius_log() <= b.radius_log() &&
         diff_leq(a.center(), b.center(), Abs2::pow2(b.radius_log()));
}

bool region_equal(const PRegion& a, const PRegion& b) {
  return region_subset(a, b) && region_subset(b, a);
}

bool region_disjoint(const PRegion& a_raw, const PRegion& b_raw) {
  PRegion a = a_raw.canonical(), b = b_raw.canonical();
  if (a.kind() == PRegion::Kind::OuterDisk && b.kind() == PRegion::Kind::OuterDisk) return false;
  if (a.kind() == PRegion::Kind::OuterDisk || b.kind() == PRegion::Kind::OuterDisk) {
    const PRegion& outer = a.kind() == PRegion::Kind::OuterDisk ? a : b;
    const PRegion& disk = a.kind() == PRegion::Kind::OuterDisk ? b : a;
    return disk_sup_abs(disk) <= Abs2::pow2(outer.radius_log());
  }
  return !diff_leq(a.center(), b.center(), Abs2::pow2(std::max(a.radius_log(), b.radius_log())));
}

PRegion image_under_scaling(const PRegion& disk, const Dyadic& image_center, long long exponent) {
  if (disk.kind() != PRegion::Kind::Disk) throw DomainError("image_under_scaling: disk expected");
  return PRegion::disk(image_center, disk.radius_log() + exponent);
}

}  // namespace dyadic
