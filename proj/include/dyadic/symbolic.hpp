#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dyadic/dynamics.hpp"

namespace dyadic {

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How the image of a family member under phi is obtained. Disks on which the
// map has a single scaling exponent get their image from that exponent; the
// regions touching 0 or infinity have analytically known images (1/x or ax
// dominates throughout).
enum class ImageRuleKind {
  ScalingDisk,    // image = D(phi(center), radius * 2^gamma)
  InversionDisk,  // disk around 0: image = outer region
  OuterRegion,    // outer region: image = outer region, |phi(x)| = |a||x|
  SphereMap,      // sphere S(0,2^i): image = S(0,|a| 2^i) or S(0,2^-i)
};

struct FamilyMember {
  PRegion region;
  ImageRuleKind rule;
  std::optional<long long> gamma;  // scaling exponent, when the rule has one
};

// An ordered family of pairwise disjoint regions with symbolic indices 1..m.
struct DiskFamily {
  CaseTag tag;
  std::vector<FamilyMember> members;

  int size() const { return static_cast<int>(members.size()); }
  // 1-based index of the member containing x, if any (members are disjoint).
  std::optional<int> locate(const ProjPoint& x) const;
};

// The per-case family: two disks around the repelling fixed points for the
// expanding square-root case; the four/five regions for the contracting
// square-root cases; the four disks tiling S(0,2) u S(0,2^-3) u S(0,2^3) for
// the unit-3 quarter case. Throws FamilyError for the remaining cases.
DiskFamily julia_disks(const MapParam& m, int precision = kDefaultPrecision);

// Exact image region of a family member.
PRegion member_image(const MapParam& m, const FamilyMember& member);

struct IncidenceMatrix {
  std::vector<std::vector<int>> rows;  // entries 0/1

  int size() const { return static_cast<int>(rows.size()); }
  int at(int i, int j) const { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  friend bool operator==(const IncidenceMatrix& a, const IncidenceMatrix& b) = default;
};

// A[i][j] = 1 iff member j is contained in phi(member i). Containment, not
// mere intersection: under local scaling the two index sets coincide, and the
// tests assert that equality separately.
IncidenceMatrix incidence_from_family(const MapParam& m, const DiskFamily& f);
IncidenceMatrix incidence_matrix(const MapParam& m, int precision = kDefaultPrecision);

// Reference matrix for the four subshift cases; nullopt for the others. A
// computed matrix that disagrees with this constant is a consistency failure
// surfaced by the CLI (exit code 4).
std::optional<IncidenceMatrix> expected_matrix(CaseTag tag);

bool is_irreducible(const IncidenceMatrix& a);
bool admissible(const IncidenceMatrix& a, const std::vector<int>& word);  // 1-based symbols

struct Itinerary {
  std::vector<int> symbols;  // 1-based; one per step while the orbit stays in the family
  int certified_length() const { return static_cast<int>(symbols.size()); }
};

Itinerary itinerary(const MapParam& m, const ProjPoint& x, int n, const DiskFamily& f);
Itinerary itinerary(const MapParam& m, const ProjPoint& x, int n);

struct ConjugacyReport {
  int samples = 0;
  int surviving = 0;            // samples whose full n-step itinerary exists
  int shift_violations = 0;     // h(phi x) != shift(h(x))
  int separation_violations = 0;
  bool separation_checked = false;
  bool ok() const { return shift_violations == 0 && separation_violations == 0; }
};

// Checks h o phi = shift o h on every sample, and (for all-disk families)
// that samples sharing a full n-itinerary are within the cylinder diameter
// bound 2^(r_last - sum of gammas along the word).
ConjugacyReport verify_conjugacy(const MapParam& m, const std::vector<ProjPoint>& samples, int n,
                                 const DiskFamily& f);

struct WeakRepellerReport {
  std::vector<std::optional<long long>> exponents;  // measured per member (scaling disks)
  bool condition_contains = false;  // every image contains at least one member
  bool condition_proper = false;    // some image properly contains a member
  std::vector<int> failed_members;  // 1-based members violating the first condition
  IncidenceMatrix matrix;
  bool transitive = false;
  long long tau = 0;                                    // max -radius_log over disk members
  std::vector<std::optional<long long>> rescale_shift;  // tau - tau_i per disk member
  bool ok() const { return condition_contains && condition_proper; }
};

// Measures every scaling exponent empirically (and cross-checks the stamped
// value), computes all images and the incidence matrix, and evaluates the
// two repeller conditions plus transitivity.
WeakRepellerReport check_weak_repeller(const MapParam& m, const DiskFamily& f,
                                       int sample_pairs = 32, std::uint64_t seed = 1);

// Solves phi(x) = target for the root lying in `disk`. Exact when the
// discriminant is a rational square, truncated otherwise.
Dyadic preimage_in_disk(const MapParam& m, const Dyadic& target, const PRegion& disk,
                        int precision = kDefaultPrecision);

}  // namespace dyadic
