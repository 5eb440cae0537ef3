#ifndef COXIOTA_PRESETS_HPP
#define COXIOTA_PRESETS_HPP

#include <string>

#include "coxiota/twisted.hpp"

namespace coxiota {

struct GroupSpec {
  CoxeterSystem system;
  TwistedAutomorphism theta;
  std::string description;
};

/// Resolves "A<n>", "B<n>", "D<n>", "E6", "F4", "I2(<m>)", "affineA2" or
/// "square(<preset>)", optionally suffixed ":id" / ":flip" / ":swap", or a
/// path to a JSON group file {"size", "m", "theta"} with 0 encoding an
/// infinite bond and theta a 0-based image array.
///
/// theta_spec, when non-empty, overrides the group's automorphism: a named
/// automorphism for presets or a comma-separated 0-based image list.
/// Defaults: affineA2 fixes s1 and swaps s2, s3; square(...) swaps the
/// factors; everything else gets the identity.
GroupSpec resolve_group(const std::string& source,
                        const std::string& theta_spec = "");

/// The named automorphism of a preset family ("id", "flip", "swap").
TwistedAutomorphism named_theta(const CoxeterSystem& sys,
                                const std::string& family, int n,
                                const std::string& name);

GroupSpec load_group_file(const std::string& path);

}  // namespace coxiota

#endif  // COXIOTA_PRESETS_HPP
