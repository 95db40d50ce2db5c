#pragma once

#include <string>

#include "stm/group.hpp"

namespace stm {

/// A parsed group/representation spec document.
struct SpecDocument {
  std::string name;
  GroupSpec group;
  RepPtr rep;
};

/// Parses a spec document from JSON text. The grammar (documented in the
/// README):
///   { "name": "...", "group": <group>, "rep": <rep> }
/// group:
///   {"torus": {"rank": r}} | {"unitary": {"n": n}} |
///   {"special_unitary": {"n": n}} |
///   {"finite_classes": {"modulus": M, "order": o,
///                       "classes": [{"size": s, "exponents": [..]}]}} |
///   {"product": {"factors": [<group>...]}}
/// rep:
///   "std" | "finite_given" | {"std": {}} | {"finite_given": {}} |
///   {"torus_weights": {"weights": [[..]..]}} | {"dual": {"of": <rep>}} |
///   {"direct_sum": {"summands": [<rep>...]}} |
///   {"tensor": {"factors": [<rep>...]}} |
///   {"exterior": {"k": k, "of": <rep>}} |
///   {"symmetric": {"k": k, "of": <rep>}} |
///   {"external_tensor": {"legs": [<rep>...]}}
/// Structural validation runs on the result. Throws ErrorKind::InvalidSpec
/// with a field path on malformed input.
SpecDocument parse_spec(const std::string& text);

/// Canonical serialization; parse(serialize(parse(x))) == parse(x).
std::string serialize_spec(const SpecDocument& doc);

std::string serialize_group(const GroupSpec& g);
std::string serialize_rep(const RepSpec& v);

}  // namespace stm
