#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fci/abelian.hpp"
#include "fci/extension.hpp"
#include "fci/verify.hpp"

namespace fci {

enum class SpecKind { FiniteAbelian, Dedekind, CyclicExtension, Periodic, NonPeriodic, FgByTwo };

std::string to_string(SpecKind k);
SpecKind parse_kind(const std::string& s);

/// An element as written in a spec file: text such as "g^2*[1,0]" together
/// with the level whose materialized group the coordinates refer to.
struct ElementRef {
  int level = 1;
  std::string text;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

struct LadderDesc {
  int first = 2;
  int last = 6;
  int window = 3;
  std::vector<ElementRef> probes;

  friend bool operator==(const LadderDesc&, const LadderDesc&) = default;
};

/// One group per file. Which fields are meaningful depends on `kind`:
///   finite_abelian    components
///   dedekind          hamiltonian, free_rank, components
///   cyclic_extension  hamiltonian, components, top_order, d0, action
///   thm32             components (A), q, t, d0
///   thm36             hamiltonian, components (D), action
///   thm43             free_rank, components, d0
struct GroupSpecFile {
  SpecKind kind = SpecKind::FiniteAbelian;
  std::string name;
  bool hamiltonian = false;
  int free_rank = 0;
  std::vector<QuasiComponent> components;
  std::vector<QuasiComponent> q;
  std::int64_t t = -1;
  std::optional<std::int64_t> top_order;
  ElementRef d0{1, ""};
  ActionSpec action;
  std::optional<LadderDesc> ladder;
  std::optional<std::int64_t> cap;

  friend bool operator==(const GroupSpecFile&, const GroupSpecFile&) = default;
};

/// Throws ParseError (with line and column) or SpecInvalid (with the field path).
GroupSpecFile parse_spec(const std::string& text);
/// Canonical form; parse_spec(serialize_spec(s)) == s and the text is a fixed point.
std::string serialize_spec(const GroupSpecFile& s);

/// "Z/8", "Z/3", "Z(2^inf)".
QuasiComponent parse_component(const std::string& s);
std::string component_text(const QuasiComponent& c);

/// Element grammar: "g^K", "g^K*[c,...]" or "[c,...]". Inside the brackets
/// come the quaternion unit (Hamiltonian bases), the free coordinates, then
/// the torsion coordinates in the order of the materialized components.
std::pair<std::int64_t, DElement> parse_element(const std::string& text, const DedekindGroup& base);

/// The level at which a spec is probed when no level is requested.
int default_level(const GroupSpecFile& s);

/// Builders shared by the CLI and the tests.
QuasiSpec base_spec(const GroupSpecFile& s);
DedekindGroup build_dedekind(const GroupSpecFile& s, int level);
ExtensionSpec build_extension_spec(const GroupSpecFile& s);
PeriodicInput build_periodic(const GroupSpecFile& s);
NonPeriodicInput build_nonperiodic(const GroupSpecFile& s);
CyclicExtension build_fg_extension(const GroupSpecFile& s);
LevelElement level_element(const ExtensionSpec& spec, const ElementRef& e, std::int64_t* k = nullptr);
LadderOptions ladder_options(const GroupSpecFile& s, const ExtensionSpec& spec);

}  // namespace fci
