#pragma once

#include "conelab/covers.hpp"
#include "conelab/delpezzo.hpp"
#include "conelab/expression.hpp"
#include "conelab/pqsurf.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace conelab {

/// A class given either as a coefficient row or as an expression over the
/// entry's symbols (basis names, curve labels, K).
struct ClassSpec {
  std::variant<Vector, std::string> value;
};

struct ExplicitLatticeSpec {
  std::vector<std::string> basis;
  Matrix gram;
  std::vector<std::string> reduce_to;  ///< empty: keep the basis
};

struct DelPezzoLatticeSpec {
  PointConfiguration config;
};

struct PqLatticeSpec {
  FiberIncidence incidence;
  std::vector<std::string> reduce_to;
};

struct LatticeSpec {
  std::variant<ExplicitLatticeSpec, DelPezzoLatticeSpec, PqLatticeSpec> kind;
  std::optional<ClassSpec> canonical;  ///< absent with solve_canonical false: del Pezzo default
  bool solve_canonical = false;        ///< solve K from curve genera by adjunction
  std::string torsion_note;
};

struct CurveSpec {
  std::string label;
  ClassSpec cls;
  std::optional<Rational> genus;
};

struct CoverSpec {
  int degree = 1;
  int canonical_multiplier = 1;
  ClassSpec canonical_pullback;
  std::map<std::string, int> ramification;
  std::optional<Rational> base_k2;
};

struct NegativeCount {
  long self_int = 0;
  long genus = 0;
  long multiplicity = 0;
  friend bool operator==(const NegativeCount&, const NegativeCount&) = default;
};

struct NumericalEquivalenceWitness {
  ClassSpec lhs, rhs;
  std::vector<ClassSpec> spanning;
};

struct GramDeterminantWitness {
  std::vector<ClassSpec> classes;
  Rational value;
};

struct SemiampleWitness {
  std::string name;
  SemiampleCase::Kind kind = SemiampleCase::Kind::nef;
  std::vector<ClassSpec> subset;
  ClassSpec vector;
  std::optional<ClassSpec> negative_against, positive_against;
  std::vector<ClassSpec> equivalents;
};

/// A printed canonical class; expect_match false marks a known misprint.
struct CanonicalClaimWitness {
  ClassSpec expression;
  bool expect_match = true;
  std::string note;
};

/// A printed count. Subjects: negative_curves, y_minus1_curves, y_minus2_curves.
struct CountClaimWitness {
  std::string subject;
  long claimed = 0;
  bool expect_match = true;
  std::string note;
};

/// Identity of classes on the blow-up of the plane at r points.
struct BlowupIdentityWitness {
  int r = 0;
  std::string lhs, rhs;
  std::vector<std::string> orthogonal_to;
  std::string note;
};

/// A class the realization rules must exclude (del Pezzo entries).
struct ExclusionWitness {
  std::string cls;
};

using Witness = std::variant<NumericalEquivalenceWitness, GramDeterminantWitness, SemiampleWitness,
                             CanonicalClaimWitness, CountClaimWitness, BlowupIdentityWitness, ExclusionWitness>;

struct SurfaceEntry {
  std::string id;
  std::string family;  ///< fake_projective_plane, isogenous_unmixed, inoue, chen, kulikov, burniat, pq
  std::optional<std::string> group;
  long k2 = 0;
  std::string provenance;
  LatticeSpec lattice;
  std::vector<CurveSpec> curves;  ///< del Pezzo entries take the realized curves instead
  std::optional<CoverSpec> cover;
  std::optional<std::vector<ClassSpec>> eff_generators;  ///< absent: all curves
  std::optional<std::vector<ClassSpec>> nef_generators;  ///< absent: computed as the dual
  std::vector<NegativeCount> expected_negatives;
  std::vector<Witness> witnesses;
  std::vector<std::string> imported_claims;
  std::vector<std::string> notes;
};

struct Catalog {
  int version = 1;
  std::vector<SurfaceEntry> entries;
  std::vector<std::string> warnings;  ///< lenient mode: ignored fields
};

enum class LoadMode { strict, lenient };

/// Schema errors carry the JSON path of the offending value.
Catalog parse_catalog(const std::string& text, LoadMode mode = LoadMode::strict);
Catalog load_catalog(const std::filesystem::path& path, LoadMode mode = LoadMode::strict);

/// CONELAB_CATALOG if set, else the bundled file.
std::filesystem::path default_catalog_path();

std::string serialize_catalog(const Catalog& catalog);

/// Reprints arbitrary JSON text in the catalogue layout.
std::string normalize_json(const std::string& text);

/// Everything an entry needs for verification, with classes resolved.
struct MaterializedEntry {
  std::shared_ptr<const SurfaceLattice> lattice;
  SymbolTable symbols;
  std::vector<std::string> curve_labels;
  std::map<std::string, DivisorClass> curve_classes;
  std::map<std::string, Rational> declared_genus;
  std::optional<Realization> realization;
  std::optional<CoverDescriptor> cover;
  std::vector<DivisorClass> eff;
  std::optional<std::vector<DivisorClass>> nef;
};

MaterializedEntry materialize(const SurfaceEntry& entry);

DivisorClass resolve(const ClassSpec& spec, const SymbolTable& symbols, std::size_t rank);

}  // namespace conelab
