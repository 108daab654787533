#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mnorm/groups.hpp"
#include "mnorm/multinorm.hpp"

namespace mnorm {

struct BoundCheck {
  double C = 1.0;
  Index n = 0;
  double exponent = 0.0;  ///< 1 - 1/q
  double bound = 0.0;     ///< C n^exponent
  bool holds = false;
};

struct FolnerReport {
  ElementSet F;
  ElementSet S;
  std::size_t fs_size = 0;
  double ratio = 0.0;  ///< |FS| / |S|
  std::string family;
  std::optional<BoundCheck> bound_checked;
};

/// Exact |FS| / |S|. Throws on empty S.
FolnerReport folner_ratio(const GroupModel& G, const ElementSet& F, const ElementSet& S);

/// Attaches the check ratio <= C n^(1 - 1/q) with n = |F|.
void check_bound(FolnerReport& report, double C, const Exponent& q);

enum class FolnerFamily { balls, rectangles, connected_subsets };
FolnerFamily parse_family(const std::string& text);
std::string to_string(FolnerFamily f);

struct FolnerSearchOptions {
  int max_radius = 8;          ///< balls
  int max_side = 64;           ///< rectangles (lattices only)
  std::size_t max_size = 10;   ///< connected subsets containing e
  std::size_t guard = 5000000; ///< sets examined
};

/// Smallest ratio over the family; ties go to the smaller set in (size,
/// canonical order). Connected subsets are taken in the left Cayley graph
/// (s ~ g s), whose connectivity and ratios are invariant under right
/// translation, so only sets containing e are enumerated.
FolnerReport folner_search(const GroupModel& G, const ElementSet& F, FolnerFamily family,
                           const FolnerSearchOptions& options = {});

/// First n elements of the growing balls, ordered by word length then canonically.
ElementSet ball_prefix(const GroupModel& G, std::size_t n);

// ---------------------------------------------------------------------------

/// Throws unless a >= 0 with unit mass (1e-12).
void validate_mean(const FiniteSupportVector& a);
FiniteSupportVector uniform_mean(const ElementSet& S);

/// Weak (p,q) norm of (s_1 . a, ..., s_n . a) on the union of the translate
/// supports, a unit-weight l^1 space.
NormResult invariance_constant(const GroupModel& G, const FiniteSupportVector& a, const std::vector<Element>& F,
                               const Exponent& p, const Exponent& q, const WeakOptions& options = {});

/// The translates (s_1 . a, ..., s_n . a) as columns over their support union.
MultiVector translate_tuple(const GroupModel& G, const FiniteSupportVector& a, const std::vector<Element>& F);

/// sum_k beta_k chi_{S_k}.
FiniteSupportVector layered_function(const std::vector<double>& beta, const std::vector<ElementSet>& S);

/// sum_k |beta_k| |F S_k| for nested S_1 in ... in S_N; the (1,1) norm of
/// the translates of the layered function when beta >= 0.
double layered_closed_form(const GroupModel& G, const std::vector<double>& beta, const std::vector<ElementSet>& S,
                           const ElementSet& F);

struct CompactnessObstruction {
  std::vector<Element> translates;
  double c = 0.0;      ///< mass of a on the window
  double bound = 0.0;  ///< N^(1/q) c
  NormResult value;    ///< weak (p,q) norm of the translates
  bool holds = false;
};

/// Greedily picks N elements whose translates of the window supp(a) are
/// pairwise disjoint (nearest first) and compares the weak (p,q) norm of the
/// translated means with N^(1/q) c. Infinite groups only.
CompactnessObstruction compactness_obstruction(const GroupModel& G, const FiniteSupportVector& a, const Exponent& p,
                                               const Exponent& q, std::size_t N, int max_radius = 64);

struct FreeGroupObstruction {
  Element piece;       ///< one-letter word x of the heaviest W(x)
  Element translator;  ///< a generator t with t^i W(x) pairwise disjoint
  double piece_mass = 0.0;
  double bound = 0.0;  ///< piece_mass n^(1/q)
  NormResult value;    ///< weak (1,q) norm of (t a, ..., t^n a)
  bool disjoint = false;
  bool holds = false;
};

/// Free group F_2: a must be a mean. Pieces W(x) = words starting with x are
/// tried in the order a, a^-1, b, b^-1.
FreeGroupObstruction freegroup_obstruction(const FiniteSupportVector& a, const Exponent& q, Index n);

struct ScanRow {
  Index n = 0;
  std::string family;
  double best_ratio = 0.0;
  double bound = 0.0;  ///< n^(1 - 1/q)
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double fitted_exponent = 0.0;  ///< slope of log ratio against log n
};

ScanResult pseudo_amenability_scan(const GroupModel& G, const std::vector<Index>& n_values, FolnerFamily family,
                                   const Exponent& q, const FolnerSearchOptions& options = {});

}  // namespace mnorm
