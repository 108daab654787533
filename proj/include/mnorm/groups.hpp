#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mnorm/exponent.hpp"

namespace mnorm {

/// A group element. Finite groups use {index}; free groups a reduced word of
/// letters +-(g+1); lattices the coordinate tuple. Ordered shortlex, so sets
/// of elements have a canonical order.
struct Element {
  std::vector<int> rep;

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.rep.size() <=> b.rep.size(); c != 0) return c;
    return a.rep <=> b.rep;
  }
};

/// Sorted, duplicate-free.
using ElementSet = std::vector<Element>;
ElementSet make_set(std::vector<Element> elems);

enum class GroupKind { finite, free, lattice };

class GroupModel {
 public:
  /// Cayley table with table[i][j] = i * j. Checks the Latin property,
  /// identity, inverses and associativity (all triples up to order 64,
  /// sampled beyond). Generators are all non-identity elements.
  static GroupModel finite_from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels = {});
  /// Closure of permutations of {0..d-1}; elements in breadth-first order.
  static GroupModel finite_from_perms(const std::vector<std::vector<int>>& gens);
  static GroupModel cyclic(int n);
  static GroupModel symmetric(int d);
  static GroupModel free(int rank);
  static GroupModel lattice(int dim);

  GroupKind kind() const { return kind_; }
  /// |G| for finite groups, 0 otherwise.
  std::size_t order() const { return table_.size(); }
  int rank() const { return rank_; }

  Element identity() const;
  Element mul(const Element& g, const Element& h) const;
  Element inv(const Element& g) const;
  /// Generating set, closed under inverses, in canonical order.
  const ElementSet& generators() const { return gens_; }
  /// All elements of a finite group.
  ElementSet elements() const;

  /// Throws std::invalid_argument if g is not an element of this group.
  void validate(const Element& g) const;

  /// Free groups print letters a, b, ... with capitals for inverses ("e" for
  /// the empty word); lattices print "(1,-2)"; finite groups their labels.
  std::string to_string(const Element& g) const;
  Element parse(const std::string& text) const;

  std::string describe() const;

 private:
  GroupKind kind_ = GroupKind::finite;
  int rank_ = 0;
  int identity_index_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  ElementSet gens_;
};

/// Parses a Cayley table from CSV rows of integers (or of labels given in an
/// optional header row starting with "*").
GroupModel parse_table_csv(const std::string& text);

/// All products of at most `radius` generators, canonical order. Throws
/// GuardExceeded beyond `guard` elements.
ElementSet ball(const GroupModel& G, int radius, std::size_t guard = 1000000);

/// {f s : f in F, s in S}.
ElementSet product_set(const GroupModel& G, const ElementSet& F, const ElementSet& S);

/// Finitely supported real function on a group (counting measure).
using FiniteSupportVector = std::map<Element, double>;

FiniteSupportVector delta(const Element& s, double value = 1.0);
FiniteSupportVector indicator(const ElementSet& S, double value = 1.0);

/// (s . f)(t) = f(s^-1 t).
FiniteSupportVector translate(const GroupModel& G, const Element& s, const FiniteSupportVector& f);

double norm(const FiniteSupportVector& f, const Exponent& p);
ElementSet support(const FiniteSupportVector& f);

}  // namespace mnorm
