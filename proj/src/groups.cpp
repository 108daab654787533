#include "mnorm/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mnorm/errors.hpp"

namespace mnorm {

ElementSet make_set(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

GroupModel GroupModel::finite_from_table(std::vector<std::vector<int>> table, std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("empty Cayley table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("Cayley table is not square");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : row) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("Cayley table rows are not permutations");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      const int v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("Cayley table columns are not permutations");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = at(i, j) == j && at(j, i) == j;
    if (ok) e = i;
  }
  if (e < 0) throw std::invalid_argument("Cayley table has no identity");
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) == e && at(j, i) == e) inverse[static_cast<std::size_t>(i)] = j;
  if (std::count(inverse.begin(), inverse.end(), -1) > 0) throw std::invalid_argument("Cayley table lacks inverses");
  auto assoc = [&](int a, int b, int c) { return at(at(a, b), c) == at(a, at(b, c)); };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw std::invalid_argument("Cayley table is not associative");
  } else {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t)
      if (!assoc(pick(rng), pick(rng), pick(rng))) throw std::invalid_argument("Cayley table is not associative");
  }
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("label count differs from table size");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw std::invalid_argument("duplicate element labels");
  }

  GroupModel g;
  g.kind_ = GroupKind::finite;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.labels_ = std::move(labels);
  g.identity_index_ = e;
  std::vector<Element> gens;
  for (int i = 0; i < n; ++i)
    if (i != e) gens.push_back(Element{{i}});
  g.gens_ = make_set(std::move(gens));
  return g;
}

GroupModel GroupModel::finite_from_perms(const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) throw std::invalid_argument("no permutation generators");
  const std::size_t d = gens.front().size();
  for (const auto& p : gens) {
    if (p.size() != d) throw std::invalid_argument("permutation generators differ in degree");
    std::vector<int> s = p;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < d; ++i)
      if (s[i] != static_cast<int>(i)) throw std::invalid_argument("generator is not a permutation of 0..d-1");
  }
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(d);
    for (std::size_t x = 0; x < d; ++x) c[x] = a[static_cast<std::size_t>(b[x])];
    return c;
  };
  std::vector<int> id(d);
  for (std::size_t x = 0; x < d; ++x) id[x] = static_cast<int>(x);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& p : gens) {
      auto c = compose(elems[head], p);
      if (index.emplace(c, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(c));
        if (elems.size() > 100000) throw GuardExceeded("permutation group larger than 100000 elements");
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(compose(elems[i], elems[j]));
  GroupModel g = finite_from_table(std::move(table));
  std::vector<Element> gs;
  for (const auto& p : gens) {
    const int i = index.at(p);
    if (i == g.identity_index_) continue;
    gs.push_back(Element{{i}});
    gs.push_back(Element{{g.inverse_[static_cast<std::size_t>(i)]}});
  }
  g.gens_ = make_set(std::move(gs));
  return g;
}

GroupModel GroupModel::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
  GroupModel g = finite_from_table(std::move(table));
  g.gens_ = n > 1 ? make_set({Element{{1}}, Element{{n - 1}}}) : ElementSet{};
  return g;
}

GroupModel GroupModel::symmetric(int d) {
  if (d < 1) throw std::invalid_argument("symmetric group needs d >= 1");
  if (d == 1) return cyclic(1);
  std::vector<int> swap(static_cast<std::size_t>(d)), cycle(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    swap[static_cast<std::size_t>(i)] = i;
    cycle[static_cast<std::size_t>(i)] = (i + 1) % d;
  }
  std::swap(swap[0], swap[1]);
  return finite_from_perms({swap, cycle});
}

GroupModel GroupModel::free(int rank) {
  if (rank < 1 || rank > 26) throw std::invalid_argument("free group rank must be in 1..26");
  GroupModel g;
  g.kind_ = GroupKind::free;
  g.rank_ = rank;
  std::vector<Element> gens;
  for (int i = 1; i <= rank; ++i) {
    gens.push_back(Element{{i}});
    gens.push_back(Element{{-i}});
  }
  g.gens_ = make_set(std::move(gens));
  return g;
}

GroupModel GroupModel::lattice(int dim) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  GroupModel g;
  g.kind_ = GroupKind::lattice;
  g.rank_ = dim;
  std::vector<Element> gens;
  for (int i = 0; i < dim; ++i) {
    for (int s : {1, -1}) {
      Element e{std::vector<int>(static_cast<std::size_t>(dim), 0)};
      e.rep[static_cast<std::size_t>(i)] = s;
      gens.push_back(std::move(e));
    }
  }
  g.gens_ = make_set(std::move(gens));
  return g;
}

void GroupModel::validate(const Element& g) const {
  switch (kind_) {
    case GroupKind::finite:
      if (g.rep.size() != 1 || g.rep[0] < 0 || g.rep[0] >= static_cast<int>(order())) {
        throw std::invalid_argument("element does not belong to this finite group");
      }
      break;
    case GroupKind::free:
      for (std::size_t i = 0; i < g.rep.size(); ++i) {
        const int l = g.rep[i];
        if (l == 0 || std::abs(l) > rank_) throw std::invalid_argument("letter outside the free group's rank");
        if (i > 0 && g.rep[i - 1] == -l) throw std::invalid_argument("free-group word is not reduced");
      }
      break;
    case GroupKind::lattice:
      if (static_cast<int>(g.rep.size()) != rank_) throw std::invalid_argument("lattice element of wrong dimension");
      break;
  }
}

Element GroupModel::identity() const {
  switch (kind_) {
    case GroupKind::finite:
      return Element{{identity_index_}};
    case GroupKind::free:
      return Element{};
    case GroupKind::lattice:
      return Element{std::vector<int>(static_cast<std::size_t>(rank_), 0)};
  }
  return Element{};
}

Element GroupModel::mul(const Element& g, const Element& h) const {
  validate(g);
  validate(h);
  switch (kind_) {
    case GroupKind::finite:
      return Element{{table_[static_cast<std::size_t>(g.rep[0])][static_cast<std::size_t>(h.rep[0])]}};
    case GroupKind::free: {
      std::vector<int> w = g.rep;
      for (int l : h.rep) {
        if (!w.empty() && w.back() == -l) {
          w.pop_back();
        } else {
          w.push_back(l);
        }
      }
      return Element{std::move(w)};
    }
    case GroupKind::lattice: {
      Element out = g;
      for (std::size_t i = 0; i < out.rep.size(); ++i) out.rep[i] += h.rep[i];
      return out;
    }
  }
  return Element{};
}

Element GroupModel::inv(const Element& g) const {
  validate(g);
  switch (kind_) {
    case GroupKind::finite:
      return Element{{inverse_[static_cast<std::size_t>(g.rep[0])]}};
    case GroupKind::free: {
      Element out;
      for (auto it = g.rep.rbegin(); it != g.rep.rend(); ++it) out.rep.push_back(-*it);
      return out;
    }
    case GroupKind::lattice: {
      Element out = g;
      for (int& v : out.rep) v = -v;
      return out;
    }
  }
  return Element{};
}

ElementSet GroupModel::elements() const {
  if (kind_ != GroupKind::finite) throw std::invalid_argument("elements() needs a finite group");
  ElementSet out;
  for (int i = 0; i < static_cast<int>(order()); ++i) out.push_back(Element{{i}});
  return out;
}

std::string GroupModel::to_string(const Element& g) const {
  validate(g);
  switch (kind_) {
    case GroupKind::finite:
      return labels_[static_cast<std::size_t>(g.rep[0])];
    case GroupKind::free: {
      if (g.rep.empty()) return "e";
      std::string s;
      for (int l : g.rep) s.push_back(static_cast<char>(l > 0 ? 'a' + l - 1 : 'A' - l - 1));
      return s;
    }
    case GroupKind::lattice: {
      std::string s = "(";
      for (std::size_t i = 0; i < g.rep.size(); ++i) s += (i ? "," : "") + std::to_string(g.rep[i]);
      return s + ")";
    }
  }
  return {};
}

Element GroupModel::parse(const std::string& text) const {
  switch (kind_) {
    case GroupKind::finite: {
      for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == text) return Element{{static_cast<int>(i)}};
      throw std::invalid_argument("unknown element '" + text + "'");
    }
    case GroupKind::free: {
      Element out = identity();
      if (text == "e" || text.empty()) return out;
      for (char c : text) {
        int l = 0;
        if (c >= 'a' && c <= 'z') l = c - 'a' + 1;
        if (c >= 'A' && c <= 'Z') l = -(c - 'A' + 1);
        if (l == 0 || std::abs(l) > rank_) throw std::invalid_argument("bad free-group word '" + text + "'");
        out = mul(out, Element{{l}});
      }
      return out;
    }
    case GroupKind::lattice: {
      std::string t;
      for (char c : text)
        if (c != '(' && c != ')' && c != ' ') t.push_back(c == ',' ? ' ' : c);
      std::istringstream is(t);
      Element out;
      int v = 0;
      while (is >> v) out.rep.push_back(v);
      if (!is.eof()) throw std::invalid_argument("bad lattice element '" + text + "'");
      validate(out);
      return out;
    }
  }
  return Element{};
}

std::string GroupModel::describe() const {
  switch (kind_) {
    case GroupKind::finite:
      return "finite(" + std::to_string(order()) + ")";
    case GroupKind::free:
      return "free(" + std::to_string(rank_) + ")";
    case GroupKind::lattice:
      return "lattice(" + std::to_string(rank_) + ")";
  }
  return {};
}

GroupModel parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const auto a = cell.find_first_not_of(" \t");
      const auto b = cell.find_last_not_of(" \t");
      cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::invalid_argument("empty Cayley table CSV");
  std::vector<std::string> labels;
  if (rows.front().front() == "*") {
    labels.assign(rows.front().begin() + 1, rows.front().end());
    rows.erase(rows.begin());
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(labels.size());
    if (rows.size() != labels.size()) throw std::invalid_argument("Cayley table CSV row count differs from header");
    for (const auto& r : rows) {
      if (r.size() != labels.size() + 1) throw std::invalid_argument("Cayley table CSV row length differs from header");
      auto it = idx.find(r[0]);
      if (it == idx.end()) throw std::invalid_argument("unknown row label '" + r[0] + "'");
      auto& out = table[static_cast<std::size_t>(it->second)];
      if (!out.empty()) throw std::invalid_argument("duplicate row label '" + r[0] + "'");
      for (std::size_t j = 1; j < r.size(); ++j) {
        auto jt = idx.find(r[j]);
        if (jt == idx.end()) throw std::invalid_argument("unknown entry '" + r[j] + "'");
        out.push_back(jt->second);
      }
    }
    return GroupModel::finite_from_table(std::move(table), std::move(labels));
  }
  std::vector<std::vector<int>> table;
  for (const auto& r : rows) {
    std::vector<int> row;
    for (const auto& c : r) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(c, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("non-integer Cayley table entry '" + c + "'");
      }
      if (used != c.size()) throw std::invalid_argument("non-integer Cayley table entry '" + c + "'");
      row.push_back(v);
    }
    table.push_back(std::move(row));
  }
  return GroupModel::finite_from_table(std::move(table));
}

ElementSet ball(const GroupModel& G, int radius, std::size_t guard) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::set<Element> seen{G.identity()};
  std::vector<Element> frontier{G.identity()};
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<Element> next;
    for (const auto& g : frontier) {
      for (const auto& s : G.generators()) {
        Element h = G.mul(g, s);
        if (seen.insert(h).second) {
          if (seen.size() > guard) throw GuardExceeded("ball exceeds " + std::to_string(guard) + " elements");
          next.push_back(std::move(h));
        }
      }
    }
    frontier = std::move(next);
  }
  return ElementSet(seen.begin(), seen.end());
}

ElementSet product_set(const GroupModel& G, const ElementSet& F, const ElementSet& S) {
  std::vector<Element> out;
  out.reserve(F.size() * S.size());
  for (const auto& f : F)
    for (const auto& s : S) out.push_back(G.mul(f, s));
  return make_set(std::move(out));
}

FiniteSupportVector delta(const Element& s, double value) { return {{s, value}}; }

FiniteSupportVector indicator(const ElementSet& S, double value) {
  FiniteSupportVector f;
  for (const auto& s : S) f[s] = value;
  return f;
}

FiniteSupportVector translate(const GroupModel& G, const Element& s, const FiniteSupportVector& f) {
  FiniteSupportVector out;
  for (const auto& [t, v] : f) out[G.mul(s, t)] = v;
  return out;
}

double norm(const FiniteSupportVector& f, const Exponent& p) {
  // Summed in sorted order so the value depends only on the multiset of entries.
  std::vector<double> mags;
  for (const auto& [t, v] : f) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  if (mags.empty()) return 0.0;
  if (p.is_inf()) return mags.back();
  double acc = 0.0;
  for (double m : mags) acc += std::pow(m, p.value());
  return std::pow(acc, p.reciprocal());
}

ElementSet support(const FiniteSupportVector& f) {
  ElementSet out;
  for (const auto& [t, v] : f)
    if (v != 0.0) out.push_back(t);
  return out;
}

}  // namespace mnorm
