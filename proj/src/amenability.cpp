#include "mnorm/amenability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "mnorm/errors.hpp"

namespace mnorm {

FolnerReport folner_ratio(const GroupModel& G, const ElementSet& F, const ElementSet& S) {
  if (S.empty()) throw std::invalid_argument("Folner ratio needs a nonempty S");
  FolnerReport r;
  r.F = make_set(F);
  r.S = make_set(S);
  r.fs_size = product_set(G, r.F, r.S).size();
  r.ratio = static_cast<double>(r.fs_size) / static_cast<double>(r.S.size());
  return r;
}

void check_bound(FolnerReport& report, double C, const Exponent& q) {
  BoundCheck b;
  b.C = C;
  b.n = static_cast<Index>(report.F.size());
  b.exponent = 1.0 - q.reciprocal();
  b.bound = C * std::pow(static_cast<double>(b.n), b.exponent);
  b.holds = report.ratio <= b.bound * (1.0 + 1e-12);
  report.bound_checked = b;
}

FolnerFamily parse_family(const std::string& text) {
  if (text == "balls") return FolnerFamily::balls;
  if (text == "rectangles") return FolnerFamily::rectangles;
  if (text == "connected" || text == "connected_subsets") return FolnerFamily::connected_subsets;
  throw std::invalid_argument("unknown family '" + text + "'");
}

std::string to_string(FolnerFamily f) {
  switch (f) {
    case FolnerFamily::balls:
      return "balls";
    case FolnerFamily::rectangles:
      return "rectangles";
    case FolnerFamily::connected_subsets:
      return "connected_subsets";
  }
  return {};
}

namespace {

struct Best {
  ElementSet S;
  std::size_t fs = 0;
  bool set = false;

  void offer(ElementSet cand, std::size_t fs_size) {
    if (cand.empty()) return;
    if (set) {
      // Compare fs/|S| exactly as integers.
      const auto lhs = fs_size * S.size();
      const auto rhs = fs * cand.size();
      if (lhs > rhs) return;
      if (lhs == rhs && (cand.size() > S.size() || (cand.size() == S.size() && !(cand < S)))) return;
    }
    S = std::move(cand);
    fs = fs_size;
    set = true;
  }
};

class ConnectedEnumerator {
 public:
  ConnectedEnumerator(const GroupModel& G, const ElementSet& F, std::size_t max_size, std::size_t guard, Best& best)
      : G_(G), F_(F), max_size_(max_size), guard_(guard), best_(best) {}

  void run() {
    const Element e = G_.identity();
    std::vector<Element> S{e};
    std::set<Element> in{e};
    std::set<Element> banned;
    std::vector<Element> ext = neighbours(e, in, banned, {});
    recurse(S, in, ext, banned);
  }

 private:
  std::vector<Element> neighbours(const Element& u, const std::set<Element>& in, const std::set<Element>& banned,
                                  const std::vector<Element>& ext) const {
    std::vector<Element> out;
    for (const auto& g : G_.generators()) {
      Element v = G_.mul(g, u);
      if (in.count(v) || banned.count(v)) continue;
      if (std::find(ext.begin(), ext.end(), v) != ext.end()) continue;
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      out.push_back(std::move(v));
    }
    return out;
  }

  void recurse(std::vector<Element>& S, std::set<Element>& in, std::vector<Element> ext, std::set<Element>& banned) {
    if (++count_ > guard_) throw GuardExceeded("connected-subset search exceeds " + std::to_string(guard_) + " sets");
    ElementSet sorted = make_set(S);
    const std::size_t fs = product_set(G_, F_, sorted).size();
    best_.offer(std::move(sorted), fs);
    if (S.size() >= max_size_) return;
    std::vector<Element> local_bans;
    while (!ext.empty()) {
      Element u = ext.back();
      ext.pop_back();
      std::vector<Element> next = ext;
      for (auto& v : neighbours(u, in, banned, ext)) next.push_back(std::move(v));
      S.push_back(u);
      in.insert(u);
      recurse(S, in, next, banned);
      in.erase(u);
      S.pop_back();
      banned.insert(u);
      local_bans.push_back(u);
    }
    for (const auto& u : local_bans) banned.erase(u);
  }

  const GroupModel& G_;
  const ElementSet& F_;
  std::size_t max_size_;
  std::size_t guard_;
  Best& best_;
  std::size_t count_ = 0;
};

}  // namespace

FolnerReport folner_search(const GroupModel& G, const ElementSet& F, FolnerFamily family,
                           const FolnerSearchOptions& options) {
  const ElementSet Fs = make_set(F);
  Best best;
  switch (family) {
    case FolnerFamily::balls: {
      std::size_t last = 0;
      for (int r = 0; r <= options.max_radius; ++r) {
        ElementSet S = ball(G, r, options.guard);
        if (S.size() == last) break;  // the whole (finite) group
        last = S.size();
        const std::size_t fs = product_set(G, Fs, S).size();
        best.offer(std::move(S), fs);
      }
      break;
    }
    case FolnerFamily::rectangles: {
      if (G.kind() != GroupKind::lattice) throw std::invalid_argument("rectangles need a lattice group");
      const int d = G.rank();
      if (std::pow(static_cast<double>(options.max_side), d) > static_cast<double>(options.guard)) {
        throw GuardExceeded("rectangle family exceeds the guard");
      }
      std::vector<int> side(static_cast<std::size_t>(d), 1);
      while (true) {
        std::vector<Element> pts;
        std::vector<int> c(static_cast<std::size_t>(d), 0);
        while (true) {
          pts.push_back(Element{c});
          std::size_t j = 0;
          while (j < c.size() && ++c[j] == side[j]) c[j++] = 0;
          if (j == c.size()) break;
        }
        ElementSet S = make_set(std::move(pts));
        const std::size_t fs = product_set(G, Fs, S).size();
        best.offer(std::move(S), fs);
        std::size_t j = 0;
        while (j < side.size() && ++side[j] > options.max_side) side[j++] = 1;
        if (j == side.size()) break;
      }
      break;
    }
    case FolnerFamily::connected_subsets: {
      ConnectedEnumerator(G, Fs, options.max_size, options.guard, best).run();
      break;
    }
  }
  FolnerReport r = folner_ratio(G, Fs, best.S);
  r.family = to_string(family);
  return r;
}

ElementSet ball_prefix(const GroupModel& G, std::size_t n) {
  if (G.kind() == GroupKind::finite && n > G.order()) throw std::invalid_argument("group has fewer than n elements");
  std::vector<Element> ordered;
  std::set<Element> seen;
  for (int r = 0; ordered.size() < n; ++r) {
    for (const auto& g : ball(G, r))
      if (seen.insert(g).second) ordered.push_back(g);
  }
  ordered.resize(n);
  return make_set(std::move(ordered));
}

// ---------------------------------------------------------------------------

void validate_mean(const FiniteSupportVector& a) {
  double mass = 0.0;
  for (const auto& [t, v] : a) {
    if (v < 0.0) throw std::invalid_argument("mean candidate has a negative entry");
    mass += v;
  }
  if (std::abs(mass - 1.0) > 1e-12) throw std::invalid_argument("mean candidate does not have unit mass");
}

FiniteSupportVector uniform_mean(const ElementSet& S) {
  if (S.empty()) throw std::invalid_argument("uniform mean on an empty set");
  return indicator(S, 1.0 / static_cast<double>(S.size()));
}

MultiVector translate_tuple(const GroupModel& G, const FiniteSupportVector& a, const std::vector<Element>& F) {
  if (F.empty()) throw std::invalid_argument("no translating elements");
  std::vector<FiniteSupportVector> tr;
  std::vector<Element> pts;
  for (const auto& s : F) {
    tr.push_back(translate(G, s, a));
    for (const auto& [t, v] : tr.back()) pts.push_back(t);
  }
  const ElementSet U = make_set(std::move(pts));
  std::map<Element, Index> idx;
  std::vector<std::string> labels;
  for (const auto& t : U) {
    idx[t] = static_cast<Index>(labels.size());
    labels.push_back(G.to_string(t));
  }
  if (U.empty()) {
    labels.push_back(G.to_string(G.identity()));
  }
  MatrixXd X = MatrixXd::Zero(static_cast<Index>(labels.size()), static_cast<Index>(F.size()));
  for (std::size_t i = 0; i < tr.size(); ++i)
    for (const auto& [t, v] : tr[i]) X(idx.at(t), static_cast<Index>(i)) = v;
  SpacePtr space = DiscreteSpace::make(std::move(labels), VectorXd::Ones(X.rows()));
  return MultiVector(std::move(space), std::move(X));
}

NormResult invariance_constant(const GroupModel& G, const FiniteSupportVector& a, const std::vector<Element>& F,
                               const Exponent& p, const Exponent& q, const WeakOptions& options) {
  return weak_pq(translate_tuple(G, a, F), p, q, Exponent::one(), options);
}

FiniteSupportVector layered_function(const std::vector<double>& beta, const std::vector<ElementSet>& S) {
  if (beta.size() != S.size()) throw std::invalid_argument("layer count differs from coefficient count");
  FiniteSupportVector f;
  for (std::size_t k = 0; k < S.size(); ++k)
    for (const auto& t : S[k]) f[t] += beta[k];
  return f;
}

double layered_closed_form(const GroupModel& G, const std::vector<double>& beta, const std::vector<ElementSet>& S,
                           const ElementSet& F) {
  if (beta.size() != S.size()) throw std::invalid_argument("layer count differs from coefficient count");
  for (std::size_t k = 1; k < S.size(); ++k) {
    const ElementSet a = make_set(S[k - 1]);
    const ElementSet b = make_set(S[k]);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) throw std::invalid_argument("layers are not nested");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < S.size(); ++k) {
    acc += std::abs(beta[k]) * static_cast<double>(product_set(G, make_set(F), make_set(S[k])).size());
  }
  return acc;
}

CompactnessObstruction compactness_obstruction(const GroupModel& G, const FiniteSupportVector& a, const Exponent& p,
                                               const Exponent& q, std::size_t N, int max_radius) {
  if (G.kind() == GroupKind::finite) throw std::invalid_argument("compactness obstruction needs an infinite group");
  validate_mean(a);
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const ElementSet V = support(a);
  CompactnessObstruction out;
  for (const auto& [t, v] : a) out.c += v;
  std::set<Element> used;
  auto try_add = [&](const Element& s) {
    std::vector<Element> img;
    for (const auto& t : V) {
      Element u = G.mul(s, t);
      if (used.count(u)) return false;
      img.push_back(std::move(u));
    }
    used.insert(img.begin(), img.end());
    out.translates.push_back(s);
    return true;
  };
  std::set<Element> seen;
  for (int r = 0; r <= max_radius && out.translates.size() < N; ++r) {
    for (const auto& s : ball(G, r)) {
      if (!seen.insert(s).second) continue;
      if (try_add(s) && out.translates.size() == N) break;
    }
  }
  if (out.translates.size() < N) throw GuardExceeded("cannot separate N translates within the search radius");
  out.bound = std::pow(static_cast<double>(N), q.reciprocal()) * out.c;
  out.value = invariance_constant(G, a, out.translates, p, q);
  out.holds = out.value.upper_bound >= out.bound * (1.0 - 1e-12);
  return out;
}

FreeGroupObstruction freegroup_obstruction(const FiniteSupportVector& a, const Exponent& q, Index n) {
  const GroupModel G = GroupModel::free(2);
  validate_mean(a);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  for (const auto& [t, v] : a) G.validate(t);
  FreeGroupObstruction out;
  out.piece_mass = -1.0;
  for (int letter : {1, -1, 2, -2}) {
    double mass = 0.0;
    for (const auto& [t, v] : a)
      if (!t.rep.empty() && t.rep.front() == letter) mass += v;
    if (mass > out.piece_mass) {
      out.piece_mass = mass;
      out.piece = Element{{letter}};
    }
  }
  const int x = out.piece.rep.front();
  out.translator = Element{{std::abs(x) == 1 ? 2 : 1}};

  std::vector<Element> F;
  Element power = G.identity();
  for (Index i = 0; i < n; ++i) {
    power = G.mul(out.translator, power);
    F.push_back(power);
  }
  // t^i W(x) restricted to the translated support of a.
  std::vector<ElementSet> pieces;
  for (const auto& s : F) {
    std::vector<Element> img;
    for (const auto& [t, v] : a)
      if (!t.rep.empty() && t.rep.front() == x) img.push_back(G.mul(s, t));
    pieces.push_back(make_set(std::move(img)));
  }
  out.disjoint = true;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      ElementSet inter;
      std::set_intersection(pieces[i].begin(), pieces[i].end(), pieces[j].begin(), pieces[j].end(),
                            std::back_inserter(inter));
      if (!inter.empty()) out.disjoint = false;
    }
  out.bound = out.piece_mass * std::pow(static_cast<double>(n), q.reciprocal());
  out.value = invariance_constant(G, a, F, Exponent::one(), q);
  out.holds = out.disjoint && out.value.value >= out.bound * (1.0 - 1e-12);
  return out;
}

ScanResult pseudo_amenability_scan(const GroupModel& G, const std::vector<Index>& n_values, FolnerFamily family,
                                   const Exponent& q, const FolnerSearchOptions& options) {
  ScanResult out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (Index n : n_values) {
    if (n < 1) throw std::invalid_argument("scan needs n >= 1");
    const FolnerReport r = folner_search(G, ball_prefix(G, static_cast<std::size_t>(n)), family, options);
    ScanRow row{n, r.family, r.ratio, std::pow(static_cast<double>(n), 1.0 - q.reciprocal())};
    out.rows.push_back(row);
    const double lx = std::log(static_cast<double>(n));
    const double ly = std::log(r.ratio);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(out.rows.size());
  const double den = k * sxx - sx * sx;
  out.fitted_exponent = den > 0.0 ? (k * sxy - sx * sy) / den : 0.0;
  return out;
}

}  // namespace mnorm
