// Acceptance suite: one PASS/FAIL line per criterion. With --report FILE the
// numeric results are also written as JSON.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "json.hpp"
#include "mnorm/checks.hpp"
#include "mnorm/gmodules.hpp"
#include "mnorm/operators.hpp"
#include "mnorm/partition.hpp"
#include "oracle.hpp"

using namespace mnorm;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = true;
  std::string detail;
  json data = json::object();
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v, int prec = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

SpacePtr space_of(const VectorXd& w) { return oracle::space_with(w); }

ElementSet interval(int lo, int hi) {
  ElementSet s;
  for (int i = lo; i < hi; ++i) s.push_back(Element{{i}});
  return s;
}

// 1. Greedy pointwise max against exhaustive partitions, q = p.
Outcome greedy_vs_brute() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> m_of(1, 8), n_of(1, 4);
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int t = 0; t < 200; ++t) {
    const Index m = m_of(rng), n = n_of(rng);
    const double p = ps[t % 4];
    const VectorXd w = t % 2 ? oracle::random_weights(rng, m) : VectorXd::Ones(m);
    const MatrixXd F = oracle::random_matrix(rng, m, n);
    const double g = standard_pq(MultiVector(space_of(w), F), Exponent(p), Exponent(p), PartitionMode::greedy).value;
    const double b = oracle::brute_partition(F, w, p, p);
    worst = std::max(worst, std::abs(g - b) / std::max(1.0, b));
  }
  const double secs = since(t0);
  Outcome o;
  o.pass = worst <= 1e-12 && secs < 10.0;
  o.detail = "200 instances, max rel diff " + num(worst) + ", " + num(secs, 2) + " s";
  o.data = {{"max_rel_diff", worst}};
  return o;
}

// 2. Partition sup at q = 1 against the maximum multi-norm.
Outcome q1_coincidence() {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_int_distribution<int> m_of(1, 8), n_of(1, 4);
  double worst = 0.0;
  int equal = 0;
  for (int t = 0; t < 200; ++t) {
    const Index m = m_of(rng), n = n_of(rng);
    const MultiVector x(space_of(oracle::random_weights(rng, m)), oracle::random_matrix(rng, m, n));
    const double a = partition_sup_q(x, Exponent(1.0)).value;
    const double b = max_multinorm(x).value;
    equal += a == b;
    worst = std::max(worst, std::abs(a - b));
  }
  Outcome o;
  o.pass = worst <= 1e-12 * 8;
  o.detail = "200 instances, " + std::to_string(equal) + " bitwise equal, max diff " + num(worst);
  o.data = {{"max_diff", worst}, {"bitwise_equal", equal}};
  return o;
}

// 3. A1-A4 for weak (p,q) on l^1.
Outcome axiom_suite() {
  const std::pair<double, double> pairs[] = {{1, 1}, {1, 2}, {2, 2}, {1.5, 3}};
  Outcome o;
  int failures = 0, cases = 0;
  for (const auto& [p, q] : pairs) {
    std::mt19937_64 rng(kSeed + 3);
    AxiomOptions opts;
    opts.trials = 100;
    opts.seed = kSeed;
    opts.n_max = 3;
    const AxiomReport rep = axioms_check(weak_engine(Exponent(p), Exponent(q), Exponent::one()),
                                         space_of(oracle::random_weights(rng, 4)), EngineKind::multi, opts);
    failures += rep.failures();
    cases += static_cast<int>(rep.cases.size());
    o.data[num(p) + "," + num(q)] = rep.failures();
  }
  o.pass = failures == 0;
  o.detail = std::to_string(cases) + " axiom cases over 4 pairs, " + std::to_string(failures) + " failures";
  return o;
}

// 4. (1,2) <= (1.5,2) <= (2,2) <= (1.5,1.5) <= (1,1) on l^1.
Outcome ordering_chain_check() {
  std::mt19937_64 rng(kSeed + 4);
  std::vector<MultiVector> samples;
  for (int t = 0; t < 100; ++t) {
    const Index m = 2 + t % 3, n = 1 + t % 3;
    samples.emplace_back(space_of(oracle::random_weights(rng, m)), oracle::random_matrix(rng, m, n));
  }
  const std::vector<PQ> chain = {{Exponent(1.0), Exponent(2.0)},
                                 {Exponent(1.5), Exponent(2.0)},
                                 {Exponent(2.0), Exponent(2.0)},
                                 {Exponent(1.5), Exponent(1.5)},
                                 {Exponent(1.0), Exponent(1.0)}};
  const OrderingReport rep = ordering_chain(samples, chain);
  int bad = 0;
  double slack = INFINITY;
  for (const auto& l : rep.links)
    for (std::size_t k = 0; k < l.lhs.size(); ++k) {
      bad += l.lhs[k] > l.rhs[k] + 1e-9;
      slack = std::min(slack, l.rhs[k] - l.lhs[k]);
    }
  Outcome o;
  o.pass = rep.applicable && rep.ok && bad == 0;
  o.detail = "100 instances, 4 links, min slack " + num(slack) + ", violations " + std::to_string(bad);
  o.data = {{"violations", bad}, {"min_slack", slack}};
  return o;
}

// 5. Duality sandwich.
Outcome duality() {
  std::mt19937_64 rng(kSeed + 5);
  std::vector<MultiVector> small;
  for (Index m : {2, 3})
    for (Index n = 1; n <= 3; ++n)
      for (int t = 0; t < 3; ++t) small.emplace_back(DiscreteSpace::counting(m), oracle::random_matrix(rng, m, n));
  const DualityReport r11 = duality_check(small, Exponent(1.0), Exponent(1.0));
  double abs11 = 0.0;
  for (const auto& s : r11.samples) abs11 = std::max(abs11, std::abs(s.upper - s.lower));

  std::vector<MultiVector> lambdas;
  for (int t = 0; t < 50; ++t)
    lambdas.emplace_back(DiscreteSpace::counting(2 + t % 2), oracle::random_matrix(rng, 2 + t % 2, 1 + t % 3));
  const DualityReport r12 = duality_check(lambdas, Exponent(1.0), Exponent(2.0));
  Outcome o;
  o.pass = abs11 <= 1e-6 && r12.max_rel_gap <= 0.05 && r11.ok && r12.ok;
  o.detail = "(1,1): " + std::to_string(small.size()) + " instances, max |upper-lower| " + num(abs11) +
             "; (1,2): 50 instances, max rel gap " + num(r12.max_rel_gap);
  o.data = {{"gap_11", abs11}, {"rel_gap_12", r12.max_rel_gap}};
  return o;
}

// 6. mb-norm of operators on l^2 with weak (2,2) engines.
Outcome mb_contract() {
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_int_distribution<int> m_of(1, 4);
  WeakOptions w;
  w.ball.rel_tol = 1e-4;
  w.ball.max_cells = 1500;
  int ok = 0;
  double worst = 0.0;
  json vals = json::array();
  for (int t = 0; t < 20; ++t) {
    const Index m = m_of(rng), d = m_of(rng);
    const LinOp T(oracle::random_matrix(rng, m, d), DiscreteSpace::counting(d), Exponent(2.0),
                  DiscreteSpace::counting(m), Exponent(2.0));
    const MbNormResult res = mb_norm(T, 5, weak_operator_engines(T, Exponent(2.0), Exponent(2.0), w));
    const double spectral = T.matrix.jacobiSvd().singularValues()(0);
    // Inside the certified interval, which must contain the spectral norm.
    const bool inside = res.result.value <= spectral * (1 + 1e-9) && spectral <= res.result.upper_bound * (1 + 1e-9);
    ok += res.monotone && res.contract_checked && res.contract_ok && inside;
    worst = std::max(worst, (spectral - res.result.value) / spectral);
    vals.push_back(res.result.value);
  }
  Outcome o;
  o.pass = ok == 20;
  o.detail = std::to_string(ok) + "/20 within gap and monotone, max rel shortfall " + num(worst);
  o.data = {{"values", vals}};
  return o;
}

// 7. Layered closed form against the (1,1) constant.
Outcome layered() {
  const GroupModel Z = GroupModel::lattice(1);
  const double worked = layered_closed_form(Z, {0.5, 0.5}, {interval(0, 1), interval(0, 2)}, interval(0, 2));
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_int_distribution<int> len(1, 3), fsize(1, 4), off(-3, 3);
  double worst = 0.0;
  int count = 0;
  for (int t = 0; t < 40; ++t) {
    const int N = 1 + t % 3;
    std::vector<double> beta;
    std::vector<ElementSet> S;
    int lo = 0, hi = 0;
    for (int k = 0; k < N; ++k) {
      lo -= len(rng) - 1;
      hi += len(rng);
      beta.push_back(u(rng));
      S.push_back(interval(lo, hi));
    }
    std::vector<Element> F;
    for (int i = fsize(rng); i > 0; --i) F.push_back(Element{{off(rng)}});
    F = make_set(F);
    const double v = invariance_constant(Z, layered_function(beta, S), F, Exponent(1.0), Exponent(1.0)).value;
    const double c = layered_closed_form(Z, beta, S, F);
    worst = std::max(worst, std::abs(v - c) / c);
    ++count;
  }
  const GroupModel Z6 = GroupModel::cyclic(6);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> beta;
    std::vector<ElementSet> S;
    int hi = 0;
    for (int k = 0; k < 1 + t % 3; ++k) {
      hi = std::min(6, hi + len(rng));
      beta.push_back(u(rng));
      S.push_back(interval(0, hi));
    }
    std::vector<Element> F;
    for (int i = fsize(rng); i > 0; --i) F.push_back(Element{{(off(rng) + 6) % 6}});
    F = make_set(F);
    const double v = invariance_constant(Z6, layered_function(beta, S), F, Exponent(1.0), Exponent(1.0)).value;
    const double c = layered_closed_form(Z6, beta, S, F);
    worst = std::max(worst, std::abs(v - c) / c);
    ++count;
  }
  Outcome o;
  o.pass = worked == 2.5 && worst <= 1e-12;
  o.detail = "worked value " + num(worked) + ", " + std::to_string(count) + " instances on Z and Z6, max rel diff " +
             num(worst);
  o.data = {{"worked", worked}, {"max_rel_diff", worst}};
  return o;
}

// 8. Folner numbers.
Outcome folner_numbers() {
  const auto t0 = Clock::now();
  const GroupModel Z = GroupModel::lattice(1);
  const GroupModel F2 = GroupModel::free(2);
  const double z = folner_ratio(Z, interval(0, 2), interval(0, 5)).ratio;
  const double f = folner_ratio(F2, {F2.identity(), F2.parse("a")}, ball(F2, 1)).ratio;
  FolnerSearchOptions so;
  so.max_radius = 200;
  const ScanResult scan = pseudo_amenability_scan(Z, {1, 2, 4, 8, 16}, FolnerFamily::balls, Exponent(2.0), so);
  bool near_one = true;
  double prev = INFINITY;
  for (const auto& row : scan.rows) {
    // At fixed n the best interval ratio (n + m - 1)/m tends to 1 as m grows.
    near_one = near_one && row.best_ratio >= 1.0 && row.best_ratio < 1.0 + static_cast<double>(row.n) / 200.0;
    prev = row.best_ratio;
  }
  FolnerSearchOptions co;
  co.max_size = 10;
  const FolnerReport conn = folner_search(F2, make_set({F2.identity(), F2.parse("a")}), FolnerFamily::connected_subsets, co);
  const double secs = since(t0);
  Outcome o;
  o.pass = z == 1.2 && f == 1.6 && near_one && conn.ratio > 1.0 && secs < 60.0;
  o.detail = "Z " + num(z) + ", F2 " + num(f) + ", Z scan max ratio " + num(prev, 6) +
             ", F2 connected (size<=10) min ratio " + num(conn.ratio, 6) + ", " + num(secs, 3) + " s";
  o.data = {{"z", z}, {"f2", f}, {"scan_last", prev}, {"connected", conn.ratio}};
  return o;
}

// 9. Free-group obstruction against brute-force partitions.
Outcome freegroup() {
  const GroupModel F2 = GroupModel::free(2);
  const auto a = uniform_mean(ball(F2, 1));
  const Element b = F2.parse("b");
  int ok = 0, total = 0;
  double worst = 0.0;
  for (double q : {1.0, 2.0})
    for (Index n = 1; n <= 6; ++n) {
      std::vector<Element> F;
      Element p = F2.identity();
      for (Index i = 0; i < n; ++i) F.push_back(p = F2.mul(b, p));
      const MultiVector x = translate_tuple(F2, a, F);
      const double brute = oracle::brute_partition_shared(x.columns(), x.space()->weights(), q);
      const FreeGroupObstruction o = freegroup_obstruction(a, Exponent(q), n);
      const double bound = 0.2 * std::pow(static_cast<double>(n), 1.0 / q);
      worst = std::max(worst, std::abs(o.value.value - brute));
      ok += std::abs(o.value.value - brute) <= 1e-12 && brute >= bound - 1e-12 && o.holds;
      ++total;
    }
  Outcome o;
  o.pass = ok == total;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " (q,n) pairs, max |engine-brute| " + num(worst);
  o.data = {{"max_diff", worst}};
  return o;
}

// 10. Module identities and inequalities on finite groups.
Outcome module_loop() {
  std::vector<std::pair<std::string, GroupPtr>> groups = {
      {"Z2", std::make_shared<const GroupModel>(GroupModel::cyclic(2))},
      {"Z3", std::make_shared<const GroupModel>(GroupModel::cyclic(3))},
      {"Z4", std::make_shared<const GroupModel>(GroupModel::cyclic(4))},
      {"S3", std::make_shared<const GroupModel>(GroupModel::symmetric(3))}};
  int ok = 0, total = 0;
  double worst = 0.0, upper = 0.0;
  for (const auto& [name, G] : groups)
    for (double p : {1.5, 2.0, 3.0}) {
      const ModuleVerifyReport r = module_verify(G, Exponent(p), kSeed, 50, 1e-12);
      for (const auto& [id, v] : r.residuals) worst = std::max(worst, v);
      upper = std::max(upper, r.norm_upper);
      ok += r.ok && r.norm_upper <= 1.0 + 1e-9 && std::abs(r.mean_constant - 1.0) <= 1e-9;
      ++total;
    }
  Outcome o;
  o.pass = ok == total;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " (group,p) runs, max residual " + num(worst) +
             ", max |R| upper " + num(upper, 12);
  o.data = {{"max_residual", worst}, {"norm_upper", upper}};
  return o;
}

// 11. Sign lemma.
Outcome sign_lemma() {
  std::mt19937_64 rng(kSeed + 11);
  std::uniform_int_distribution<int> n_of(1, 10), dim_of(1, 4);
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  int ok = 0;
  double min_slack = INFINITY;
  for (int t = 0; t < 100; ++t) {
    const int n = n_of(rng);
    const Index d = dim_of(rng);
    std::vector<std::vector<VectorXd>> F(n, std::vector<VectorXd>(n));
    for (auto& row : F)
      for (auto& v : row) v = oracle::random_matrix(rng, d, 1).col(0);
    const SignLemmaReport r = sign_lemma_check(F, Exponent(ps[t % 4]));
    ok += r.holds;
    min_slack = std::min(min_slack, r.C - r.diagonal);
  }
  std::vector<std::vector<VectorXd>> D(4, std::vector<VectorXd>(4, VectorXd::Zero(3)));
  for (int j = 0; j < 4; ++j) D[j][j] = oracle::random_matrix(rng, 3, 1).col(0);
  const SignLemmaReport eq = sign_lemma_check(D, Exponent(1.5));
  const double eq_diff = std::abs(eq.C - eq.diagonal) / eq.C;
  Outcome o;
  o.pass = ok == 100 && eq_diff <= 1e-14;
  o.detail = std::to_string(ok) + "/100 hold, min slack " + num(min_slack) + ", diagonal-only rel diff " + num(eq_diff);
  o.data = {{"min_slack", min_slack}, {"eq_diff", eq_diff}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string report_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--report") report_path = argv[i + 1];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"greedy equals exhaustive partitions", greedy_vs_brute},
      {"q=1 partition sup equals maximum multi-norm", q1_coincidence},
      {"weak (p,q) axiom suite", axiom_suite},
      {"ordering chain", ordering_chain_check},
      {"duality sandwich", duality},
      {"mb-norm contract on l^2", mb_contract},
      {"layered closed form", layered},
      {"Folner numbers", folner_numbers},
      {"free-group obstruction", freegroup},
      {"module identities on finite groups", module_loop},
      {"sign lemma", sign_lemma},
  };

  json report = json::object();
  bool all = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    all = all && o.pass;
    report[std::to_string(index)] = o.data;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << std::endl;
  }

  // 12. Rerun every criterion with the same seeds and compare the JSON bytes.
  {
    bool same = true;
    std::string differing;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
      const std::string key = std::to_string(k + 1);
      Outcome o;
      try {
        o = criteria[k].second();
      } catch (const std::exception&) {
        o.data = "threw";
      }
      if (o.data.dump() != report[key].dump()) {
        same = false;
        differing += " " + key;
      }
    }
    all = all && same;
    report["12"] = {{"identical", same}};
    std::cout << (same ? "PASS" : "FAIL") << " 12 determinism: " << criteria.size() << " criterion reports rerun, "
              << (same ? "byte-identical" : "differ in" + differing) << std::endl;
  }

  if (!report_path.empty()) std::ofstream(report_path) << report.dump(2) << "\n";
  return all ? 0 : 1;
}
