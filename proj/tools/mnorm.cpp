#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "mnorm/checks.hpp"
#include "mnorm/dual.hpp"
#include "mnorm/errors.hpp"
#include "mnorm/gmodules.hpp"
#include "mnorm/operators.hpp"
#include "mnorm/partition.hpp"
#include "mnorm/weaksum.hpp"

using namespace mnorm;
using io::json;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t guard = 5000000;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;
};

struct Args {
  std::string input, group, kind = "weak", mode = "exact", engine = "weak", family = "balls", F, S, mean, spec;
  std::string p = "1", q = "1", r = "1", s, n_list;
  Index n = 4;
  int samples = 20;
  int radius = 8;
  std::size_t max_size = 10;
  double C = 1.0;
  bool C_given = false;
};

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {}

  void emit(const json& j) const {
    if (cfg_.format == "text") write(io::to_text(j));
    else write(j.dump(2) + "\n");
  }
  void write(const std::string& text) const {
    if (cfg_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw io::InputError("cannot write " + cfg_.out);
    f << text;
  }

 private:
  const RunConfig& cfg_;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_pq(const Exponent& p, const Exponent& q) {
  if (p.is_inf() || q.is_inf()) throw io::InputError("p and q must be finite");
  if (p > q) throw io::InputError("p must not exceed q");
}

MultiVector random_tuple(std::mt19937_64& rng, const SpacePtr& space, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd X(space->size(), n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < space->size(); ++i) X(i, j) = u(rng);
  return MultiVector(space, std::move(X));
}

SpacePtr random_space(std::mt19937_64& rng, Index m) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<std::string> pts;
  VectorXd w(m);
  for (Index k = 0; k < m; ++k) {
    pts.push_back(std::to_string(k));
    w(k) = u(rng);
  }
  return DiscreteSpace::make(std::move(pts), std::move(w));
}

std::vector<Index> index_list(const std::string& text) {
  std::vector<Index> out;
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(t);
  Index v = 0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw io::InputError("bad integer list '" + text + "'");
  return out;
}

json folner_json(const GroupModel& G, const FolnerReport& r, const std::string& method) {
  json j{{"F", io::to_json(G, r.F)},
         {"S", io::to_json(G, r.S)},
         {"fs_size", r.fs_size},
         {"ratio", io::number(r.ratio)},
         {"family", r.family},
         {"method", method},
         {"gap", 0.0}};
  if (r.bound_checked) {
    j["bound_check"] = {{"C", r.bound_checked->C},
                        {"n", r.bound_checked->n},
                        {"exponent", r.bound_checked->exponent},
                        {"bound", io::number(r.bound_checked->bound)},
                        {"holds", r.bound_checked->holds}};
  }
  return j;
}

Engine engine_for(const std::string& kind, const Exponent& p, const Exponent& q, const Exponent& r,
                  PartitionMode mode) {
  if (kind == "weak") {
    require_pq(p, q);
    return weak_engine(p, q, r);
  }
  if (kind == "standard") {
    require_pq(p, q);
    if (!r.is_one() && !(r == p)) throw io::InputError("standard engine lives on L^p; use --r 1 or --r p");
    return standard_engine(p, q, mode);
  }
  if (kind == "max") return max_engine();
  if (kind == "dual") return dual_engine(p, q, r);
  throw io::InputError("unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

int cmd_norm(const Args& a, const RunConfig&, const Output& out) {
  const MultiVector x = io::multivector_from(io::read_json_file(a.input));
  const Exponent p = Exponent::parse(a.p), q = Exponent::parse(a.q), r = Exponent::parse(a.r);
  NormResult res;
  if (a.kind == "max") {
    if (!r.is_one()) throw io::InputError("max multi-norm is computed on l^1");
    res = max_multinorm(x);
  } else if (a.kind == "standard") {
    require_pq(p, q);
    res = standard_pq(x, p, q, parse_partition_mode(a.mode));
  } else if (a.kind == "weak") {
    require_pq(p, q);
    WeakOptions w;
    w.mode = parse_partition_mode(a.mode);
    res = weak_pq(x, p, q, r, w);
  } else if (a.kind == "dual") {
    res = dual_multinorm_upper(x, p, q, r);
  } else {
    throw io::InputError("unknown kind '" + a.kind + "'");
  }
  json j = io::to_json(res);
  j["kind"] = a.kind;
  j["p"] = p.to_string();
  j["q"] = q.to_string();
  j["r"] = r.to_string();
  j["n"] = x.n();
  out.emit(j);
  return 0;
}

int cmd_mu(const Args& a, const RunConfig&, const Output& out) {
  const MultiVector x = io::multivector_from(io::read_json_file(a.input));
  const Exponent p = Exponent::parse(a.p), r = Exponent::parse(a.r);
  const MuResult m = mu(p, x, r);
  json wit = json::array(), alpha = json::array();
  for (Index i = 0; i < m.witness.size(); ++i) wit.push_back(io::number(m.witness(i)));
  for (Index i = 0; i < m.alpha.size(); ++i) alpha.push_back(io::number(m.alpha(i)));
  out.emit({{"value", io::number(m.value)},
            {"upper_bound", io::number(m.upper_bound)},
            {"gap", io::number(m.upper_bound - m.value)},
            {"method", to_string(m.method)},
            {"witness", wit},
            {"alpha", alpha},
            {"p", p.to_string()},
            {"r", r.to_string()}});
  return 0;
}

int cmd_mbnorm(const Args& a, const RunConfig& cfg, const Output& out) {
  const json doc = io::read_json_file(a.input);
  const auto rows = doc.at("matrix").get<std::vector<std::vector<double>>>();
  if (rows.empty() || rows.front().empty()) throw io::InputError("empty matrix");
  MatrixXd M(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw io::InputError("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  const SpacePtr dom = doc.contains("domain") ? io::space_from(doc.at("domain"), M.cols()) : DiscreteSpace::counting(M.cols());
  const SpacePtr cod =
      doc.contains("codomain") ? io::space_from(doc.at("codomain"), M.rows()) : DiscreteSpace::counting(M.rows());
  const Exponent r = Exponent::parse(a.r), t = Exponent::parse(a.s.empty() ? a.r : a.s);
  const Exponent p = Exponent::parse(a.p), q = Exponent::parse(a.q);
  require_pq(p, q);
  const LinOp T(M, dom, r, cod, t);
  AmplificationOptions opts;
  opts.seed = cfg.seed;
  const MbNormResult res = mb_norm(T, a.n, weak_operator_engines(T, p, q), opts, cfg.tol);
  json by_k = json::array();
  for (const auto& k : res.by_k) by_k.push_back(io::to_json(k));
  json j = io::to_json(res.result);
  j["by_k"] = by_k;
  j["op_norm"] = io::to_json(res.op);
  j["monotone"] = res.monotone;
  j["contract_checked"] = res.contract_checked;
  j["contract_ok"] = res.contract_ok;
  out.emit(j);
  return res.monotone && res.contract_ok ? 0 : 1;
}

int cmd_check(const std::string& what, const Args& a, const RunConfig& cfg, const Output& out) {
  const Exponent p = Exponent::parse(a.p), q = Exponent::parse(a.q), r = Exponent::parse(a.r);
  std::mt19937_64 rng(cfg.seed);
  if (what == "axioms") {
    const Engine e = engine_for(a.engine, p, q, r, parse_partition_mode(a.mode));
    AxiomOptions o;
    o.trials = a.samples;
    o.seed = cfg.seed;
    o.tol = cfg.tol;
    o.n_max = std::min<Index>(a.n, 4);
    const bool dual = a.engine == "dual";
    const AxiomReport rep = axioms_check(e, random_space(rng, 4), dual ? EngineKind::dual_multi : EngineKind::multi,
                                         o, dual ? r : Exponent::one(), p, q);
    if (cfg.format == "csv") {
      std::string csv = "axiom,trial,lhs,rhs,ok\n";
      for (const auto& c : rep.cases)
        csv += c.axiom + "," + std::to_string(c.trial) + "," + fmt(c.lhs) + "," + fmt(c.rhs) + "," +
               (c.ok ? "1" : "0") + "\n";
      out.write(csv);
    } else {
      out.emit({{"check", "axioms"},
                {"engine", a.engine},
                {"p", p.to_string()},
                {"q", q.to_string()},
                {"cases", rep.cases.size()},
                {"failures", rep.failures()},
                {"ok", rep.ok},
                {"method", "sampled"},
                {"gap", 0.0}});
    }
    return rep.ok ? 0 : 1;
  }
  if (what == "ordering") {
    require_pq(p, q);
    std::vector<MultiVector> samples;
    for (int i = 0; i < a.samples; ++i) samples.push_back(random_tuple(rng, random_space(rng, 4), std::max<Index>(a.n, 1)));
    OrderingReport all;
    json links = json::array();
    std::string csv = "first,second,sample,lhs,rhs\n";
    for (const auto& chain : standard_chains(p, q)) {
      const OrderingReport rep = ordering_chain(samples, chain, Exponent::one(), {}, cfg.tol);
      all.ok = all.ok && rep.ok;
      all.applicable = all.applicable && rep.applicable;
      for (const auto& l : rep.links) {
        const std::string f = "(" + l.first.first.to_string() + "," + l.first.second.to_string() + ")";
        const std::string s = "(" + l.second.first.to_string() + "," + l.second.second.to_string() + ")";
        links.push_back({{"first", f}, {"second", s}, {"ok", l.ok}});
        for (std::size_t k = 0; k < l.lhs.size(); ++k)
          csv += "\"" + f + "\",\"" + s + "\"," + std::to_string(k) + "," + fmt(l.lhs[k]) + "," + fmt(l.rhs[k]) + "\n";
      }
    }
    if (cfg.format == "csv") out.write(csv);
    else
      out.emit({{"check", "ordering"},
                {"links", links},
                {"applicable", all.applicable},
                {"ok", all.ok},
                {"method", "sampled"},
                {"gap", 0.0}});
    return all.ok ? 0 : 1;
  }
  if (what == "duality") {
    require_pq(p, q);
    std::vector<MultiVector> lambdas;
    for (int i = 0; i < a.samples; ++i) lambdas.push_back(random_tuple(rng, DiscreteSpace::counting(2 + i % 2), 1 + i % 3));
    DualityOptions o;
    o.tol = cfg.tol;
    const DualityReport rep = duality_check(lambdas, p, q, o);
    if (cfg.format == "csv") {
      std::string csv = "sample,lower,upper,rel_gap,ok\n";
      for (std::size_t k = 0; k < rep.samples.size(); ++k) {
        const auto& s = rep.samples[k];
        csv += std::to_string(k) + "," + fmt(s.lower) + "," + fmt(s.upper) + "," + fmt(s.rel_gap) + "," +
               (s.ok ? "1" : "0") + "\n";
      }
      out.write(csv);
    } else {
      out.emit({{"check", "duality"},
                {"samples", rep.samples.size()},
                {"max_rel_gap", io::number(rep.max_rel_gap)},
                {"gap", io::number(rep.max_rel_gap)},
                {"method", "optimizer"},
                {"ok", rep.ok}});
    }
    return rep.ok ? 0 : 1;
  }
  throw io::InputError("unknown check '" + what + "'");
}

int cmd_folner(const Args& a, const RunConfig& cfg, const Output& out) {
  const auto G = io::group_from(a.group);
  FolnerReport rep;
  std::string method = "closed_form";
  if (!a.S.empty()) {
    rep = folner_ratio(*G, make_set(io::elements_from(*G, a.F)), make_set(io::elements_from(*G, a.S)));
  } else {
    FolnerSearchOptions o;
    o.max_radius = a.radius;
    o.max_size = a.max_size;
    o.guard = cfg.guard;
    rep = folner_search(*G, make_set(io::elements_from(*G, a.F)), parse_family(a.family), o);
    method = "exact_enumeration";
  }
  if (a.C_given) check_bound(rep, a.C, Exponent::parse(a.q));
  out.emit(folner_json(*G, rep, method));
  return rep.bound_checked && !rep.bound_checked->holds ? 1 : 0;
}

int cmd_amen(const std::string& what, const Args& a, const RunConfig& cfg, const Output& out) {
  if (what == "folner") {
    if (!a.S.empty()) throw io::InputError("amen folner searches; use the folner command for a given S");
    return cmd_folner(a, cfg, out);
  }
  const auto G = io::group_from(a.group);
  const Exponent p = Exponent::parse(a.p), q = Exponent::parse(a.q);
  if (what == "constant") {
    require_pq(p, q);
    const auto mean = io::mean_from(*G, a.mean.empty() ? "ball:1" : a.mean);
    const auto F = io::elements_from(*G, a.F);
    json j = io::to_json(invariance_constant(*G, mean, F, p, q));
    j["F"] = io::to_json(*G, F);
    j["mean"] = io::to_json(*G, mean);
    j["p"] = p.to_string();
    j["q"] = q.to_string();
    out.emit(j);
    return 0;
  }
  if (what == "scan") {
    FolnerSearchOptions o;
    o.max_radius = a.radius;
    o.max_size = a.max_size;
    o.guard = cfg.guard;
    const auto ns = index_list(a.n_list.empty() ? "1,2,3,4,5,6,7,8" : a.n_list);
    const ScanResult res = pseudo_amenability_scan(*G, ns, parse_family(a.family), q, o);
    if (cfg.format == "json" || cfg.format == "text") {
      json rows = json::array();
      for (const auto& r : res.rows)
        rows.push_back({{"n", r.n}, {"family", r.family}, {"best_ratio", io::number(r.best_ratio)},
                        {"bound", io::number(r.bound)}});
      out.emit({{"rows", rows},
                {"fitted_exponent", io::number(res.fitted_exponent)},
                {"method", "exact_enumeration"},
                {"gap", 0.0}});
    } else {
      std::string csv = "n,family,best_ratio,bound\n";
      for (const auto& r : res.rows)
        csv += std::to_string(r.n) + "," + r.family + "," + fmt(r.best_ratio) + "," + fmt(r.bound) + "\n";
      out.write(csv);
    }
    return 0;
  }
  if (what == "obstruct") {
    const auto mean = io::mean_from(*G, a.mean.empty() ? "ball:1" : a.mean);
    if (G->kind() == GroupKind::free) {
      const FreeGroupObstruction o = freegroup_obstruction(mean, q, a.n);
      json j = io::to_json(o.value);
      j["piece"] = G->to_string(o.piece);
      j["translator"] = G->to_string(o.translator);
      j["piece_mass"] = io::number(o.piece_mass);
      j["bound"] = io::number(o.bound);
      j["disjoint"] = o.disjoint;
      j["holds"] = o.holds;
      out.emit(j);
      return o.holds ? 0 : 1;
    }
    if (G->kind() == GroupKind::lattice) {
      require_pq(p, q);
      const CompactnessObstruction o = compactness_obstruction(*G, mean, p, q, static_cast<std::size_t>(a.n));
      json j = io::to_json(o.value);
      j["translates"] = io::to_json(*G, o.translates);
      j["c"] = io::number(o.c);
      j["bound"] = io::number(o.bound);
      j["holds"] = o.holds;
      out.emit(j);
      return o.holds ? 0 : 1;
    }
    throw io::InputError("obstructions apply to free groups and lattices");
  }
  throw io::InputError("unknown amen task '" + what + "'");
}

json matrix_rows(const MatrixXd& m) {
  json j = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(io::number(m(i, k)));
    j.push_back(row);
  }
  return j;
}

int cmd_module(const std::string& what, const Args& a, const RunConfig& cfg, const Output& out) {
  if (what == "verify") {
    const auto G = io::group_from(a.group);
    const Exponent p = Exponent::parse(a.p);
    const double tol = cfg.tol < 1e-9 ? cfg.tol : 1e-12;
    const ModuleVerifyReport rep = module_verify(G, p, cfg.seed, a.samples, tol);
    json res = json::object();
    double worst = 0.0;
    for (const auto& [name, v] : rep.residuals) {
      res[name] = io::number(v);
      worst = std::max(worst, v);
    }
    out.emit({{"group", G->describe()},
              {"p", p.to_string()},
              {"residuals", res},
              {"max_residual", io::number(worst)},
              {"norm_lower", io::number(rep.norm_lower)},
              {"norm_upper", io::number(rep.norm_upper)},
              {"gap", io::number(rep.norm_upper - rep.norm_lower)},
              {"mean_constant", io::number(rep.mean_constant)},
              {"inequalities_hold", rep.inequalities_hold},
              {"method", "exact_enumeration"},
              {"ok", rep.ok}});
    return rep.ok ? 0 : 1;
  }
  if (what == "demo") {
    const auto Z3 = std::make_shared<const GroupModel>(GroupModel::cyclic(3));
    const Exponent p = Exponent::parse(a.p == "1" ? "2" : a.p);
    const VectorXd x = (VectorXd(3) << 1.0, 2.0, -1.0).finished();
    const auto R = retraction_from_mean(Z3, uniform_mean(Z3->elements()), p);
    const ModuleMatrix U = Pi(Z3, x, p);
    const VectorXd back = R.apply(PiTilde(Z3, x, p));
    json b = json::array();
    for (Index i = 0; i < back.size(); ++i) b.push_back(io::number(back(i)));
    out.emit({{"group", "cyclic(3)"},
              {"x", {1.0, 2.0, -1.0}},
              {"Pi_x", matrix_rows(U.U)},
              {"PiTilde_x", matrix_rows(PiTilde(Z3, x, p).U)},
              {"Q_Pi_x", matrix_rows(Q_map(U).U)},
              {"R_PiTilde_x", b},
              {"norm_lower", io::number(R.norm_lower)},
              {"norm_upper", io::number(R.norm_upper)},
              {"gap", io::number(R.norm_upper - R.norm_lower)},
              {"method", "closed_form"}});
    return 0;
  }
  throw io::InputError("unknown module task '" + what + "'");
}

// ---------------------------------------------------------------------------

std::vector<double> number_list(const json& j) {
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& e : j) v.push_back(e.is_string() ? Exponent::parse(e.get<std::string>()).value() : e.get<double>());
    return v;
  }
  return {j.is_string() ? Exponent::parse(j.get<std::string>()).value() : j.get<double>()};
}

Exponent exp_of(double v) { return std::isinf(v) ? Exponent::infinity() : Exponent(v); }

int cmd_sweep(const Args& a, const RunConfig& cfg, const Output& out) {
  const json spec = io::read_json_file(a.spec);
  const std::string task = spec.at("task").get<std::string>();
  std::string csv = "task,n,p,q,value,upper_bound,gap,bound,method,runtime_s\n";
  auto row = [&](Index n, double p, double q, double value, double upper, double bound, const std::string& method,
                 double secs) {
    char rt[32];
    std::snprintf(rt, sizeof rt, "%.6f", secs);
    csv += task + "," + std::to_string(n) + "," + fmt(p) + "," + fmt(q) + "," + fmt(value) + "," + fmt(upper) + "," +
           fmt(upper - value) + "," + fmt(bound) + "," + method + "," + rt + "\n";
  };
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };

  if (task == "folner_scan") {
    const auto G = io::group_from(spec.at("group").is_string() ? spec.at("group").get<std::string>()
                                                               : spec.at("group").dump());
    const FolnerFamily fam = parse_family(spec.value("family", "balls"));
    const double q = number_list(spec.value("q", json(1.0))).front();
    FolnerSearchOptions o;
    o.max_radius = spec.value("max_radius", o.max_radius);
    o.max_size = spec.value("max_size", o.max_size);
    o.guard = cfg.guard;
    for (const auto n : spec.value("n", std::vector<Index>{})) {
      const auto t0 = clock::now();
      const FolnerReport r = folner_search(*G, ball_prefix(*G, static_cast<std::size_t>(n)), fam, o);
      row(n, NAN, q, r.ratio, r.ratio, std::pow(static_cast<double>(n), 1.0 - 1.0 / q), "exact_enumeration",
          seconds(t0));
    }
  } else if (task == "invariance") {
    const auto G = io::group_from(spec.at("group").is_string() ? spec.at("group").get<std::string>()
                                                               : spec.at("group").dump());
    const auto mean = io::mean_from(*G, spec.at("mean").get<std::string>());
    const auto F = io::elements_from(*G, spec.at("F").get<std::string>());
    const auto n = static_cast<Index>(F.size());
    for (double p : number_list(spec.value("p", json(1.0))))
      for (double q : number_list(spec.value("q", json::array()))) {
        if (p > q) continue;
        const auto t0 = clock::now();
        const NormResult r = invariance_constant(*G, mean, F, exp_of(p), exp_of(q));
        row(n, p, q, r.value, r.upper_bound, std::pow(static_cast<double>(n), 1.0 / q), to_string(r.method),
            seconds(t0));
      }
  } else if (task == "norm") {
    const json& in = spec.at("input");
    const MultiVector x = io::multivector_from(in.is_string() ? io::read_json_file(in.get<std::string>()) : in);
    const std::string kind = spec.value("kind", "weak");
    const Exponent r = spec.contains("r") ? io::exponent_from(spec.at("r")) : Exponent::one();
    for (double p : number_list(spec.value("p", json(1.0))))
      for (double q : number_list(spec.value("q", json::array()))) {
        if (kind != "dual" && p > q) continue;
        const auto t0 = clock::now();
        NormResult res;
        if (kind == "weak") res = weak_pq(x, exp_of(p), exp_of(q), r);
        else if (kind == "standard") res = standard_pq(x, exp_of(p), exp_of(q));
        else if (kind == "dual") res = dual_multinorm_upper(x, exp_of(p), exp_of(q), r);
        else throw io::InputError("sweep kind must be weak, standard or dual");
        row(x.n(), p, q, res.value, res.upper_bound, NAN, to_string(res.method), seconds(t0));
      }
  } else {
    throw io::InputError("unknown sweep task '" + task + "'");
  }
  out.write(csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-norms, amenability constants and group-module checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  Args a;
  app.add_option("--seed", cfg.seed, "Root seed")->capture_default_str();
  app.add_option("--guard", cfg.guard, "Size guard for searches")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Tolerance for checked inequalities")->capture_default_str();
  app.add_option("--format", cfg.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write the report here instead of stdout");

  std::function<int()> action;
  const Output out(cfg);

  auto pq = [&](CLI::App* c) {
    c->add_option("--p", a.p, "Exponent p (number or inf)")->capture_default_str();
    c->add_option("--q", a.q, "Exponent q")->capture_default_str();
  };

  auto* norm = app.add_subcommand("norm", "Multi-norm of a vector tuple");
  norm->add_option("--input", a.input, "Vector document (JSON)")->required();
  norm->add_option("--kind", a.kind, "weak, standard, max or dual")
      ->check(CLI::IsMember({"weak", "standard", "max", "dual"}));
  pq(norm);
  norm->add_option("--r", a.r, "Exponent of the underlying L^r space")->capture_default_str();
  norm->add_option("--mode", a.mode, "exact, greedy or local_search")
      ->check(CLI::IsMember({"exact", "greedy", "local_search"}));
  norm->callback([&] { action = [&] { return cmd_norm(a, cfg, out); }; });

  auto* mu_cmd = app.add_subcommand("mu", "Weak p-summing norm");
  mu_cmd->add_option("--input", a.input, "Vector document (JSON)")->required();
  mu_cmd->add_option("--p", a.p, "Exponent p")->capture_default_str();
  mu_cmd->add_option("--r", a.r, "Exponent of the underlying L^r space")->capture_default_str();
  mu_cmd->callback([&] { action = [&] { return cmd_mu(a, cfg, out); }; });

  auto* mb = app.add_subcommand("mbnorm", "Multi-bounded norm of a matrix operator");
  mb->add_option("--input", a.input, "Matrix document (JSON)")->required();
  pq(mb);
  mb->add_option("--r", a.r, "Domain exponent")->capture_default_str();
  mb->add_option("--s", a.s, "Codomain exponent (default: r)");
  mb->add_option("--n", a.n, "Largest amplification k")->capture_default_str();
  mb->callback([&] { action = [&] { return cmd_mbnorm(a, cfg, out); }; });

  auto* check = app.add_subcommand("check", "Randomized checks: axioms, ordering, duality");
  std::string check_what;
  check->add_option("what", check_what, "axioms, ordering or duality")
      ->required()
      ->check(CLI::IsMember({"axioms", "ordering", "duality"}));
  check->add_option("--engine", a.engine, "weak, standard, max or dual")
      ->check(CLI::IsMember({"weak", "standard", "max", "dual"}));
  pq(check);
  check->add_option("--r", a.r, "Exponent of the underlying space")->capture_default_str();
  check->add_option("--n", a.n, "Tuple length")->capture_default_str();
  check->add_option("--samples", a.samples, "Number of random instances")->capture_default_str();
  check->add_option("--mode", a.mode, "Partition route for standard engines");
  check->callback([&] { action = [&] { return cmd_check(check_what, a, cfg, out); }; });

  auto folner_opts = [&](CLI::App* c) {
    c->add_option("--group", a.group, "Group spec (JSON, file, or z3, s3, f2, lattice1)")->required();
    c->add_option("--F", a.F, "Elements of F, comma-separated")->required();
    c->add_option("--family", a.family, "balls, rectangles or connected")->capture_default_str();
    c->add_option("--radius", a.radius, "Largest ball radius")->capture_default_str();
    c->add_option("--max-size", a.max_size, "Largest connected subset")->capture_default_str();
    c->add_option("--C", a.C, "Check ratio <= C |F|^(1-1/q)")->each([&](const std::string&) { a.C_given = true; });
    c->add_option("--q", a.q, "Exponent for the bound check")->capture_default_str();
  };
  auto* folner = app.add_subcommand("folner", "Folner ratio |FS|/|S|, or a search when S is omitted");
  folner_opts(folner);
  folner->add_option("--S", a.S, "Elements of S, comma-separated");
  folner->callback([&] { action = [&] { return cmd_folner(a, cfg, out); }; });

  auto* amen = app.add_subcommand("amen", "Amenability: folner, constant, scan, obstruct");
  std::string amen_what;
  amen->add_option("what", amen_what, "folner, constant, scan or obstruct")
      ->required()
      ->check(CLI::IsMember({"folner", "constant", "scan", "obstruct"}));
  amen->add_option("--group", a.group, "Group spec")->required();
  amen->add_option("--F", a.F, "Translating elements, comma-separated");
  amen->add_option("--mean", a.mean, "ball:R, set:x,y or x=w,y=w");
  amen->add_option("--p", a.p, "Exponent p")->capture_default_str();
  amen->add_option("--q", a.q, "Exponent q")->capture_default_str();
  amen->add_option("--n", a.n, "Number of translates (obstruct)")->capture_default_str();
  amen->add_option("--n-values", a.n_list, "Sizes for scan, e.g. 1,2,4,8");
  amen->add_option("--family", a.family, "Følner family")->capture_default_str();
  amen->add_option("--radius", a.radius, "Largest ball radius")->capture_default_str();
  amen->add_option("--max-size", a.max_size, "Largest connected subset")->capture_default_str();
  amen->callback([&] {
    if (amen_what == "folner" && a.F.empty()) throw CLI::RequiredError("--F");
    if (amen_what == "constant" && a.F.empty()) throw CLI::RequiredError("--F");
    action = [&] { return cmd_amen(amen_what, a, cfg, out); };
  });

  auto* module = app.add_subcommand("module", "Group-module identities: verify, demo");
  std::string module_what;
  module->add_option("what", module_what, "verify or demo")->required()->check(CLI::IsMember({"verify", "demo"}));
  module->add_option("--group", a.group, "Finite group spec");
  module->add_option("--p", a.p, "Exponent p")->capture_default_str();
  module->add_option("--samples", a.samples, "Random samples")->capture_default_str();
  module->callback([&] {
    if (module_what == "verify" && a.group.empty()) throw CLI::RequiredError("--group");
    action = [&] { return cmd_module(module_what, a, cfg, out); };
  });

  auto* sweep = app.add_subcommand("sweep", "Parameter grid to CSV");
  sweep->add_option("--spec", a.spec, "Sweep spec (JSON)")->required();
  sweep->callback([&] { action = [&] { return cmd_sweep(a, cfg, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
