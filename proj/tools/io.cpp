#include "io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mnorm::io {

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    depth += (c == '(') - (c == ')');
    if (c == ';' || (c == ',' && depth == 0) || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int suffix_int(const std::string& s, std::size_t from) {
  if (from >= s.size()) throw InputError("missing size in group name '" + s + "'");
  std::size_t used = 0;
  const int v = std::stoi(s.substr(from), &used);
  if (from + used != s.size()) throw InputError("bad group name '" + s + "'");
  return v;
}

json matrix_json(const MatrixXd& m) {
  // Column-major: one array per column (tuple entry).
  json cols = json::array();
  for (Index j = 0; j < m.cols(); ++j) {
    json c = json::array();
    for (Index i = 0; i < m.rows(); ++i) c.push_back(number(m(i, j)));
    cols.push_back(std::move(c));
  }
  return cols;
}

json vector_json(const VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Exponent exponent_from(const json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number()) return Exponent(j.get<double>());
  throw InputError("exponent must be a number or \"inf\"");
}

SpacePtr space_from(const json& doc, Index m) {
  std::vector<std::string> points;
  VectorXd w = VectorXd::Ones(m);
  if (doc.contains("points")) {
    for (const auto& p : doc.at("points")) points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    if (static_cast<Index>(points.size()) != m) throw InputError("points and vectors differ in length");
  } else {
    for (Index k = 0; k < m; ++k) points.push_back(std::to_string(k));
  }
  if (doc.contains("weights")) {
    const auto ws = doc.at("weights").get<std::vector<double>>();
    if (static_cast<Index>(ws.size()) != m) throw InputError("weights and vectors differ in length");
    w = Eigen::Map<const VectorXd>(ws.data(), m);
  }
  return DiscreteSpace::make(std::move(points), std::move(w));
}

MultiVector multivector_from(const json& doc) {
  if (!doc.contains("vectors") || !doc.at("vectors").is_array() || doc.at("vectors").empty()) {
    throw InputError("document needs a non-empty \"vectors\" array");
  }
  const auto cols = doc.at("vectors").get<std::vector<std::vector<double>>>();
  const auto m = static_cast<Index>(cols.front().size());
  MatrixXd X(m, static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (static_cast<Index>(cols[i].size()) != m) throw InputError("vectors differ in length");
    X.col(static_cast<Index>(i)) = Eigen::Map<const VectorXd>(cols[i].data(), m);
  }
  return MultiVector(space_from(doc, m), std::move(X));
}

std::shared_ptr<const GroupModel> group_from(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "free") return std::make_shared<const GroupModel>(GroupModel::free(spec.at("rank").get<int>()));
  if (kind == "lattice") return std::make_shared<const GroupModel>(GroupModel::lattice(spec.at("dim").get<int>()));
  if (kind == "cyclic") return std::make_shared<const GroupModel>(GroupModel::cyclic(spec.at("n").get<int>()));
  if (kind == "symmetric") return std::make_shared<const GroupModel>(GroupModel::symmetric(spec.at("d").get<int>()));
  if (kind == "finite") {
    if (spec.contains("table_csv")) {
      return std::make_shared<const GroupModel>(parse_table_csv(spec.at("table_csv").get<std::string>()));
    }
    if (spec.contains("perm_gens")) {
      return std::make_shared<const GroupModel>(
          GroupModel::finite_from_perms(spec.at("perm_gens").get<std::vector<std::vector<int>>>()));
    }
    throw InputError("finite group spec needs table_csv or perm_gens");
  }
  throw InputError("unknown group kind '" + kind + "'");
}

std::shared_ptr<const GroupModel> group_from(const std::string& spec) {
  if (spec.empty()) throw InputError("empty group spec");
  if (spec.front() == '{') {
    try {
      return group_from(json::parse(spec));
    } catch (const json::exception& e) {
      throw InputError(std::string("group spec: ") + e.what());
    }
  }
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return group_from(read_json_file(spec));
  if (spec.rfind("lattice", 0) == 0) return std::make_shared<const GroupModel>(GroupModel::lattice(suffix_int(spec, 7)));
  switch (spec.front()) {
    case 'z':
    case 'Z':
      return std::make_shared<const GroupModel>(GroupModel::cyclic(suffix_int(spec, 1)));
    case 's':
    case 'S':
      return std::make_shared<const GroupModel>(GroupModel::symmetric(suffix_int(spec, 1)));
    case 'f':
    case 'F':
      return std::make_shared<const GroupModel>(GroupModel::free(suffix_int(spec, 1)));
    default:
      throw InputError("unknown group '" + spec + "'");
  }
}

std::vector<Element> elements_from(const GroupModel& G, const std::string& text) {
  std::vector<Element> out;
  for (const auto& s : split(text)) out.push_back(s == "e" ? G.identity() : G.parse(s));
  return out;
}

FiniteSupportVector mean_from(const GroupModel& G, const std::string& text) {
  if (text.rfind("ball:", 0) == 0) return uniform_mean(ball(G, std::stoi(text.substr(5))));
  if (text.rfind("set:", 0) == 0) return uniform_mean(make_set(elements_from(G, text.substr(4))));
  FiniteSupportVector a;
  for (const auto& item : split(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("mean entries look like x=0.5");
    const std::string name = item.substr(0, eq);
    a[name == "e" ? G.identity() : G.parse(name)] += std::stod(item.substr(eq + 1));
  }
  validate_mean(a);
  return a;
}

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const NormResult& r) {
  json j{{"value", number(r.value)},
         {"upper_bound", number(r.upper_bound)},
         {"gap", number(r.gap())},
         {"method", to_string(r.method)}};
  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          j["witness"] = nullptr;
        } else if constexpr (std::is_same_v<W, DualTuple>) {
          j["witness"] = {{"type", "dual_tuple"}, {"lambda", matrix_json(w.lambda.columns())}, {"mu", number(w.mu)}};
        } else if constexpr (std::is_same_v<W, Partition>) {
          j["witness"] = {{"type", "partition"}, {"block", w.block}};
        } else {
          json terms = json::array();
          for (const auto& t : w.terms)
            terms.push_back(
                {{"alpha", vector_json(t.alpha)}, {"y", matrix_json(t.y.columns())}, {"mu_upper", number(t.mu_upper)}});
          j["witness"] = {{"type", "decomposition"}, {"terms", std::move(terms)}};
        }
      },
      r.certificate);
  return j;
}

json to_json(const GroupModel& G, const FiniteSupportVector& f) {
  json j = json::object();
  for (const auto& [g, v] : f) j[G.to_string(g)] = number(v);
  return j;
}

json to_json(const GroupModel& G, const std::vector<Element>& s) {
  json j = json::array();
  for (const auto& g : s) j.push_back(G.to_string(g));
  return j;
}

std::string to_text(const json& j) {
  std::ostringstream out;
  auto flat = [&](const json& obj, const std::string& prefix) {
    for (const auto& [k, v] : obj.items()) out << prefix << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  };
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flat(j[i], "[" + std::to_string(i) + "].");
  } else {
    flat(j, "");
  }
  return out.str();
}

}  // namespace mnorm::io
