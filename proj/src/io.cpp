#include "optuple/io.hpp"

#include <sstream>

namespace optuple::io {

namespace {

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key, "missing required field");
  return *it;
}

int parse_dim(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ParseError(path, "dim must be a positive integer");
  return j.get<int>();
}

Exponent parse_exponent(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::infinity();
    throw ParseError(path, "exponent must be a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw ParseError(path, "exponent must be a number >= 1 or \"inf\"");
  const double v = j.get<double>();
  if (!(v >= 1.0)) throw ParseError(path, "exponent must satisfy p >= 1");
  return Exponent::from_value(v);
}

Field parse_field(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "real") return Field::real;
    if (s == "complex") return Field::cplx;
  }
  throw ParseError(path, "field must be \"real\" or \"complex\"");
}

cx parse_entry(const json& j, Field field, const std::string& path) {
  if (field == Field::real) {
    if (!j.is_number()) throw ParseError(path, "real matrix entry must be a number");
    return cx(j.get<double>(), 0.0);
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(path, "complex matrix entry must be a [re, im] pair");
  return cx(j[0].get<double>(), j[1].get<double>());
}

Operator parse_component(const json& j, const LpSpace& domain, Field field,
                         const std::string& path) {
  const json& jc = need(j, "codomain", path);
  const LpSpace codomain(parse_dim(need(jc, "dim", path + "/codomain"), path + "/codomain/dim"),
                         parse_exponent(need(jc, "p", path + "/codomain"), path + "/codomain/p"),
                         field);
  const json& jm = need(j, "matrix", path);
  if (!jm.is_array() || static_cast<int>(jm.size()) != codomain.dim)
    throw ParseError(path + "/matrix", "expected " + std::to_string(codomain.dim) + " rows");
  std::vector<cx> entries;
  for (int r = 0; r < codomain.dim; ++r) {
    const json& row = jm[static_cast<size_t>(r)];
    const std::string rpath = path + "/matrix/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != domain.dim)
      throw ParseError(rpath, "expected " + std::to_string(domain.dim) + " entries");
    for (int c = 0; c < domain.dim; ++c)
      entries.push_back(parse_entry(row[static_cast<size_t>(c)], field,
                                    rpath + "/" + std::to_string(c)));
  }
  return Operator(domain, codomain, std::move(entries));
}

OperatorTuple parse_tuple(const json& j, const LpSpace& domain, Exponent outer_p,
                          Field field, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ParseError(path, "expected a non-empty array of components");
  std::vector<Operator> comps;
  for (size_t i = 0; i < j.size(); ++i)
    comps.push_back(parse_component(j[i], domain, field, path + "/" + std::to_string(i)));
  return OperatorTuple(std::move(comps), outer_p);
}

json exponent_to_json(const Exponent& p) {
  if (p.is_infinite()) return json("inf");
  return json(p.value());
}

json entry_to_json(cx z, Field field) {
  if (field == Field::real) return json(z.real());
  return json::array({z.real(), z.imag()});
}

}  // namespace

Instance parse_instance(const json& doc) {
  const std::string root;
  const Field field = parse_field(need(doc, "field", root), "/field");
  const json& jd = need(doc, "domain", root);
  const LpSpace domain(parse_dim(need(jd, "dim", "/domain"), "/domain/dim"),
                       parse_exponent(need(jd, "p", "/domain"), "/domain/p"), field);
  const Exponent outer = parse_exponent(need(doc, "outer_p", root), "/outer_p");

  OperatorTuple T = parse_tuple(need(doc, "T", root), domain, outer, field, "/T");
  OperatorTuple S = doc.contains("S")
                        ? parse_tuple(doc["S"], domain, outer, field, "/S")
                        : [&] {
                            std::vector<Operator> zs;
                            for (const Operator& t : T.components())
                              zs.push_back(Operator::zeros(t.domain(), t.codomain()));
                            return OperatorTuple(std::move(zs), outer);
                          }();
  if (S.size() != T.size()) throw ParseError("/S", "S must have as many components as T");
  for (int i = 0; i < T.size(); ++i)
    if (S.component(i).codomain() != T.component(i).codomain())
      throw ParseError("/S/" + std::to_string(i) + "/codomain",
                       "codomain disagrees with the matching T component");

  Instance inst{std::move(T), std::move(S), "file", 0, {}, false};
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      throw ParseError("/seed", "seed must be an integer");
    inst.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("meta")) {
    const json& jm = doc["meta"];
    if (!jm.is_object()) throw ParseError("/meta", "meta must be an object of strings");
    for (auto it = jm.begin(); it != jm.end(); ++it) {
      if (!it.value().is_string())
        throw ParseError("/meta/" + it.key(), "meta values must be strings");
      inst.meta[it.key()] = it.value().get<std::string>();
    }
    if (inst.meta.count("generator")) inst.generator = inst.meta["generator"];
  }
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("/", "not valid JSON");
  return parse_instance(doc);
}

json instance_to_json(const Instance& inst) {
  const Field field = inst.T.domain().field;
  json doc;
  doc["field"] = field == Field::real ? "real" : "complex";
  doc["domain"] = {{"dim", inst.T.domain().dim},
                   {"p", exponent_to_json(inst.T.domain().p)}};
  doc["outer_p"] = exponent_to_json(inst.T.outer_p());
  auto tuple_json = [&](const OperatorTuple& t) {
    json arr = json::array();
    for (const Operator& c : t.components()) {
      json rows = json::array();
      for (int r = 0; r < c.rows(); ++r) {
        json row = json::array();
        for (int col = 0; col < c.cols(); ++col)
          row.push_back(entry_to_json(c.at(r, col), field));
        rows.push_back(std::move(row));
      }
      arr.push_back(json{{"codomain",
                          {{"dim", c.codomain().dim}, {"p", exponent_to_json(c.codomain().p)}}},
                         {"matrix", std::move(rows)}});
    }
    return arr;
  };
  doc["T"] = tuple_json(inst.T);
  doc["S"] = tuple_json(inst.S);
  doc["seed"] = inst.seed;
  json meta = json::object();
  meta["generator"] = inst.generator;
  for (const auto& [k, v] : inst.meta) meta[k] = v;
  doc["meta"] = std::move(meta);
  return doc;
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (int i = 0; i < v.dim(); ++i) arr.push_back(entry_to_json(v[i], v.field()));
  return arr;
}

json to_json(const NormResult& r) {
  json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["residual"] = r.residual;
  j["starts_used"] = r.starts_used;
  j["converged_near_best"] = r.converged_near_best;
  j["exhaustive"] = r.exhaustive;
  json ws = json::array();
  for (const Vector& w : r.witnesses) ws.push_back(to_json(w));
  j["witnesses"] = std::move(ws);
  return j;
}

json to_json(const AttainmentSet& s) {
  json j;
  j["complete_flag"] = s.complete_flag;
  json reps = json::array();
  for (const Vector& w : s.representatives) reps.push_back(to_json(w));
  j["representatives"] = std::move(reps);
  return j;
}

json to_json(const DistanceResult& r) {
  json j;
  j["value"] = r.value;
  json z = json::array();
  const bool real = r.inner_norm.witnesses.empty()
                        ? true
                        : r.inner_norm.witnesses.front().field() == Field::real;
  for (const cx& v : r.minimizer_z.z)
    z.push_back(real ? json(v.real()) : json::array({v.real(), v.imag()}));
  j["minimizer_z"] = std::move(z);
  j["inner_norm"] = to_json(r.inner_norm);
  j["convexity_gap"] = r.convexity_gap;
  j["evaluations"] = r.evaluations;
  return j;
}

json to_json(const SingerCertificate& c) {
  json j;
  j["h"] = c.h;
  j["residual_value"] = c.residual_value;
  j["worst_norming_slack"] = c.worst_norming_slack;
  j["worst_annihilation"] = c.worst_annihilation;
  json entries = json::array();
  for (const auto& e : c.entries) {
    json f = json::array();
    for (const Vector& comp : e.f.comps) f.push_back(to_json(comp));
    entries.push_back(json{{"x", to_json(e.x)}, {"f", std::move(f)}, {"t", e.t}});
  }
  j["entries"] = std::move(entries);
  return j;
}

json to_json(const BJDecision& d) {
  json j;
  j["orthogonal"] = d.orthogonal;
  j["margin"] = d.margin;
  j["norm"] = to_json(d.norm);
  j["distance"] = to_json(d.distance);
  if (d.certificate) j["certificate"] = to_json(*d.certificate);
  return j;
}

json to_json(const GateauxPair& g) {
  json j;
  j["rho_minus"] = g.rho_minus;
  j["rho_plus"] = g.rho_plus;
  j["method"] = to_string(g.method);
  j["error_bound"] = g.error_bound;
  if (g.cross_checked) j["cross_check_disagreement"] = g.cross_check_disagreement;
  if (!g.participants.empty()) j["participants"] = g.participants;
  json trace = json::array();
  for (const auto& [t, q] : g.quotient_trace) trace.push_back(json::array({t, q}));
  j["quotient_trace"] = std::move(trace);
  return j;
}

json to_json(const SmoothnessReport& r) {
  json j;
  j["smooth"] = r.smooth;
  j["attainment_orbits"] = r.attainment_orbits;
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.codomain_point_smooth) j["codomain_point_smooth"] = *r.codomain_point_smooth;
  if (!r.caveat.empty()) j["caveat"] = r.caveat;
  return j;
}

json to_json(const JointAttainment& a) {
  json j;
  j["nonempty"] = a.nonempty;
  j["margin"] = a.margin;
  j["witness"] = to_json(a.witness);
  j["component_norms"] = a.component_norms;
  return j;
}

json to_json(const CheckReport& r) {
  json j;
  j["theorem"] = r.theorem;
  json hyps = json::array();
  for (const Hypothesis& h : r.hypotheses)
    hyps.push_back(json{{"name", h.name}, {"satisfied", h.satisfied}, {"margin", h.margin}});
  j["hypotheses"] = std::move(hyps);
  j["vacuous"] = r.vacuous;
  j["conclusion"] = {{"holds", r.conclusion.holds}, {"lhs", r.conclusion.lhs},
                     {"rhs", r.conclusion.rhs},     {"gap", r.conclusion.gap},
                     {"tolerance", r.conclusion.tolerance}};
  j["status"] = r.violated() ? "violated" : (r.vacuous ? "vacuous" : "holds");
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const SuiteSummary& s) {
  json j;
  j["holds"] = s.holds;
  j["vacuous"] = s.vacuous;
  j["violated"] = s.violated;
  json reports = json::array();
  for (const CheckReport& r : s.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

namespace {

void render(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!it.value().is_structured()) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured()) {
        out << prefix << it.key() << ":\n";
        render(it.value(), prefix + "  ", out);
      } else {
        out << prefix << it.key() << std::string(width - it.key().size(), ' ') << " = "
            << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = true;
    for (const json& e : j)
      if (e.is_structured()) flat = false;
    if (flat) {
      out << prefix << j.dump() << "\n";
      return;
    }
    int idx = 0;
    for (const json& e : j) {
      out << prefix << "[" << idx++ << "]\n";
      render(e, prefix + "  ", out);
    }
  } else {
    out << prefix << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream out;
  render(doc, "", out);
  return out.str();
}

}  // namespace optuple::io
