#include "persres/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace persres {

namespace {

const Field kRationals = Field::rationals();

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "none";
}

}  // namespace

json grade_to_json(const Grade& g) {
  json arr = json::array();
  for (const auto& c : g.coords) arr.push_back(kRationals.format(c));
  return arr;
}

Grade grade_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("grade: expected an array of rationals");
  Vec coords;
  for (const auto& c : j) coords.push_back(kRationals.parse(c.get<std::string>()));
  return Grade(std::move(coords));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Field f, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw std::invalid_argument("matrix: row count mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix: column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, f.parse(j[i][c].get<std::string>()));
  }
  return m;
}

json presentation_to_json(const Presentation& p) {
  json j;
  j["n"] = p.ambient_dim();
  json gens = json::array();
  for (const auto& g : p.generators().gens) gens.push_back(grade_to_json(g));
  j["generators"] = std::move(gens);
  json rels = json::array();
  for (std::size_t r = 0; r < p.relations().rank(); ++r) {
    json rel;
    rel["grade"] = grade_to_json(p.relations().gens[r]);
    json coeffs = json::array();
    for (std::size_t g = 0; g < p.generators().rank(); ++g)
      coeffs.push_back(p.field().format(p.rel.entries.at(g, r)));
    rel["coeffs"] = std::move(coeffs);
    rels.push_back(std::move(rel));
  }
  j["relations"] = std::move(rels);
  return j;
}

Presentation presentation_from_json(const json& j, Field f) {
  if (!j.contains("n") || !j.contains("generators"))
    throw std::invalid_argument("presentation: missing n or generators");
  std::size_t n = j.at("n").get<std::size_t>();
  if (n == 0) throw std::invalid_argument("presentation: n must be >= 1");
  std::vector<Grade> gens;
  for (const auto& g : j.at("generators")) {
    Grade grade = grade_from_json(g);
    if (grade.dim() != n) throw std::invalid_argument("presentation: generator dimension mismatch");
    gens.push_back(std::move(grade));
  }
  FreeModule gmod(n, std::move(gens));
  std::vector<Grade> rel_grades;
  std::vector<Vec> rel_cols;
  if (j.contains("relations")) {
    for (const auto& rel : j.at("relations")) {
      Grade grade = grade_from_json(rel.at("grade"));
      if (grade.dim() != n) throw std::invalid_argument("presentation: relation dimension mismatch");
      const auto& coeffs = rel.at("coeffs");
      if (!coeffs.is_array() || coeffs.size() != gmod.rank())
        throw std::invalid_argument("presentation: coeffs indexed by generator order");
      Vec col;
      for (const auto& c : coeffs) col.push_back(f.parse(c.get<std::string>()));
      rel_grades.push_back(std::move(grade));
      rel_cols.push_back(std::move(col));
    }
  }
  FreeModule rmod(n, std::move(rel_grades));
  return Presentation(GradedMatrix(rmod, gmod, Matrix::from_cols(f, gmod.rank(), rel_cols)));
}

json complex_to_json(const FreeChainComplex& x) {
  json j;
  j["n"] = x.ambient_dim;
  json terms = json::object();
  for (const auto& [deg, m] : x.terms) {
    json grades = json::array();
    for (const auto& g : m.gens) grades.push_back(grade_to_json(g));
    terms[std::to_string(deg)] = std::move(grades);
  }
  j["terms"] = std::move(terms);
  json diffs = json::object();
  for (const auto& [deg, d] : x.diffs) diffs[std::to_string(deg)] = matrix_to_json(d.entries);
  j["differentials"] = std::move(diffs);
  return j;
}

FreeChainComplex complex_from_json(const json& j, Field f) {
  if (!j.contains("n") || !j.contains("terms"))
    throw std::invalid_argument("complex: missing n or terms");
  std::size_t n = j.at("n").get<std::size_t>();
  FreeChainComplex x(n, f);
  if (j.contains("terms"))
    for (const auto& [key, grades] : j.at("terms").items()) {
      int deg = std::stoi(key);
      std::vector<Grade> gens;
      for (const auto& g : grades) {
        Grade grade = grade_from_json(g);
        if (grade.dim() != n) throw std::invalid_argument("complex: grade dimension mismatch");
        gens.push_back(std::move(grade));
      }
      x.set_term(deg, FreeModule(n, std::move(gens)));
    }
  if (j.contains("differentials"))
    for (const auto& [key, rows] : j.at("differentials").items()) {
      int deg = std::stoi(key);
      Matrix m = matrix_from_json(rows, f, x.term(deg + 1).rank(), x.term(deg).rank());
      x.set_diff(deg, GradedMatrix(x.term(deg), x.term(deg + 1), std::move(m)));
    }
  return x;
}

json bifiltration_to_json(const Bifiltration& k) {
  json arr = json::array();
  for (const auto& s : k.simplices) {
    json simplex;
    simplex["vertices"] = s.vertices;
    simplex["grade"] = grade_to_json(s.grade);
    arr.push_back(std::move(simplex));
  }
  return json{{"simplices", std::move(arr)}};
}

Bifiltration bifiltration_from_json(const json& j) {
  Bifiltration k;
  for (const auto& s : j.at("simplices")) {
    Simplex simplex;
    simplex.vertices = s.at("vertices").get<std::vector<int>>();
    simplex.grade = grade_from_json(s.at("grade"));
    k.simplices.push_back(std::move(simplex));
  }
  k.canonicalize_and_validate();
  return k;
}

std::string grade_to_display(const Grade& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (i) out += ",";
    out += kRationals.format(g.coords[i]);
  }
  out += ")";
  return out;
}

json betti_to_json(const std::map<Grade, std::size_t, GradeLess>& table) {
  json arr = json::array();
  for (const auto& [g, count] : table)
    arr.push_back(json{{"grade", grade_to_json(g)}, {"count", count}});
  return arr;
}

std::string betti_to_csv(const std::map<Grade, std::size_t, GradeLess>& table) {
  std::ostringstream out;
  out << "grade,count\n";
  for (const auto& [g, count] : table) out << "\"" << grade_to_display(g) << "\"," << count << "\n";
  return out.str();
}

namespace {

json chain_map_comps_to_json(const ChainMap& f) {
  json comps = json::object();
  for (const auto& [deg, m] : f.comps) comps[std::to_string(deg)] = matrix_to_json(m.entries);
  return comps;
}

json homotopy_to_json(const Homotopy& h) {
  json comps = json::object();
  for (const auto& [deg, m] : h.comps) comps[std::to_string(deg)] = matrix_to_json(m.entries);
  return comps;
}

ChainMap chain_map_from_json(const json& comps, const FreeChainComplex& src,
                             const FreeChainComplex& tgt) {
  ChainMap f(src, tgt);
  for (const auto& [key, rows] : comps.items()) {
    int deg = std::stoi(key);
    Matrix m = matrix_from_json(rows, src.field, tgt.term(deg).rank(), src.term(deg).rank());
    if (!m.is_zero()) f.comps.insert_or_assign(deg, GradedMatrix(src.term(deg), tgt.term(deg), std::move(m)));
  }
  return f;
}

Homotopy homotopy_from_json(const json& comps, const FreeChainComplex& src,
                            const FreeChainComplex& tgt) {
  Homotopy h;
  for (const auto& [key, rows] : comps.items()) {
    int deg = std::stoi(key);
    Matrix m = matrix_from_json(rows, src.field, tgt.term(deg - 1).rank(), src.term(deg).rank());
    if (!m.is_zero())
      h.comps.insert_or_assign(deg, GradedMatrix(src.term(deg), tgt.term(deg - 1), std::move(m)));
  }
  return h;
}

json fp_morphism_images_to_json(const FPMorphism& f) {
  json arr = json::array();
  for (const auto& img : f.gen_images) {
    json v = json::array();
    for (const auto& c : img) v.push_back(f.field().format(c));
    arr.push_back(std::move(v));
  }
  return arr;
}

std::vector<Vec> fp_images_from_json(const json& arr, Field f) {
  std::vector<Vec> images;
  for (const auto& row : arr) {
    Vec v;
    for (const auto& c : row) v.push_back(f.parse(c.get<std::string>()));
    images.push_back(std::move(v));
  }
  return images;
}

}  // namespace

json certificate_to_json(const InterleavingCertificate& cert) {
  json j;
  j["level"] = level_name(cert.level);
  j["epsilon"] = kRationals.format(cert.epsilon);
  j["field"] = cert.field.name();
  if (cert.forward) j["forward"] = fp_morphism_images_to_json(*cert.forward);
  if (cert.backward) j["backward"] = fp_morphism_images_to_json(*cert.backward);
  if (cert.chain_forward) j["chain_forward"] = chain_map_comps_to_json(*cert.chain_forward);
  if (cert.chain_backward) j["chain_backward"] = chain_map_comps_to_json(*cert.chain_backward);
  if (cert.homotopy_forward) j["homotopy_forward"] = homotopy_to_json(*cert.homotopy_forward);
  if (cert.homotopy_backward) j["homotopy_backward"] = homotopy_to_json(*cert.homotopy_backward);
  return j;
}

bool reverify_certificate(const json& j, const Presentation& m_in, const Presentation& n_in) {
  Field f = Field::parse_name(j.at("field").get<std::string>());
  mpq_class eps = kRationals.parse(j.at("epsilon").get<std::string>());
  Level level = parse_level(j.at("level").get<std::string>());
  Presentation m = m_in.to_field(f);
  Presentation n = n_in.to_field(f);

  if (level == Level::module) {
    FPMorphism fwd(m, n.shifted(eps), fp_images_from_json(j.at("forward"), f));
    FPMorphism bwd(n, m.shifted(eps), fp_images_from_json(j.at("backward"), f));
    return verify_module_interleaving(fwd, bwd, eps);
  }
  FreeChainComplex px = minimal_free_resolution(m);
  FreeChainComplex py = minimal_free_resolution(n);
  ChainMap phi = chain_map_from_json(j.at("chain_forward"), px, py.shifted(eps));
  ChainMap psi = chain_map_from_json(j.at("chain_backward"), py, px.shifted(eps));
  auto witnesses = level == Level::derived ? derived_interleaving_verify(phi, psi, eps)
                                           : verify_homotopy_interleaving(phi, psi, eps);
  if (!witnesses) return false;
  // When the certificate carries explicit homotopies, re-check them exactly.
  mpq_class two_eps = 2 * eps;
  if (j.contains("homotopy_forward")) {
    Homotopy h = homotopy_from_json(j.at("homotopy_forward"), px, px.shifted(two_eps));
    ChainMap delta = sub(compose(psi.shifted(eps), phi), smoothing_chain_map(px, two_eps));
    if (!homotopy_witnesses(delta, h)) return false;
  }
  if (j.contains("homotopy_backward")) {
    Homotopy h = homotopy_from_json(j.at("homotopy_backward"), py, py.shifted(two_eps));
    ChainMap delta = sub(compose(phi.shifted(eps), psi), smoothing_chain_map(py, two_eps));
    if (!homotopy_witnesses(delta, h)) return false;
  }
  return true;
}

json bracket_to_json(const DistanceBracket& b) {
  json j;
  j["level"] = level_name(b.level);
  j["field"] = b.field.name();
  j["lower"] = kRationals.format(b.lower);
  if (b.upper)
    j["upper"] = kRationals.format(*b.upper);
  else
    j["upper"] = nullptr;
  json ev = json::array();
  for (const auto& e : b.evidence)
    ev.push_back(json{{"epsilon", kRationals.format(e.epsilon)}, {"kind", e.kind}, {"detail", e.detail}});
  j["evidence"] = std::move(ev);
  if (b.witness) j["witness"] = certificate_to_json(*b.witness);
  return j;
}

std::string bracket_to_display(const DistanceBracket& b) {
  std::string out = "[" + kRationals.format(b.lower) + ", ";
  out += b.upper ? kRationals.format(*b.upper) : std::string("inf");
  out += "]";
  return out;
}

json search_result_to_json(const SearchResult& r) {
  json j;
  j["status"] = status_name(r.status);
  j["candidates_tried"] = r.candidates_tried;
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j;
}

json isometry_report_to_json(const IsometryReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"epsilon", kRationals.format(row.epsilon)},
                        {"module", status_name(row.module_status)},
                        {"homotopy", status_name(row.homotopy_status)},
                        {"derived", status_name(row.derived_status)},
                        {"agree", row.agree}});
  return json{{"field", r.field.name()}, {"rows", std::move(rows)}, {"all_agree", r.all_agree}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace persres
