#include "ample/models/serialization.hpp"

#include <fstream>
#include <sstream>

namespace ample::models {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<IntMatrix> matrix_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of matrices");
  std::vector<IntMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

std::vector<Integer> integer_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  std::vector<Integer> out;
  for (const auto& v : j) out.push_back(integer_from_json(v));
  return out;
}

FiniteGroupoid finite_from_preset(const Json& p) {
  const std::string type = require(p, "type").get<std::string>();
  if (type == "trivial") return FiniteGroupoid::trivial();
  if (type == "pair") return FiniteGroupoid::pair(count_from_json(require(p, "points"), "points"));
  if (type == "cyclic_group") return FiniteGroupoid::cyclic_group(count_from_json(require(p, "order"), "order"));
  if (type == "equivalence_relation") {
    std::vector<std::size_t> classes;
    for (const auto& c : require(p, "classes")) classes.push_back(count_from_json(c, "class label"));
    return FiniteGroupoid::equivalence_relation(classes);
  }
  if (type == "group_table") {
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : require(p, "table")) {
      table.emplace_back();
      for (const auto& e : row) table.back().push_back(count_from_json(e, "table entry"));
    }
    return FiniteGroupoid::group(table);
  }
  throw ParseError("unknown finite groupoid preset '" + type + "'");
}

FiniteGroupoid finite_from_json(const Json& j) {
  if (j.contains("preset")) return finite_from_preset(j.at("preset"));
  FiniteGroupoid g;
  g.objects = count_from_json(require(j, "objects"), "objects");
  for (const auto& a : require(j, "arrows")) {
    if (!a.is_array() || a.size() != 2) throw ParseError("each arrow must be [source, range]");
    g.source.push_back(count_from_json(a[0], "arrow source"));
    g.range.push_back(count_from_json(a[1], "arrow range"));
  }
  const std::size_t n = g.arrows();
  for (const auto& u : require(j, "units")) g.units.push_back(count_from_json(u, "unit"));
  for (const auto& i : require(j, "inverse")) g.inverse.push_back(i.is_null() ? kNoArrow : count_from_json(i, "inverse"));
  g.products.assign(n * n, kNoArrow);
  for (const auto& p : require(j, "products")) {
    if (!p.is_array() || p.size() != 3) throw ParseError("each product must be [g, h, gh]");
    const std::size_t a = count_from_json(p[0], "product factor"), b = count_from_json(p[1], "product factor");
    if (a >= n || b >= n) throw ParseError("product refers to an arrow that does not exist");
    g.products[a * n + b] = count_from_json(p[2], "product value");
  }
  return g;
}

Json finite_to_json(const FiniteGroupoid& g) {
  Json j;
  j["kind"] = "finite";
  j["objects"] = g.objects;
  Json arrows = Json::array();
  for (std::size_t a = 0; a < g.arrows(); ++a) arrows.push_back({g.source[a], g.range[a]});
  j["arrows"] = arrows;
  j["units"] = g.units;
  Json inverse = Json::array();
  for (auto i : g.inverse) inverse.push_back(i == kNoArrow ? Json(nullptr) : Json(i));
  j["inverse"] = inverse;
  Json products = Json::array();
  const std::size_t n = g.arrows();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.products[a * n + b] != kNoArrow) products.push_back({a, b, g.products[a * n + b]});
  j["products"] = products;
  return j;
}

FixtureValue fixture_value_from_json(const Json& j) {
  if (j.is_object() && j.contains("colimit")) return colimit_system_from_json(j.at("colimit"));
  return group_from_json(j);
}

Json fixture_value_to_json(const FixtureValue& v) {
  return std::visit(overloaded{
                        [](const FgAbelianGroup& g) { return group_to_json(g); },
                        [](const StationaryColimit& s) {
                          Json j;
                          j["colimit"] = colimit_system_to_json(s);
                          return j;
                        },
                    },
                    v);
}

KValueSpec kvalue_from_json(const Json& j) {
  KValueSpec k;
  if (j.contains("finite")) k.finite_part = group_from_json(j.at("finite"));
  if (j.contains("colimits"))
    for (const auto& c : j.at("colimits")) k.colimits.push_back(colimit_system_from_json(c));
  return k;
}

Json kvalue_to_json(const KValueSpec& k) {
  Json j;
  j["finite"] = group_to_json(k.finite_part);
  Json cs = Json::array();
  for (const auto& c : k.colimits) cs.push_back(colimit_system_to_json(c));
  j["colimits"] = cs;
  return j;
}

std::optional<bool> optional_flag(const Json& meta, const char* key) {
  if (!meta.contains(key) || meta.at(key).is_null()) return std::nullopt;
  if (!meta.at(key).is_boolean()) throw ParseError(std::string("metadata.") + key + " must be a boolean");
  return meta.at(key).get<bool>();
}

HomologyFixture fixture_from_json(const Json& j) {
  HomologyFixture f;
  if (j.contains("name")) f.name = j.at("name").get<std::string>();
  const Json& groups = require(j, "groups");
  if (!groups.is_array()) throw ParseError("groups must be an array");
  for (const auto& g : groups) f.groups.push_back(fixture_value_from_json(g));
  const std::string tail = j.value("tail", std::string("zero"));
  if (tail == "zero") f.tail = FixtureTail::zero;
  else if (tail == "unknown") f.tail = FixtureTail::unknown;
  else if (tail == "odd_periodic") f.tail = FixtureTail::odd_periodic;
  else throw ParseError("tail must be one of zero, unknown, odd_periodic");
  if (j.contains("odd_group")) f.odd_group = group_from_json(j.at("odd_group"));
  if (j.contains("metadata")) {
    const Json& m = j.at("metadata");
    f.metadata.stabilizers_torsion_free = optional_flag(m, "stabilizers_torsion_free");
    f.metadata.strong_baum_connes = optional_flag(m, "strong_baum_connes");
    f.metadata.amenable = optional_flag(m, "amenable");
  }
  if (j.contains("published")) {
    const Json& p = j.at("published");
    PublishedKTheory pk;
    pk.k0 = kvalue_from_json(require(p, "K0"));
    pk.k1 = kvalue_from_json(require(p, "K1"));
    pk.source = p.value("source", std::string());
    f.published = std::move(pk);
  }
  return f;
}

Json fixture_to_json(const HomologyFixture& f) {
  Json j;
  j["kind"] = "fixture";
  j["name"] = f.name;
  Json groups = Json::array();
  for (const auto& g : f.groups) groups.push_back(fixture_value_to_json(g));
  j["groups"] = groups;
  j["tail"] = f.tail == FixtureTail::zero ? "zero" : f.tail == FixtureTail::unknown ? "unknown" : "odd_periodic";
  if (f.tail == FixtureTail::odd_periodic) j["odd_group"] = group_to_json(f.odd_group);
  Json meta = Json::object();
  auto put = [&meta](const char* key, const std::optional<bool>& v) {
    if (v) meta[key] = *v;
  };
  put("stabilizers_torsion_free", f.metadata.stabilizers_torsion_free);
  put("strong_baum_connes", f.metadata.strong_baum_connes);
  put("amenable", f.metadata.amenable);
  j["metadata"] = meta;
  if (f.published) {
    Json p;
    p["K0"] = kvalue_to_json(f.published->k0);
    p["K1"] = kvalue_to_json(f.published->k1);
    p["source"] = f.published->source;
    j["published"] = p;
  }
  return j;
}

Model parse_model_impl(const Json& doc) {
  if (!doc.is_object()) throw ParseError("model file must contain a JSON object");
  const std::string kind = require(doc, "kind").get<std::string>();
  if (kind == "finite") return finite_from_json(doc);
  if (kind == "sft") return SftModel{matrix_from_json(require(doc, "adjacency"))};
  if (kind == "dr") return DrModel{matrix_list(require(doc, "matrices"), "matrices")};
  if (kind == "bratteli") {
    BratteliModel b;
    b.levels = matrix_list(require(doc, "levels"), "levels");
    if (doc.contains("tail")) b.tail = matrix_list(doc.at("tail"), "tail");
    return b;
  }
  if (kind == "odometer") {
    OdometerModel o;
    if (doc.contains("prefix")) o.prefix = integer_list(doc.at("prefix"), "prefix");
    o.period = integer_list(require(doc, "period"), "period");
    const std::string stab = doc.value("stabilizers", std::string("torsion_free"));
    if (stab == "torsion_free") o.stabilizers = StabilizerType::torsion_free;
    else if (stab == "dihedral") o.stabilizers = StabilizerType::dihedral;
    else throw ParseError("stabilizers must be torsion_free or dihedral");
    return o;
  }
  if (kind == "fixture") return fixture_from_json(doc);
  throw ParseError("unknown model kind '" + kind + "'");
}

}  // namespace

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not an integer: '" + j.get<std::string>() + "'");
    return v;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

Json matrix_to_json(const IntMatrix& m) {
  if (m.rows() == 0 && m.cols() > 0) return Json{{"rows", 0}, {"cols", m.cols()}};
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    const std::size_t rows = count_from_json(require(j, "rows"), "rows");
    const std::size_t cols = count_from_json(require(j, "cols"), "cols");
    if (rows != 0) throw ParseError("object-form matrices are only for zero-row shapes");
    return IntMatrix(rows, cols);
  }
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) throw ParseError("matrix row " + std::to_string(r) + " is not an array");
    if (r == 0) cols = j[r].size();
    else if (j[r].size() != cols) throw ParseError("matrix rows have different lengths");
    rows.emplace_back();
    for (const auto& e : j[r]) rows.back().push_back(integer_from_json(e));
  }
  return IntMatrix::from_rows(rows, cols);
}

Json group_to_json(const FgAbelianGroup& g) { return Json(abelian::to_string(g)); }

FgAbelianGroup group_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return abelian::parse_group(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.is_object()) {
    std::vector<Integer> orders(count_from_json(require(j, "free_rank"), "free_rank"), Integer(0));
    if (j.contains("torsion"))
      for (const auto& t : j.at("torsion")) orders.push_back(integer_from_json(t));
    return FgAbelianGroup::from_cyclic_orders(orders);
  }
  throw ParseError("group must be a string such as \"Z^2 + Z/2\" or {free_rank, torsion}");
}

Json colimit_system_to_json(const StationaryColimit& s) {
  Json j;
  j["base"] = Json{{"generators", s.base.generators}, {"relations", matrix_to_json(s.base.relations)}};
  j["endo"] = matrix_to_json(s.endo.lift);
  return j;
}

StationaryColimit colimit_system_from_json(const Json& j) {
  const Json& base = require(j, "base");
  abelian::PresentedGroup presented;
  if (base.is_object() && base.contains("generators")) {
    const std::size_t gens = count_from_json(base.at("generators"), "generators");
    IntMatrix rels = base.contains("relations") ? matrix_from_json(base.at("relations")) : IntMatrix(gens, 0);
    if (rels.rows() == 0 && rels.cols() == 0) rels = IntMatrix(gens, 0);
    if (rels.rows() != gens) throw ParseError("colimit base: relation rows must equal the generator count");
    presented = abelian::PresentedGroup(gens, std::move(rels));
  } else {
    presented = abelian::PresentedGroup::of(group_from_json(base));
  }
  IntMatrix endo = matrix_from_json(require(j, "endo"));
  if (endo.rows() == 0 && endo.cols() == 0) endo = IntMatrix(presented.generators, presented.generators);
  if (endo.rows() != presented.generators || endo.cols() != presented.generators)
    throw ParseError("colimit endo must be square of the generator count");
  try {
    return StationaryColimit(presented, std::move(endo));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("colimit: ") + e.what());
  }
}

Model parse_model(const Json& doc) {
  try {
    return parse_model_impl(doc);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed model: ") + e.what());
  }
}

Model parse_model_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_model(doc);
}

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_text(buffer.str());
}

Json to_json(const Model& m) {
  return std::visit(overloaded{
                        [](const FiniteGroupoid& g) { return finite_to_json(g); },
                        [](const SftModel& s) { return Json{{"kind", "sft"}, {"adjacency", matrix_to_json(s.adjacency)}}; },
                        [](const DrModel& d) {
                          Json mats = Json::array();
                          for (const auto& a : d.matrices) mats.push_back(matrix_to_json(a));
                          return Json{{"kind", "dr"}, {"matrices", mats}};
                        },
                        [](const BratteliModel& b) {
                          Json levels = Json::array(), tail = Json::array();
                          for (const auto& a : b.levels) levels.push_back(matrix_to_json(a));
                          for (const auto& a : b.tail) tail.push_back(matrix_to_json(a));
                          return Json{{"kind", "bratteli"}, {"levels", levels}, {"tail", tail}};
                        },
                        [](const OdometerModel& o) {
                          Json prefix = Json::array(), period = Json::array();
                          for (const auto& q : o.prefix) prefix.push_back(integer_to_json(q));
                          for (const auto& q : o.period) period.push_back(integer_to_json(q));
                          return Json{{"kind", "odometer"},
                                      {"prefix", prefix},
                                      {"period", period},
                                      {"stabilizers", o.stabilizers == StabilizerType::dihedral ? "dihedral" : "torsion_free"}};
                        },
                        [](const HomologyFixture& f) { return fixture_to_json(f); },
                    },
                    m);
}

}  // namespace ample::models
