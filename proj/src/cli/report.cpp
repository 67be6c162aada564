#include <sstream>

#include "ample/cli/cli.hpp"

namespace ample::cli {

namespace {

using homology::TailKind;

Json formal_to_json(const abelian::Formal& f) {
  Json j;
  j["type"] = "formal";
  j["summary"] = abelian::summary(abelian::ColimitVerdict{f});
  j["rational_rank"] = f.rational_rank;
  Json inverted = Json::array();
  for (const auto& p : f.inverted_primes) inverted.push_back(models::integer_to_json(p));
  j["inverted_primes"] = inverted;
  Json partial = Json::array();
  for (const auto& pr : f.partially_inverted)
    partial.push_back(Json{{"prime", models::integer_to_json(pr.prime)}, {"rank", pr.rank}});
  j["partially_inverted"] = partial;
  j["torsion"] = models::group_to_json(f.torsion_colimit);
  j["torsion_resolved"] = f.torsion_resolved;
  j["unresolved"] = f.unresolved;
  j["system"] = models::colimit_system_to_json(f.system);
  j["text"] = abelian::to_string(abelian::ColimitVerdict{f});
  return j;
}

Json tail_json(homology::TailKind kind, const abelian::FgAbelianGroup& odd_group, const std::string& reason) {
  Json j;
  switch (kind) {
    case TailKind::zero:
      j["kind"] = "zero";
      break;
    case TailKind::odd_periodic:
      j["kind"] = "odd_periodic";
      j["odd_group"] = models::group_to_json(odd_group);
      break;
    case TailKind::unknown:
      j["kind"] = "unknown";
      break;
  }
  j["reason"] = reason;
  return j;
}

Json kgroup_to_json(const spectral::KGroup& k) {
  Json formal = Json::array();
  for (const auto& f : k.formal_parts) formal.push_back(formal_to_json(f));
  return Json{{"text", spectral::to_string(k)},
              {"finite_part", models::group_to_json(k.finite_part)},
              {"formal_parts", formal},
              {"rational_rank", k.rational_rank()}};
}

std::string optional_bool_text(const Json& j) {
  if (j.is_null()) return "undecided";
  return j.get<bool>() ? "true" : "false";
}

void render_value_line(std::ostream& os, const std::string& label, const Json& entry) {
  os << "  " << label << " = ";
  if (entry.at("value").is_null()) {
    os << "unknown";
  } else {
    const Json& v = entry.at("value");
    const std::string type = v.at("type");
    if (type == "formal") os << v.at("text").get<std::string>();
    else os << v.at("group").get<std::string>();
    if (type == "stabilized") os << "  (stabilized at stage " << v.at("stage").get<std::size_t>() << ")";
  }
  if (entry.contains("provenance") && !entry.at("provenance").get<std::string>().empty())
    os << "  [" << entry.at("provenance").get<std::string>() << "]";
  os << "\n";
}

void render_tail(std::ostream& os, const Json& tail, std::size_t explicit_degrees) {
  const std::string kind = tail.at("kind");
  const std::string after = "p >= " + std::to_string(explicit_degrees);
  if (kind == "zero") os << "  H_p = 0 for " << after;
  else if (kind == "odd_periodic")
    os << "  for " << after << ": H_p = " << tail.at("odd_group").get<std::string>() << " for odd p, 0 for even p";
  else os << "  H_p unknown for " << after;
  os << "  (" << tail.at("reason").get<std::string>() << ")\n";
}

void render_kgroup(std::ostream& os, const std::string& label, const Json& k) {
  os << "  " << label << " = " << k.at("text").get<std::string>() << "\n";
  for (const auto& f : k.at("formal_parts")) os << "        " << f.at("text").get<std::string>() << "\n";
}

}  // namespace

Json value_to_json(const homology::HomologyValue& v) {
  if (const auto* g = std::get_if<abelian::FgAbelianGroup>(&v.value))
    return Json{{"type", "group"}, {"group", models::group_to_json(*g)}};
  const auto& verdict = std::get<abelian::ColimitVerdict>(v.value);
  if (const auto* st = std::get_if<abelian::Stabilized>(&verdict))
    return Json{{"type", "stabilized"}, {"group", models::group_to_json(st->group)}, {"stage", st->stage}};
  return formal_to_json(std::get<abelian::Formal>(verdict));
}

Json homology_to_json(const homology::HomologyResult& h) {
  Json degrees = Json::array();
  for (std::size_t p = 0; p < h.degrees.size(); ++p) {
    Json entry{{"degree", p}};
    if (h.degrees[p]) {
      entry["status"] = "computed";
      entry["value"] = value_to_json(*h.degrees[p]);
      entry["provenance"] = h.degrees[p]->provenance;
    } else {
      entry["status"] = "unknown";
      entry["value"] = nullptr;
      entry["provenance"] = "";
    }
    degrees.push_back(entry);
  }
  return degrees;
}

Json tail_to_json(const homology::HomologyResult& h) { return tail_json(h.tail, h.odd_tail_group, h.tail_reason); }

Json page_to_json(const spectral::E2Page& page) {
  Json columns = Json::array();
  for (std::size_t p = 0; p < page.columns.size(); ++p)
    columns.push_back(Json{{"degree", p}, {"value", value_to_json(page.columns[p])}, {"provenance", page.columns[p].provenance}});
  const Json tail = tail_json(page.tail, page.odd_tail_group, page.tail_reason);
  Json j{{"certified", page.certified},
         {"rows", "E2(p,q) = H_p for even q, 0 for odd q"},
         {"columns", columns},
         {"tail", tail}};
  const auto top = page.vanishing_above();
  j["vanishing_above"] = top ? Json(*top) : Json(nullptr);
  return j;
}

Json certificate_to_json(const spectral::HypothesisCertificate& c) {
  Json j{{"stabilizers_torsion_free", c.stabilizers_torsion_free},
         {"strong_baum_connes", c.strong_baum_connes},
         {"amenable", c.amenable}};
  j["collapse_reason"] = c.collapse_reason ? Json(spectral::to_string(*c.collapse_reason)) : Json(nullptr);
  j["extension_free"] = c.extension_free ? Json(*c.extension_free) : Json(nullptr);
  j["failed"] = c.failed;
  return j;
}

Json verdict_to_json(const spectral::KTheoryVerdict& v) {
  if (const auto* a = std::get_if<spectral::Assembled>(&v))
    return Json{{"type", "assembled"}, {"K0", kgroup_to_json(a->k0)}, {"K1", kgroup_to_json(a->k1)}};
  const auto& ind = std::get<spectral::Indeterminate>(v);
  Json j{{"type", "indeterminate"}, {"guard_refusal", ind.guard_refusal}};
  j["rank_constraint"] = ind.rank_constraint ? Json(*ind.rank_constraint) : Json(nullptr);
  j["notes"] = ind.notes;
  return j;
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "model: " << report.at("model_kind").get<std::string>();
  if (report.contains("model_file")) os << " (" << report.at("model_file").get<std::string>() << ")";
  os << "\ncommand: " << report.at("command").get<std::string>() << "\n";
  if (report.contains("coefficients")) os << "coefficients: " << report.at("coefficients").get<std::string>() << "\n";

  const Json& homology = report.at("homology");
  if (!homology.is_null()) {
    os << "\nhomology (reliable up to degree " << report.at("reliable_up_to").get<std::size_t>() << "):\n";
    for (const auto& entry : homology) render_value_line(os, "H_" + std::to_string(entry.at("degree").get<std::size_t>()), entry);
    render_tail(os, report.at("homology_tail"), homology.size());
  }

  const Json& page = report.at("e2_page");
  if (!page.is_null()) {
    os << "\nE2 page" << (page.at("certified").get<bool>() ? "" : " (uncertified, truncated)") << ": "
       << page.at("rows").get<std::string>() << "\n";
    for (const auto& col : page.at("columns"))
      render_value_line(os, "E2(" + std::to_string(col.at("degree").get<std::size_t>()) + ", even)", col);
    render_tail(os, page.at("tail"), page.at("columns").size());
    os << "  vanishing above: "
       << (page.at("vanishing_above").is_null() ? std::string("none certified")
                                                : std::to_string(page.at("vanishing_above").get<std::size_t>()))
       << "\n";
  }

  const Json& verdict = report.at("verdict");
  if (!verdict.is_null()) {
    os << "\nK-theory verdict: " << verdict.at("type").get<std::string>() << "\n";
    if (verdict.at("type") == "assembled") {
      render_kgroup(os, "K_0", verdict.at("K0"));
      render_kgroup(os, "K_1", verdict.at("K1"));
    } else {
      if (verdict.at("guard_refusal").get<bool>()) os << "  hypothesis guard refused assembly\n";
      os << "  rank K_0 - rank K_1 = "
         << (verdict.at("rank_constraint").is_null() ? std::string("unconstrained")
                                                     : std::to_string(verdict.at("rank_constraint").get<long>()))
         << "\n";
      for (const auto& n : verdict.at("notes")) os << "  note: " << n.get<std::string>() << "\n";
    }
  }

  const Json& cert = report.at("certificate");
  if (!cert.is_null()) {
    os << "\nhypothesis certificate:\n";
    for (const char* key : {"stabilizers_torsion_free", "strong_baum_connes", "amenable"})
      os << "  " << key << ": " << optional_bool_text(cert.at(key)) << "\n";
    os << "  collapse_reason: "
       << (cert.at("collapse_reason").is_null() ? std::string("none") : cert.at("collapse_reason").get<std::string>()) << "\n";
    os << "  extension_free: " << optional_bool_text(cert.at("extension_free")) << "\n";
    if (!cert.at("failed").empty()) {
      os << "  failed:";
      for (const auto& f : cert.at("failed")) os << " " << f.get<std::string>();
      os << "\n";
    }
  }

  const Json& checks = report.at("checks");
  if (!checks.is_null() && !checks.empty()) {
    os << "\nchecks:\n";
    for (const auto& [key, value] : checks.items()) {
      os << "  " << key << ": ";
      if (value.is_string()) os << value.get<std::string>();
      else if (value.is_array()) {
        os << "\n";
        for (const auto& item : value) os << "    " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
        continue;
      } else os << value.dump();
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace ample::cli
