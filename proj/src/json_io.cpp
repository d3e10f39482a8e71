#include "cantor/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cantor {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key()))
      raise(ErrorCode::SpecParse, "unknown key \"" + it.key() + "\"");
  }
}

const Json& need(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) raise(ErrorCode::SpecParse, std::string("missing key \"") + key + "\"");
  return *it;
}

std::int64_t small_int(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return static_cast<std::int64_t>(parse_int(j.get<std::string>()));
  raise(ErrorCode::SpecParse, std::string(what) + " must be an integer");
}

Int big_int(const Json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  raise(ErrorCode::SpecParse, std::string(what) + " must be an integer or decimal string");
}

Rat rat_field(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  raise(ErrorCode::SpecParse, std::string(what) + " must be \"p/q\" or an integer");
}

}  // namespace

Json radix_to_json(const RadixSequence& r) {
  Json j;
  switch (r.kind()) {
    case RadixKind::Constant:
      j["kind"] = "constant";
      j["q"] = r.values()[0];
      break;
    case RadixKind::Periodic:
      j["kind"] = "periodic";
      j["qs"] = r.values();
      break;
    case RadixKind::Table:
      j["kind"] = "table";
      j["qs"] = r.values();
      j["default"] = r.table_default();
      break;
  }
  return j;
}

RadixSequence radix_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "radix must be an object");
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "q"});
    return RadixSequence::constant(small_int(need(j, "q"), "q"));
  }
  std::vector<std::int64_t> qs;
  for (const auto& v : need(j, "qs")) qs.push_back(small_int(v, "qs entry"));
  if (kind == "periodic") {
    check_keys(j, {"kind", "qs"});
    return RadixSequence::periodic(std::move(qs));
  }
  if (kind == "table") {
    check_keys(j, {"kind", "qs", "default"});
    return RadixSequence::table(std::move(qs), small_int(need(j, "default"), "default"));
  }
  raise(ErrorCode::SpecParse, "unknown radix kind \"" + kind + "\"");
}

Json value_to_json(const CoefficientValue& v) {
  switch (v.kind()) {
    case CoeffKind::Rational: return Json(rat_str(v.rat()));
    case CoeffKind::BigPow: {
      Json j;
      j["num"] = v.bp_num().str();
      j["den_base"] = v.bp_base().str();
      j["den_exp"] = v.bp_exp().str();
      return j;
    }
    case CoeffKind::UnitRoot: return Json(v.residue());
  }
  return Json();
}

CoefficientValue value_from_json(const Json& j, Domain domain, std::int64_t unit_order) {
  if (domain == Domain::UnitRoot) {
    if (!j.is_number_integer())
      raise(ErrorCode::SpecParse, "unit-root coefficients are residue integers");
    return CoefficientValue::unit_root(j.get<std::int64_t>(), unit_order);
  }
  if (j.is_object()) {
    check_keys(j, {"num", "den_base", "den_exp"});
    return CoefficientValue::bigpow(big_int(need(j, "num"), "num"),
                                    big_int(need(j, "den_base"), "den_base"),
                                    big_int(need(j, "den_exp"), "den_exp"));
  }
  return CoefficientValue::rational(rat_field(j, "coefficient"));
}

namespace {

Json entry_to_json(const CoeffEntry& e) {
  Json j;
  switch (e.kind) {
    case CoeffEntry::Kind::Uniform: j["all_s"] = value_to_json(e.uniform); break;
    case CoeffEntry::Kind::List: {
      Json arr = Json::array();
      for (const auto& v : e.list) arr.push_back(value_to_json(v));
      j["per_s"] = arr;
      break;
    }
    case CoeffEntry::Kind::LinearResidue: j["linear_s"] = e.linear_c; break;
  }
  return j;
}

CoeffEntry entry_from_json(const Json& j, Domain domain, std::int64_t unit_order) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "coefficient entry must be an object");
  if (j.contains("all_s")) {
    check_keys(j, {"all_s"});
    return CoeffEntry::all_s(value_from_json(j["all_s"], domain, unit_order));
  }
  if (j.contains("per_s")) {
    check_keys(j, {"per_s"});
    std::vector<CoefficientValue> vs;
    for (const auto& v : j["per_s"]) vs.push_back(value_from_json(v, domain, unit_order));
    return CoeffEntry::per_s(std::move(vs));
  }
  if (j.contains("linear_s")) {
    check_keys(j, {"linear_s"});
    if (domain != Domain::UnitRoot)
      raise(ErrorCode::SpecParse, "linear_s entries need the unit-root domain");
    return CoeffEntry::linear_residue(small_int(j["linear_s"], "linear_s"));
  }
  raise(ErrorCode::SpecParse, "coefficient entry needs all_s, per_s or linear_s");
}

}  // namespace

Json product_spec_to_json(const ProductSpec& spec) {
  Json j;
  j["radix"] = radix_to_json(spec.radix());
  j["domain"] = spec.domain() == Domain::Rational ? "rational" : "unit_root";
  if (spec.domain() == Domain::UnitRoot) j["L"] = spec.unit_order();
  Json rule;
  const CoeffRule& r = spec.rule();
  switch (r.kind) {
    case CoeffRuleKind::Constant:
      rule["kind"] = "constant";
      rule["entry"] = entry_to_json(r.entries[0]);
      break;
    case CoeffRuleKind::PeriodicY: {
      rule["kind"] = "periodic_y";
      Json arr = Json::array();
      for (const auto& e : r.entries) arr.push_back(entry_to_json(e));
      rule["entries"] = arr;
      break;
    }
    case CoeffRuleKind::Table: {
      rule["kind"] = "table";
      Json arr = Json::array();
      for (const auto& e : r.entries) arr.push_back(entry_to_json(e));
      rule["entries"] = arr;
      rule["default"] = entry_to_json(r.dflt);
      break;
    }
    case CoeffRuleKind::FactorialSupport:
      rule["kind"] = "factorial_support";
      rule["base"] = r.fact_base.str();
      break;
  }
  j["coeffs"] = rule;
  return j;
}

ProductSpec product_spec_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "product spec must be an object");
  check_keys(j, {"radix", "domain", "L", "coeffs"});
  RadixSequence radix = radix_from_json(need(j, "radix"));
  std::string dom = need(j, "domain").get<std::string>();
  Domain domain;
  std::int64_t L = 1;
  if (dom == "rational") {
    domain = Domain::Rational;
    if (j.contains("L")) raise(ErrorCode::SpecParse, "L is a unit-root field");
  } else if (dom == "unit_root") {
    domain = Domain::UnitRoot;
    L = small_int(need(j, "L"), "L");
  } else {
    raise(ErrorCode::SpecParse, "unknown domain \"" + dom + "\"");
  }
  const Json& rj = need(j, "coeffs");
  std::string kind = need(rj, "kind").get<std::string>();
  CoeffRule rule;
  if (kind == "constant") {
    check_keys(rj, {"kind", "entry"});
    rule = CoeffRule::constant(entry_from_json(need(rj, "entry"), domain, L));
  } else if (kind == "periodic_y") {
    check_keys(rj, {"kind", "entries"});
    std::vector<CoeffEntry> body;
    for (const auto& e : need(rj, "entries")) body.push_back(entry_from_json(e, domain, L));
    rule = CoeffRule::periodic_y(std::move(body));
  } else if (kind == "table") {
    check_keys(rj, {"kind", "entries", "default"});
    std::vector<CoeffEntry> prefix;
    for (const auto& e : need(rj, "entries")) prefix.push_back(entry_from_json(e, domain, L));
    rule = CoeffRule::table(std::move(prefix), entry_from_json(need(rj, "default"), domain, L));
  } else if (kind == "factorial_support") {
    check_keys(rj, {"kind", "base"});
    rule = CoeffRule::factorial_support(big_int(need(rj, "base"), "base"));
  } else {
    raise(ErrorCode::SpecParse, "unknown coefficient rule \"" + kind + "\"");
  }
  return ProductSpec(std::move(radix), domain, std::move(rule), L);
}

namespace {

Json mu_entry_to_json(const MuEntry& e) {
  Json j;
  switch (e.kind) {
    case MuEntry::Kind::Const: j["const"] = e.c; break;
    case MuEntry::Kind::Linear: j["linear"] = e.c; break;
    case MuEntry::Kind::List: j["per_s"] = e.list; break;
  }
  return j;
}

MuEntry mu_entry_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "mu entry must be an object");
  if (j.contains("const")) {
    check_keys(j, {"const"});
    return MuEntry::constant(small_int(j["const"], "const"));
  }
  if (j.contains("linear")) {
    check_keys(j, {"linear"});
    return MuEntry::linear(small_int(j["linear"], "linear"));
  }
  if (j.contains("per_s")) {
    check_keys(j, {"per_s"});
    std::vector<std::int64_t> rs;
    for (const auto& v : j["per_s"]) rs.push_back(small_int(v, "per_s entry"));
    return MuEntry::per_s(std::move(rs));
  }
  raise(ErrorCode::SpecParse, "mu entry needs const, linear or per_s");
}

}  // namespace

Json tm_spec_to_json(const TMSpec& spec) {
  Json j;
  j["L"] = spec.L();
  j["radix"] = radix_to_json(spec.radix());
  Json rule;
  const MuRule& r = spec.mu_rule();
  switch (r.kind) {
    case MuRule::Kind::Constant:
      rule["kind"] = "constant";
      rule["entry"] = mu_entry_to_json(r.entries[0]);
      break;
    case MuRule::Kind::Periodic: {
      rule["kind"] = "periodic_y";
      Json arr = Json::array();
      for (const auto& e : r.entries) arr.push_back(mu_entry_to_json(e));
      rule["entries"] = arr;
      break;
    }
    case MuRule::Kind::Table: {
      rule["kind"] = "table";
      Json arr = Json::array();
      for (const auto& e : r.entries) arr.push_back(mu_entry_to_json(e));
      rule["entries"] = arr;
      rule["default"] = mu_entry_to_json(r.dflt);
      break;
    }
  }
  j["mu"] = rule;
  return j;
}

TMSpec tm_spec_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "tm spec must be an object");
  check_keys(j, {"L", "radix", "mu"});
  std::int64_t L = small_int(need(j, "L"), "L");
  RadixSequence radix = radix_from_json(need(j, "radix"));
  const Json& rj = need(j, "mu");
  std::string kind = need(rj, "kind").get<std::string>();
  MuRule rule;
  if (kind == "constant") {
    check_keys(rj, {"kind", "entry"});
    rule = MuRule::constant(mu_entry_from_json(need(rj, "entry")));
  } else if (kind == "periodic_y") {
    check_keys(rj, {"kind", "entries"});
    std::vector<MuEntry> body;
    for (const auto& e : need(rj, "entries")) body.push_back(mu_entry_from_json(e));
    rule = MuRule::periodic(std::move(body));
  } else if (kind == "table") {
    check_keys(rj, {"kind", "entries", "default"});
    std::vector<MuEntry> prefix;
    for (const auto& e : need(rj, "entries")) prefix.push_back(mu_entry_from_json(e));
    rule = MuRule::table(std::move(prefix), mu_entry_from_json(need(rj, "default")));
  } else {
    raise(ErrorCode::SpecParse, "unknown mu rule \"" + kind + "\"");
  }
  return TMSpec(L, std::move(radix), std::move(rule));
}

Json intseq_to_json(const IntSeq& s) {
  Json j;
  switch (s.kind) {
    case IntSeq::Kind::Constant:
      j["kind"] = "constant";
      j["v"] = s.values[0].str();
      break;
    case IntSeq::Kind::Periodic: {
      j["kind"] = "periodic";
      Json arr = Json::array();
      for (const auto& v : s.values) arr.push_back(v.str());
      j["vs"] = arr;
      break;
    }
    case IntSeq::Kind::Table: {
      j["kind"] = "table";
      Json arr = Json::array();
      for (const auto& v : s.values) arr.push_back(v.str());
      j["vs"] = arr;
      j["default"] = s.dflt.str();
      break;
    }
    case IntSeq::Kind::GeomPow:
      j["kind"] = "geom_pow";
      j["base"] = s.base.str();
      j["coeff"] = s.coeff.str();
      j["ratio"] = s.ratio.str();
      break;
  }
  return j;
}

IntSeq intseq_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, "sequence must be an object");
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "v"});
    return IntSeq::constant(big_int(need(j, "v"), "v"));
  }
  if (kind == "geom_pow") {
    check_keys(j, {"kind", "base", "coeff", "ratio"});
    return IntSeq::geom_pow(big_int(need(j, "base"), "base"), big_int(need(j, "coeff"), "coeff"),
                            big_int(need(j, "ratio"), "ratio"));
  }
  std::vector<Int> vs;
  for (const auto& v : need(j, "vs")) vs.push_back(big_int(v, "vs entry"));
  if (kind == "periodic") {
    check_keys(j, {"kind", "vs"});
    return IntSeq::periodic(std::move(vs));
  }
  if (kind == "table") {
    check_keys(j, {"kind", "vs", "default"});
    return IntSeq::table(std::move(vs), big_int(need(j, "default"), "default"));
  }
  raise(ErrorCode::SpecParse, "unknown sequence kind \"" + kind + "\"");
}

Json interval_to_json(const RatInterval& iv) {
  return Json::array({rat_str(iv.lo), rat_str(iv.hi)});
}

Json witness_to_json(const RepetitionWitness& w) {
  Json j;
  j["tail"] = w.tail;
  j["s"] = w.s;
  j["t"] = w.t;
  j["window"] = w.window;
  if (w.ratio.kind() == CoeffKind::Rational) {
    j["alpha"] = num(w.ratio.rat()).str();
    j["beta"] = den(w.ratio.rat()).str();
  } else {
    j["ratio"] = value_to_json(w.ratio);  // bigpow object or unit-root residue
  }
  return j;
}

Json approximant_to_json(const RationalApproximant& a) {
  Json j;
  j["witness"] = witness_to_json(a.witness);
  Json p = Json::array();
  for (const auto& c : a.p) p.push_back(rat_str(c));
  j["p"] = p;
  j["clearing_constant"] = a.clearing_constant.str();
  Json probe = Json::array();
  for (const auto& c : a.remainder_probe) probe.push_back(rat_str(c));
  j["remainder_probe"] = probe;
  return j;
}

Json inequality_report_to_json(const InequalityReport& rep) {
  Json j;
  j["variant"] = variant_name(rep.variant);
  j["epsilon"] = rat_str(rep.epsilon);
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["n"] = r.index.str();
    row["lhs_log2"] = r.lhs_neg_inf ? Json("-inf") : Json(rat_str(r.lhs_log2));
    row["rhs_log2"] = rat_str(r.rhs_log2);
    row["holds"] = r.holds;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["summary"] = rep.first_failure ? "FIRST_FAILURE(" + rep.first_failure->str() + ")"
                                   : std::string("ALL_HOLD");
  Json ev;
  if (!rep.prime_set.empty()) {
    Json ps = Json::array();
    for (const auto& p : rep.prime_set) ps.push_back(p.str());
    ev["prime_set"] = ps;
  }
  if (!rep.decay_log2.empty()) {
    Json d = Json::array();
    for (const auto& r : rep.decay_log2) d.push_back(rat_str(r));
    ev["decay_log2"] = d;
    ev["decay_monotone"] = rep.decay_monotone;
  }
  if (!rep.gcd_ok.empty()) ev["gcd_ok"] = rep.gcd_ok;
  if (!rep.notes.empty()) ev["notes"] = rep.notes;
  j["evidence"] = ev;
  return j;
}

Json copy_structure_to_json(const CopyStructure& cs, std::size_t block_level,
                            const Int& block_len) {
  Json j;
  j["block_level"] = block_level;
  j["block_len"] = block_len.str();
  Json sc = Json::array();
  for (const auto& s : cs.scalars) sc.push_back(value_to_json(s));
  j["scalars"] = sc;
  j["violation_at"] = cs.violation_at ? Json(cs.violation_at->str()) : Json(nullptr);
  return j;
}

Json boundedness_to_json(const BoundednessReport& rep) {
  Json j;
  j["sup_ratio"] = value_to_json(rep.sup_ratio);
  j["at"] = Json{{"n", rep.arg_n}, {"m", rep.arg_m}};
  j["incomparable_at"] = rep.incomparable_at;
  return j;
}

Json schmidt_to_json(const std::vector<SchmidtTriple>& rows) {
  Json arr = Json::array();
  for (const auto& t : rows) {
    Json j;
    j["n"] = t.n;
    j["x1"] = t.x1.str();
    j["x2"] = t.x2.str();
    j["x3"] = t.x3.str();
    j["linear_form"] = interval_to_json(t.linear_form);
    j["product_bound"] = interval_to_json(t.product_bound);
    j["subspace_product"] = interval_to_json(t.subspace_product);
    j["max_height"] = t.max_height.str();
    j["decay_ratio"] = t.decay_ratio ? Json(*t.decay_ratio) : Json(nullptr);
    arr.push_back(j);
  }
  Json out;
  out["rows"] = arr;
  out["notes"] = Json::array(
      {"linear form follows the explicit triple display: (x1 - x2) f0(1/b) - x3",
       "product_bound omits the unknown leading constant (reported with constant 1)"});
  return out;
}

std::string schmidt_to_csv(const std::vector<SchmidtTriple>& rows) {
  std::ostringstream os;
  os << "n,log_linear_form,log_height,ratio\n";
  char buf[128];
  for (const auto& t : rows) {
    os << t.n << ",";
    if (t.log_linear_form && t.log_height && t.decay_ratio) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", *t.log_linear_form, *t.log_height,
                    *t.decay_ratio);
      os << buf;
    } else {
      os << ",,";
    }
    os << "\n";
  }
  return os.str();
}

Json periodicity_to_json(const PeriodicityResult& r) {
  Json j;
  switch (r.kind) {
    case PeriodicityResult::Kind::Found:
      j["kind"] = "FOUND";
      j["A"] = r.offset;
      break;
    case PeriodicityResult::Kind::NoneUpTo:
      j["kind"] = "NONE_UP_TO";
      j["depth"] = r.depth;
      break;
    case PeriodicityResult::Kind::DecidedNone: j["kind"] = "DECIDED_NONE"; break;
  }
  return j;
}

Json period_scan_to_json(const PeriodScan& r) {
  Json j;
  j["periodic"] = r.periodic;
  if (r.periodic) {
    j["preperiod"] = r.preperiod;
    j["period"] = r.period;
  } else {
    j["max_period"] = r.max_period;
    j["horizon"] = r.horizon;
  }
  return j;
}

Json cyclotomic_to_json(const CyclotomicInterval& v, std::int64_t L) {
  Json j;
  j["basis"] = L == 3 ? "1,w (w^2+w+1=0)" : "1";
  j["u"] = interval_to_json(v.u);
  if (L == 3) j["v"] = interval_to_json(v.v);
  return j;
}

std::string coefficients_to_csv(const std::vector<CoefficientValue>& coeffs) {
  std::ostringstream os;
  bool unit = !coeffs.empty() && coeffs.front().kind() == CoeffKind::UnitRoot;
  os << (unit ? "m,residue\n" : "m,num,den\n");
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    const CoefficientValue& c = coeffs[m];
    if (c.kind() == CoeffKind::UnitRoot) {
      os << m << "," << c.residue() << "\n";
    } else {
      Rat r = c.to_rat();
      os << m << "," << num(r).str() << "," << den(r).str() << "\n";
    }
  }
  return os.str();
}

Json coefficients_to_json(const std::vector<CoefficientValue>& coeffs) {
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(value_to_json(c));
  return arr;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::SpecParse, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(ErrorCode::SpecParse, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) raise(ErrorCode::SpecParse, "spec file must hold a JSON object");
  return j;
}

}  // namespace cantor
