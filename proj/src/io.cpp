#include "asyncmodel/io.hpp"

#include <fstream>
#include <sstream>

#include "asyncmodel/blc.hpp"
#include "asyncmodel/error.hpp"
#include "asyncmodel/inertia.hpp"

namespace asyncmodel {

namespace {

[[noreturn]] void bad(const std::string& what) { throw model_error(errc::parse_error, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

bool bit_from_json(const json& j) {
  if (!j.is_number_integer() || (j.get<int>() != 0 && j.get<int>() != 1)) bad("expected 0 or 1, got " + j.dump());
  return j.get<int>() == 1;
}

Rat rat_from_json(const json& j) {
  if (!j.is_string()) bad("rational values are strings, got " + j.dump());
  return parse_rat(j.get<std::string>());
}

Rat param(const json& j, const char* key) { return rat_from_json(field(field(j, "params"), key)); }

json params_to_json(const std::map<std::string, Rat>& params) {
  json out = json::object();
  for (const auto& [k, v] : params) out[k] = to_string(v);
  return out;
}

BlcParams blc_fields(const json& j) {
  return {param(j, "m_r"), param(j, "d_r"), param(j, "m_f"), param(j, "d_f")};
}

std::vector<LimitCondition> children_from_json(const json& j) {
  const auto& kids = field(j, "children");
  if (!kids.is_array()) bad("\"children\" must be a list");
  std::vector<LimitCondition> out;
  for (const auto& k : kids) out.push_back(model_from_json(k));
  return out;
}

}  // namespace

json signal_to_json(const Signal& x) {
  json tr = json::array();
  for (const auto& t : x.transitions()) tr.push_back(json::array({to_string(t.time), t.value ? 1 : 0}));
  return {{"initial", x.initial() ? 1 : 0}, {"transitions", tr}};
}

Signal signal_from_json(const json& j) {
  const bool initial = bit_from_json(field(j, "initial"));
  const auto& tr = field(j, "transitions");
  if (!tr.is_array()) bad("\"transitions\" must be a list");
  std::vector<Transition> raw;
  for (const auto& e : tr) {
    if (!e.is_array() || e.size() != 2) bad("a transition is [time, value], got " + e.dump());
    raw.push_back({rat_from_json(e[0]), bit_from_json(e[1])});
  }
  return make_signal(initial, std::move(raw));
}

json fn_to_json(const BoolFn& f) { return {{"arity", f.arity()}, {"table", f.bits()}}; }

BoolFn fn_from_json(const json& j) {
  const auto& arity = field(j, "arity");
  const auto& table = field(j, "table");
  if (!arity.is_number_integer() || !table.is_string()) bad("function needs an integer arity and a table string");
  auto f = BoolFn::from_bits(table.get<std::string>());
  if (f.arity() != arity.get<int>()) {
    throw model_error(errc::arity_mismatch, "table of length " + std::to_string(f.size()) + " does not have arity " +
                                                std::to_string(arity.get<int>()));
  }
  return f;
}

json model_to_json(const LimitCondition& i) {
  json out;
  switch (i.kind()) {
    case Kind::sol_fg:
      out = {{"kind", "sol"}, {"f", fn_to_json(i.f())}, {"g", fn_to_json(i.g())}};
      break;
    case Kind::sc:
      out = {{"kind", "sc"}};
      break;
    case Kind::mc:
      out = {{"kind", "mc"}, {"arity", i.arity()}};
      break;
    case Kind::scf:
      out = {{"kind", "scf"}, {"f", fn_to_json(i.f())}};
      break;
    case Kind::flc: {
      const auto spec = *as_flc(i);
      out = {{"kind", "flc"}, {"h", fn_to_json(spec.h)}, {"params", params_to_json(i.params())}};
      if (spec.f != spec.h || spec.g != spec.h) {
        out["f"] = fn_to_json(spec.f);
        out["g"] = fn_to_json(spec.g);
      }
      break;
    }
    case Kind::blc:
    case Kind::bailc:
      out = {{"kind", std::string(kind_name(i.kind()))},
             {"f", fn_to_json(i.f())},
             {"g", fn_to_json(i.g())},
             {"params", params_to_json(i.params())}};
      break;
    case Kind::serial:
    case Kind::meet:
    case Kind::join: {
      json kids = json::array();
      for (const auto& c : i.children()) kids.push_back(model_to_json(c));
      out = {{"kind", std::string(kind_name(i.kind()))}, {"children", kids}};
      break;
    }
    case Kind::restrict:
    case Kind::domain_restrict:
      throw model_error(errc::precondition_violated,
                        std::string(kind_name(i.kind())) + " models carry a predicate and have no file form");
  }
  return out;
}

LimitCondition model_from_json(const json& j) {
  const auto& kind_field = field(j, "kind");
  if (!kind_field.is_string()) bad("\"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "sol") return sol_fg(fn_from_json(field(j, "f")), fn_from_json(field(j, "g")));
  if (kind == "sc") return sc();
  if (kind == "mc") {
    const auto& m = field(j, "arity");
    if (!m.is_number_integer()) bad("\"arity\" must be an integer");
    return mc(m.get<int>());
  }
  if (kind == "scf") return scf(fn_from_json(field(j, "f")));
  if (kind == "flc") {
    const auto h = fn_from_json(field(j, "h"));
    const auto d = param(j, "d");
    if (j.contains("f") || j.contains("g")) return flc(h, d, fn_from_json(field(j, "f")), fn_from_json(field(j, "g")));
    return flc(h, d);
  }
  if (kind == "blc") return blc(fn_from_json(field(j, "f")), fn_from_json(field(j, "g")), blc_fields(j));
  if (kind == "bailc") {
    return bailc(fn_from_json(field(j, "f")), fn_from_json(field(j, "g")), blc_fields(j),
                 {param(j, "delta_r"), param(j, "delta_f")});
  }
  if (kind == "serial") {
    auto kids = children_from_json(j);
    if (kids.size() < 2) bad("a serial model lists the outer model and at least one inner model");
    const auto outer = kids.front();
    kids.erase(kids.begin());
    return serial_search(outer, std::move(kids));
  }
  if (kind == "meet" || kind == "join") {
    const auto kids = children_from_json(j);
    if (kids.size() != 2) bad("\"" + kind + "\" takes exactly two children");
    return kind == "meet" ? lc_meet(kids[0], kids[1]) : lc_join(kids[0], kids[1]);
  }
  bad("unknown model kind \"" + kind + "\"");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << dump(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace asyncmodel
