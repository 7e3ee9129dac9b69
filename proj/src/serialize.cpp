#include "endotrace/serialize.hpp"

#include <json.hpp>

namespace endotrace {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

json elt_json(const Fp2Field& f, const Fp2Elt& a) {
  std::vector<std::uint64_t> c;
  f.coords(a, c);
  json out = json::array();
  for (auto v : c) out.push_back(std::to_string(v));
  return out;
}

json poly_json(const Fp2Field& f, const Fp2Poly& a) {
  json out = json::array();
  for (const auto& c : a.c) out.push_back(elt_json(f, c));
  return out;
}

json curve_obj(const Fp2Curve& E) {
  const auto& f = E.field();
  json tower = json::array();
  for (auto v : f.modulus_coeffs()) tower.push_back(std::to_string(v));
  json out;
  out["p"] = std::to_string(f.characteristic());
  out["tower"] = json::array({tower});
  out["A"] = elt_json(f, E.A());
  out["B"] = elt_json(f, E.B());
  return out;
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object()) parse_error("expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

// Canonical decimal string below `bound`.
std::uint64_t parse_coord(const json& v, std::uint64_t bound) {
  if (!v.is_string()) parse_error("coordinates must be decimal strings");
  const auto& s = v.get_ref<const std::string&>();
  if (s.empty() || s.size() > 19 || (s.size() > 1 && s[0] == '0')) parse_error("malformed coordinate \"" + s + "\"");
  std::uint64_t r = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') parse_error("malformed coordinate \"" + s + "\"");
    r = r * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (r >= bound) parse_error("coordinate " + s + " out of range");
  return r;
}

Fp2Elt parse_elt(const Fp2Field& f, const json& v) {
  if (!v.is_array() || v.size() != 2) parse_error("field elements are arrays of 2 coordinates");
  auto p = f.characteristic();
  return f.make(parse_coord(v[0], p), parse_coord(v[1], p));
}

Fp2Poly parse_poly(const Fp2Field& f, const json& v, const char* name) {
  if (!v.is_array()) parse_error(std::string("polynomial \"") + name + "\" must be an array");
  Fp2Poly out;
  for (const auto& c : v) out.c.push_back(parse_elt(f, c));
  if (!out.c.empty() && f.is_zero(out.c.back())) parse_error(std::string("polynomial \"") + name + "\" has a zero leading coefficient");
  if (out.is_zero()) parse_error(std::string("polynomial \"") + name + "\" is zero");
  return out;
}

Fp2Curve make_curve(const Fp2Field& f, const Fp2Elt& A, const Fp2Elt& B) {
  try {
    return Fp2Curve(f, A, B);
  } catch (const Error& e) {
    parse_error(std::string("invalid curve: ") + e.what());
  }
}

Fp2Curve parse_curve(const json& obj) {
  std::uint64_t p = parse_coord(member(obj, "p"), ~std::uint64_t{0});
  BigInt P(static_cast<unsigned long>(p));
  if (p < 5 || (p >> 63) != 0 || !mpz_probab_prime_p(P.get_mpz_t(), 30))
    parse_error("p must be a prime in [5, 2^63)");
  Fp2Field f(p);
  json tower = json::array();
  for (auto v : f.modulus_coeffs()) tower.push_back(std::to_string(v));
  if (member(obj, "tower") != json::array({tower})) parse_error("unsupported tower; expected " + json::array({tower}).dump());
  return make_curve(f, parse_elt(f, member(obj, "A")), parse_elt(f, member(obj, "B")));
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string curve_to_json(const Fp2Curve& E) { return dump(curve_obj(E)); }

Fp2Curve curve_from_json(const std::string& text) { return parse_curve(parse_text(text)); }

std::string chain_to_json(const Chain& chain) {
  const auto& f = chain.field();
  json steps = json::array();
  for (const auto& st : chain.steps) {
    json s;
    s["A"] = elt_json(f, st.codomain.A());
    s["B"] = elt_json(f, st.codomain.B());
    s["u"] = poly_json(f, st.u);
    s["v"] = poly_json(f, st.v);
    s["s"] = poly_json(f, st.s);
    s["t"] = poly_json(f, st.t);
    s["c"] = elt_json(f, st.c);
    steps.push_back(std::move(s));
  }
  json out;
  out["curve"] = curve_obj(chain.curve);
  out["steps"] = std::move(steps);
  return dump(out);
}

Chain chain_from_json(const std::string& text) {
  json j = parse_text(text);
  Chain chain{parse_curve(member(j, "curve")), {}};
  const auto& f = chain.field();
  PolyRing<Fp2Field> R(f);
  const auto& steps = member(j, "steps");
  if (!steps.is_array()) parse_error("\"steps\" must be an array");
  Fp2Curve domain = chain.curve;
  for (const auto& s : steps) {
    Fp2Curve codomain = make_curve(f, parse_elt(f, member(s, "A")), parse_elt(f, member(s, "B")));
    IsogenyStep st{domain,
                   codomain,
                   parse_poly(f, member(s, "u"), "u"),
                   parse_poly(f, member(s, "v"), "v"),
                   parse_poly(f, member(s, "s"), "s"),
                   parse_poly(f, member(s, "t"), "t"),
                   parse_elt(f, member(s, "c")),
                   {}};
    if (f.is_zero(st.c)) parse_error("step constant c is zero");
    st.h = R.monic(R.div(st.v, R.gcd(st.v, R.deriv(st.v))));
    chain.steps.push_back(std::move(st));
    domain = codomain;
  }
  return chain;
}

std::string trace_result_to_json(const TraceResult& r) {
  json res = json::array();
  for (const auto& x : r.residues) {
    json o;
    o["modulus"] = x.modulus.get_str();
    o["residue"] = x.residue.get_str();
    o["method"] = x.method;
    o["time_ms"] = x.time_ms;
    res.push_back(std::move(o));
  }
  json out;
  out["trace"] = r.trace.get_str();
  out["degree"] = r.degree.get_str();
  out["modulus"] = r.modulus.get_str();
  out["method"] = method_name(r.method);
  out["residues"] = std::move(res);
  return dump(out);
}

}  // namespace endotrace
