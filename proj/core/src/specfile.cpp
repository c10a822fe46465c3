#include "fci/specfile.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "json.hpp"

namespace fci {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

const char* const kKindNames[] = {"finite_abelian", "dedekind", "cyclic_extension", "thm32", "thm36", "thm43"};

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  raise(ErrorCode::SpecInvalid, path + ": " + msg);
}

/// Object reader that remembers which keys were consumed so leftovers can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) invalid(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* get(const std::string& key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& need(const std::string& key) {
    const json* v = get(key);
    if (!v) invalid(at(key), "missing");
    return *v;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const json* v = get(key);
    return v ? as_int(*v, at(key)) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) invalid(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) invalid(at(key), "expected a string");
    return v->get<std::string>();
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
        invalid(at(it.key()), "unknown field");
      }
    }
  }

  static std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) invalid(path, "expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

std::vector<QuasiComponent> parse_components(const json& arr, const std::string& path) {
  if (!arr.is_array()) invalid(path, "expected an array of components");
  std::vector<QuasiComponent> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string()) invalid(p, "expected a component such as \"Z/8\" or \"Z(2^inf)\"");
    try {
      out.push_back(parse_component(arr[i].get<std::string>()));
    } catch (const Error& e) {
      invalid(p, e.what());
    }
  }
  return QuasiSpec(out).components();
}

ordered_json components_json(const std::vector<QuasiComponent>& cs) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs) arr.push_back(component_text(c));
  return arr;
}

std::string strip_spaces(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }), s.end());
  return s;
}

ElementRef parse_element_ref(const json& j, const std::string& path) {
  Fields f(j, path);
  f.allow_only({"level", "element"});
  ElementRef e;
  e.level = static_cast<int>(f.integer("level", 1));
  if (e.level < 1) invalid(f.at("level"), "must be >= 1");
  e.text = strip_spaces(f.string("element", ""));
  return e;
}

ordered_json element_ref_json(const ElementRef& e) {
  ordered_json j;
  j["level"] = e.level;
  j["element"] = e.text;
  return j;
}

std::pair<int, int> parse_levels(const json& v, const std::string& path) {
  static const std::regex re(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  if (!v.is_string() || !std::regex_match(s, m, re)) invalid(path, "expected a range such as \"2..6\"");
  const int a = std::stoi(m[1].str()), b = std::stoi(m[2].str());
  if (a < 1 || b < a) invalid(path, "empty or invalid range");
  return {a, b};
}

ActionSpec parse_action(const json& j, const std::string& path) {
  Fields f(j, path);
  f.allow_only({"sign", "exponents", "inner"});
  ActionSpec a;
  a.sign = static_cast<int>(f.integer("sign", 1));
  if (a.sign != 1 && a.sign != -1) invalid(f.at("sign"), "must be 1 or -1");
  if (const json* ex = f.get("exponents")) {
    if (!ex->is_array()) invalid(f.at("exponents"), "expected an array");
    for (std::size_t i = 0; i < ex->size(); ++i) {
      Fields e((*ex)[i], f.at("exponents") + "[" + std::to_string(i) + "]");
      e.allow_only({"prime", "t", "precision"});
      ExponentSpec s;
      s.prime = e.integer("prime", 0);
      if (!num::is_prime(s.prime)) invalid(e.at("prime"), "not a prime");
      s.value = Fields::as_int(e.need("t"), e.at("t"));
      if (e.get("precision")) {
        s.precision = static_cast<int>(e.integer("precision", 1));
        if (*s.precision < 1) invalid(e.at("precision"), "must be >= 1");
        s.value = num::mod(s.value, num::checked_pow(s.prime, *s.precision));
      }
      a.exponents.push_back(s);
    }
  }
  std::sort(a.exponents.begin(), a.exponents.end(),
            [](const ExponentSpec& x, const ExponentSpec& y) { return x.prime < y.prime; });
  try {
    a.inner = Q8Element::parse(f.string("inner", "1"));
  } catch (const Error&) {
    invalid(f.at("inner"), "not a quaternion unit");
  }
  a.validate();
  return a;
}

ordered_json action_json(const ActionSpec& a) {
  ordered_json j;
  j["sign"] = a.sign;
  ordered_json ex = ordered_json::array();
  for (const auto& e : a.exponents) {
    ordered_json o;
    o["prime"] = e.prime;
    o["t"] = e.value;
    if (e.precision) o["precision"] = *e.precision;
    ex.push_back(o);
  }
  j["exponents"] = ex;
  j["inner"] = a.inner.to_string();
  return j;
}

void parse_base(const json& j, const std::string& path, GroupSpecFile& s) {
  Fields f(j, path);
  f.allow_only({"hamiltonian", "free_rank", "components"});
  s.hamiltonian = f.boolean("hamiltonian", false);
  s.free_rank = static_cast<int>(f.integer("free_rank", 0));
  if (s.free_rank < 0) invalid(f.at("free_rank"), "must be >= 0");
  if (const json* c = f.get("components")) s.components = parse_components(*c, f.at("components"));
  const bool quasi = QuasiSpec(s.components).has_quasicyclic();
  switch (s.kind) {
    case SpecKind::FiniteAbelian:
      if (s.hamiltonian || s.free_rank != 0 || quasi) invalid(path, "a finite abelian group takes finite components only");
      break;
    case SpecKind::Dedekind:
      if (s.hamiltonian && s.free_rank != 0) invalid(path, "a Hamiltonian group is periodic");
      break;
    case SpecKind::CyclicExtension:
    case SpecKind::NonPeriodic:
      if (s.free_rank != 0) invalid(f.at("free_rank"), "the base of this kind must be periodic");
      break;
    case SpecKind::FgByTwo:
      if (s.hamiltonian || quasi) invalid(path, "the base must be finitely generated abelian");
      if (s.free_rank < 1) invalid(f.at("free_rank"), "the base must be non-periodic");
      break;
    case SpecKind::Periodic:
      break;
  }
  if (s.hamiltonian && QuasiSpec(s.components).has_quasicyclic(2)) {
    invalid(f.at("components"), "the 2-part of a Hamiltonian base must be finite");
  }
}

ordered_json base_json(const GroupSpecFile& s) {
  ordered_json j;
  j["hamiltonian"] = s.hamiltonian;
  j["free_rank"] = s.free_rank;
  j["components"] = components_json(s.components);
  return j;
}

}  // namespace

std::string to_string(SpecKind k) { return kKindNames[static_cast<int>(k)]; }

SpecKind parse_kind(const std::string& s) {
  for (int i = 0; i < 6; ++i) {
    if (s == kKindNames[i]) return static_cast<SpecKind>(i);
  }
  raise(ErrorCode::SpecInvalid, "kind: unknown kind '" + s + "'");
}

QuasiComponent parse_component(const std::string& text) {
  static const std::regex finite(R"(^Z/(\d+)$)");
  static const std::regex quasi(R"(^Z\((\d+)\^inf\)$)");
  const std::string s = strip_spaces(text);
  std::smatch m;
  if (std::regex_match(s, m, quasi)) {
    const std::int64_t p = std::stoll(m[1].str());
    if (!num::is_prime(p)) raise(ErrorCode::SpecInvalid, std::to_string(p) + " is not prime");
    return QuasiComponent{p, std::nullopt};
  }
  if (std::regex_match(s, m, finite) && m[1].length() < 18) {
    std::int64_t n = std::stoll(m[1].str());
    if (n >= 2) {
      std::int64_t p = 2;
      while (p * p <= n && n % p != 0) ++p;
      if (n % p != 0) p = n;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (n == 1) return QuasiComponent{p, e};
    }
    raise(ErrorCode::SpecInvalid, "'" + text + "' is not a cyclic group of prime-power order");
  }
  raise(ErrorCode::SpecInvalid, "'" + text + "' is not a component such as Z/8 or Z(2^inf)");
}

std::string component_text(const QuasiComponent& c) {
  if (c.is_quasicyclic()) return "Z(" + std::to_string(c.prime) + "^inf)";
  return "Z/" + std::to_string(num::checked_pow(c.prime, *c.exponent));
}

GroupSpecFile parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find(": ", msg.find("column"));
    if (pos != std::string::npos) msg = msg.substr(pos + 2);
    raise(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  Fields top(j, "");
  GroupSpecFile s;
  s.kind = parse_kind(top.string("kind", ""));
  s.name = top.string("name", "");
  if (top.get("cap")) {
    s.cap = top.integer("cap", kDefaultOrderCap);
    if (*s.cap < 1) invalid("cap", "must be positive");
  }
  if (const json* l = top.get("ladder")) {
    if (s.kind != SpecKind::CyclicExtension && s.kind != SpecKind::Periodic && s.kind != SpecKind::NonPeriodic) {
      invalid("ladder", "only extension kinds have a ladder");
    }
    Fields lf(*l, "ladder");
    lf.allow_only({"levels", "window", "probes"});
    LadderDesc d;
    if (const json* lv = lf.get("levels")) std::tie(d.first, d.last) = parse_levels(*lv, lf.at("levels"));
    d.window = static_cast<int>(lf.integer("window", 3));
    if (d.window < 1) invalid(lf.at("window"), "must be >= 1");
    if (const json* pr = lf.get("probes")) {
      if (!pr->is_array()) invalid(lf.at("probes"), "expected an array");
      for (std::size_t i = 0; i < pr->size(); ++i) {
        d.probes.push_back(parse_element_ref((*pr)[i], lf.at("probes") + "[" + std::to_string(i) + "]"));
      }
    }
    s.ladder = d;
  }

  switch (s.kind) {
    case SpecKind::FiniteAbelian:
    case SpecKind::Dedekind:
      top.allow_only({"kind", "name", "cap", "base"});
      parse_base(top.need("base"), "base", s);
      break;
    case SpecKind::CyclicExtension: {
      top.allow_only({"kind", "name", "cap", "base", "top", "action", "ladder"});
      parse_base(top.need("base"), "base", s);
      Fields tf(top.need("top"), "top");
      tf.allow_only({"order", "d0"});
      const json& order = tf.need("order");
      if (order.is_string() && order.get<std::string>() == "infinite") {
        s.top_order.reset();
      } else {
        s.top_order = Fields::as_int(order, tf.at("order"));
        if (*s.top_order < 1) invalid(tf.at("order"), "must be >= 1 or \"infinite\"");
      }
      if (const json* d0 = tf.get("d0")) {
        if (!s.top_order) invalid(tf.at("d0"), "an infinite top has no g^m in the base");
        s.d0 = parse_element_ref(*d0, tf.at("d0"));
      }
      if (const json* a = top.get("action")) s.action = parse_action(*a, "action");
      break;
    }
    case SpecKind::Periodic: {
      top.allow_only({"kind", "name", "cap", "a", "q", "t", "d0", "ladder"});
      s.components = parse_components(top.need("a"), "a");
      if (const json* q = top.get("q")) s.q = parse_components(*q, "q");
      if (QuasiSpec(s.q).has_quasicyclic()) invalid("q", "Q must be finite");
      s.t = top.integer("t", -1);
      if (const json* d0 = top.get("d0")) s.d0 = parse_element_ref(*d0, "d0");
      break;
    }
    case SpecKind::NonPeriodic:
      top.allow_only({"kind", "name", "cap", "base", "action", "ladder"});
      parse_base(top.need("base"), "base", s);
      if (const json* a = top.get("action")) s.action = parse_action(*a, "action");
      break;
    case SpecKind::FgByTwo:
      top.allow_only({"kind", "name", "cap", "base", "d0"});
      parse_base(top.need("base"), "base", s);
      if (const json* d0 = top.get("d0")) s.d0 = parse_element_ref(*d0, "d0");
      break;
  }
  return s;
}

std::string serialize_spec(const GroupSpecFile& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  if (!s.name.empty()) j["name"] = s.name;
  if (s.cap) j["cap"] = *s.cap;
  switch (s.kind) {
    case SpecKind::FiniteAbelian:
    case SpecKind::Dedekind:
    case SpecKind::NonPeriodic:
    case SpecKind::FgByTwo:
      j["base"] = base_json(s);
      break;
    case SpecKind::CyclicExtension: {
      j["base"] = base_json(s);
      ordered_json t;
      if (s.top_order) {
        t["order"] = *s.top_order;
        t["d0"] = element_ref_json(s.d0);
      } else {
        t["order"] = "infinite";
      }
      j["top"] = t;
      break;
    }
    case SpecKind::Periodic:
      j["a"] = components_json(s.components);
      j["q"] = components_json(s.q);
      j["t"] = s.t;
      j["d0"] = element_ref_json(s.d0);
      break;
  }
  if (s.kind == SpecKind::CyclicExtension || s.kind == SpecKind::NonPeriodic) j["action"] = action_json(s.action);
  if (s.kind == SpecKind::FgByTwo) j["d0"] = element_ref_json(s.d0);
  if (s.ladder) {
    ordered_json l;
    l["levels"] = std::to_string(s.ladder->first) + ".." + std::to_string(s.ladder->last);
    l["window"] = s.ladder->window;
    ordered_json pr = ordered_json::array();
    for (const auto& p : s.ladder->probes) pr.push_back(element_ref_json(p));
    l["probes"] = pr;
    j["ladder"] = l;
  }
  return j.dump(2) + "\n";
}

std::pair<std::int64_t, DElement> parse_element(const std::string& text, const DedekindGroup& base) {
  static const std::regex re(R"(^(?:g(?:\^(-?\d+))?)?(?:\*?(\[[^\]]*\]))?$)");
  const std::string s = strip_spaces(text);
  std::smatch m;
  if (!std::regex_match(s, m, re)) raise(ErrorCode::ParseError, "cannot read element '" + text + "'");
  std::int64_t k = 0;
  if (!s.empty() && s[0] == 'g') k = m[1].matched ? std::stoll(m[1].str()) : 1;
  if (!m[2].matched) return {k, base.identity()};

  std::vector<std::string> tokens;
  const std::string inner = m[2].str().substr(1, m[2].length() - 2);
  if (!inner.empty()) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = inner.find(',', start);
      tokens.push_back(inner.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  const std::size_t want = (base.is_hamiltonian() ? 1 : 0) + static_cast<std::size_t>(base.free_rank()) +
                           base.torsion().num_components();
  if (tokens.size() != want) {
    raise(ErrorCode::ParseError, "element '" + text + "' has " + std::to_string(tokens.size()) +
                                     " coordinates, expected " + std::to_string(want) + " for " + base.to_string());
  }
  std::size_t i = 0;
  std::optional<Q8Element> q;
  if (base.is_hamiltonian()) q = Q8Element::parse(tokens[i++]);
  auto number = [&](const std::string& t) -> std::int64_t {
    static const std::regex num_re(R"(^-?\d{1,18}$)");
    if (!std::regex_match(t, num_re)) raise(ErrorCode::ParseError, "not an integer: '" + t + "'");
    return std::stoll(t);
  };
  std::vector<std::int64_t> free, tors;
  for (int r = 0; r < base.free_rank(); ++r) free.push_back(number(tokens[i++]));
  while (i < tokens.size()) tors.push_back(number(tokens[i++]));
  return {k, base.element(q, std::move(free), std::move(tors))};
}

int default_level(const GroupSpecFile& s) {
  int level = 3;
  level = std::max(level, s.d0.level);
  if (s.ladder) {
    for (const auto& p : s.ladder->probes) level = std::max(level, p.level);
  }
  return level;
}

QuasiSpec base_spec(const GroupSpecFile& s) { return QuasiSpec(s.components); }

DedekindGroup build_dedekind(const GroupSpecFile& s, int level) {
  if (s.kind != SpecKind::FiniteAbelian && s.kind != SpecKind::Dedekind && s.kind != SpecKind::FgByTwo) {
    raise(ErrorCode::SpecInvalid, "kind " + to_string(s.kind) + " does not describe a Dedekind group");
  }
  const std::int64_t cap = s.cap.value_or(kDefaultOrderCap);
  if (s.hamiltonian) {
    ExtensionSpec e;
    e.base = base_spec(s);
    e.hamiltonian = true;
    return e.base_at(level, cap);
  }
  return DedekindGroup::abelian(FgAbelian(s.free_rank, base_spec(s).materialize(level, cap).group));
}

LevelElement level_element(const ExtensionSpec& spec, const ElementRef& e, std::int64_t* k) {
  const DedekindGroup base = spec.base_at(e.level, std::int64_t{1} << 62);
  auto [kk, d] = parse_element(e.text, base);
  if (k) {
    *k = kk;
  } else if (kk != 0) {
    raise(ErrorCode::SpecInvalid, "'" + e.text + "' must be an element of the base");
  }
  return LevelElement{e.level, d.q, d.torsion};
}

PeriodicInput build_periodic(const GroupSpecFile& s) {
  if (s.kind != SpecKind::Periodic) raise(ErrorCode::SpecInvalid, "expected a spec of kind thm32");
  PeriodicInput in;
  in.a = base_spec(s);
  ExtensionSpec a_only;
  a_only.base = in.a;
  in.d0 = level_element(a_only, s.d0);
  in.t = s.t;
  std::vector<Component> q;
  for (const auto& c : s.q) q.push_back(Component{c.prime, *c.exponent});
  in.q = FinAbelian(q, s.cap.value_or(kDefaultOrderCap));
  return in;
}

NonPeriodicInput build_nonperiodic(const GroupSpecFile& s) {
  if (s.kind != SpecKind::NonPeriodic) raise(ErrorCode::SpecInvalid, "expected a spec of kind thm36");
  return NonPeriodicInput{base_spec(s), s.hamiltonian, s.action};
}

ExtensionSpec build_extension_spec(const GroupSpecFile& s) {
  switch (s.kind) {
    case SpecKind::CyclicExtension: {
      ExtensionSpec e;
      e.base = base_spec(s);
      e.hamiltonian = s.hamiltonian;
      e.top_order = s.top_order;
      e.action = s.action;
      e.d0 = level_element(e, s.d0);
      return e;
    }
    case SpecKind::Periodic: {
      PeriodicVerdict v = classify_periodic(build_periodic(s));
      if (!v.spec) {
        std::string why;
        for (const auto& r : v.reasons) why += (why.empty() ? "" : "; ") + r;
        raise(ErrorCode::SpecInvalid, "not a group of the periodic family: " + why);
      }
      return *v.spec;
    }
    case SpecKind::NonPeriodic:
      return classify_nonperiodic(build_nonperiodic(s)).spec;
    default:
      raise(ErrorCode::SpecInvalid, "kind " + to_string(s.kind) + " is not an extension over a truncated base");
  }
}

CyclicExtension build_fg_extension(const GroupSpecFile& s) {
  if (s.kind != SpecKind::FgByTwo) raise(ErrorCode::SpecInvalid, "expected a spec of kind thm43");
  std::vector<Component> comps;
  for (const auto& c : s.components) comps.push_back(Component{c.prime, *c.exponent});
  const FgAbelian a(s.free_rank, FinAbelian(comps, s.cap.value_or(kDefaultOrderCap)));
  auto [k, d] = parse_element(s.d0.text, DedekindGroup::abelian(a));
  if (k != 0) raise(ErrorCode::SpecInvalid, "d0: must be an element of A");
  return fg_abelian_extension(a, FgElement{d.free, d.torsion});
}

LadderOptions ladder_options(const GroupSpecFile& s, const ExtensionSpec& spec) {
  LadderOptions opt;
  opt.cap = s.cap.value_or(kDefaultOrderCap);
  if (s.ladder) {
    opt.first = s.ladder->first;
    opt.last = s.ladder->last;
    opt.window = s.ladder->window;
    for (const auto& p : s.ladder->probes) {
      Probe pr;
      pr.d = level_element(spec, p, &pr.k);
      opt.probes.push_back(pr);
    }
  }
  return opt;
}

}  // namespace fci
