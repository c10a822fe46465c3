#include "fci/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fci/pauto.hpp"
#include "json.hpp"

namespace fci {

using ordered_json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int exit_code = 0;
  ordered_json report;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Undecidable: return 2;
  }
  return 4;
}

int ladder_exit(LadderVerdict v) {
  switch (v) {
    case LadderVerdict::Stabilized: return 0;
    case LadderVerdict::Diverging: return 1;
    case LadderVerdict::Inconclusive: return 2;
  }
  return 4;
}

std::string card(const Cardinality& c) { return c.to_string(); }

/// A spec turned into something computable at one level.
struct Instance {
  std::optional<DedekindGroup> dedekind;
  std::optional<CyclicExtension> ext;
  std::optional<CompiledGroup> finite;
  int level = 1;
  std::int64_t cap = kDefaultOrderCap;

  std::string describe() const { return ext ? ext->to_string() : dedekind->to_string(); }
  Cardinality order() const { return ext ? ext->order() : dedekind->order(); }
};

std::int64_t cap_of(const GroupSpecFile& s, const CommandOptions& opt) {
  return opt.cap.value_or(s.cap.value_or(kDefaultOrderCap));
}

Instance instantiate(const GroupSpecFile& s, const CommandOptions& opt) {
  Instance in;
  in.level = opt.level.value_or(default_level(s));
  in.cap = cap_of(s, opt);
  switch (s.kind) {
    case SpecKind::FiniteAbelian:
    case SpecKind::Dedekind: {
      GroupSpecFile t = s;
      t.cap = in.cap;
      in.dedekind = build_dedekind(t, in.level);
      if (in.dedekind->is_periodic()) in.finite = CompiledGroup::of(*in.dedekind, in.cap);
      break;
    }
    case SpecKind::CyclicExtension:
    case SpecKind::Periodic:
    case SpecKind::NonPeriodic:
      in.ext = build_extension_spec(s).materialize(in.level, in.cap);
      if (in.ext->is_finite()) in.finite = in.ext->compile();
      break;
    case SpecKind::FgByTwo:
      in.ext = build_fg_extension(s);
      break;
  }
  return in;
}

ordered_json header(const GroupSpecFile& s, const Instance& in) {
  ordered_json r;
  r["kind"] = to_string(s.kind);
  if (!s.name.empty()) r["name"] = s.name;
  r["level"] = in.level;
  r["group"] = in.describe();
  r["order"] = card(in.order());
  return r;
}

GElement parse_g_element(const Instance& in, const std::string& text) {
  if (in.ext) {
    auto [k, d] = parse_element(text, in.ext->base());
    return in.ext->element(k, d);
  }
  auto [k, d] = parse_element(text, *in.dedekind);
  if (k != 0) raise(ErrorCode::ParseError, "this group has no generator g");
  return GElement{0, d};
}

Elem encode(const Instance& in, const GElement& x) {
  if (in.ext) return in.ext->encode(*in.finite, x);
  return in.finite->base().encode(x.d);
}

Outcome cmd_build(const GroupSpecFile& s, const CommandOptions& opt) {
  const Instance in = instantiate(s, opt);
  Outcome o{0, header(s, in)};
  o.report["finite"] = in.order().is_finite();
  ordered_json gens = ordered_json::array();
  if (in.finite) {
    for (Elem a : in.finite->generators()) gens.push_back(in.finite->label(a));
  } else if (in.ext) {
    for (const auto& g : in.ext->generators()) gens.push_back(to_string(g));
  } else {
    for (const auto& d : in.dedekind->generators()) gens.push_back(to_string(d));
  }
  o.report["generators"] = gens;
  return o;
}

Outcome cmd_check_dedekind(const GroupSpecFile& s, const CommandOptions& opt) {
  const Instance in = instantiate(s, opt);
  Outcome o{0, header(s, in)};
  if (!in.finite) {
    if (!in.ext) {
      o.report["dedekind"] = true;
      o.report["reason"] = "abelian";
      return o;
    }
    raise(ErrorCode::InfiniteGroup, "check-dedekind needs a finite group; try check-fci or ladder");
  }
  const auto v = algo::is_dedekind(*in.finite, in.cap);
  o.report["dedekind"] = v.dedekind;
  if (v.witness) {
    o.report["witness_x"] = in.finite->label(v.witness->first);
    o.report["witness_g"] = in.finite->label(v.witness->second);
  }
  o.exit_code = v.dedekind ? 0 : 1;
  return o;
}

LadderOptions ladder_opts(const GroupSpecFile& s, const ExtensionSpec& spec, const CommandOptions& opt) {
  LadderOptions lo = ladder_options(s, spec);
  lo.cap = cap_of(s, opt);
  if (opt.levels) std::tie(lo.first, lo.last) = *opt.levels;
  if (opt.window) lo.window = *opt.window;
  return lo;
}

ordered_json ladder_json(const LadderResult& r) {
  ordered_json j;
  ordered_json levels = ordered_json::array();
  for (const auto& l : r.levels) {
    ordered_json e;
    e["level"] = l.level;
    e["max_index"] = l.value;
    e["sampled"] = l.sampled;
    e["non_normal"] = l.non_normal;
    levels.push_back(e);
  }
  j["levels"] = levels;
  j["verdict"] = to_string(r.verdict);
  if (r.verdict == LadderVerdict::Stabilized) {
    j["stable_from"] = r.stable_from;
    j["stable_value"] = r.stable_value;
  }
  return j;
}

Outcome cmd_ladder(const GroupSpecFile& s, const CommandOptions& opt) {
  const ExtensionSpec spec = build_extension_spec(s);
  const LadderResult r = ladder(spec, ladder_opts(s, spec, opt));
  Outcome o;
  o.report["kind"] = to_string(s.kind);
  if (!s.name.empty()) o.report["name"] = s.name;
  const ordered_json body = ladder_json(r);
  for (auto& [k, v] : body.items()) o.report[k] = v;
  o.exit_code = ladder_exit(r.verdict);
  return o;
}

ordered_json bci_fg_json(const BciBoundReport& b) {
  ordered_json j;
  j["r2"] = b.r2;
  j["bound"] = b.bound;
  j["max_centralizer"] = b.max_centralizer;
  j["attained"] = b.attained();
  j["sampled"] = b.sampled;
  j["non_normal"] = b.non_normal;
  j["closed_form_matches"] = b.closed_form_matches;
  j["infinite_order_normal"] = b.infinite_order_normal;
  ordered_json v = ordered_json::array();
  for (const auto& s : b.violations) v.push_back(s);
  j["violations"] = v;
  return j;
}

Outcome cmd_check_fci(const GroupSpecFile& s, const CommandOptions& opt, bool bci) {
  if (s.kind == SpecKind::FgByTwo) {
    const CyclicExtension g = build_fg_extension(s);
    Outcome o;
    o.report["kind"] = to_string(s.kind);
    if (!s.name.empty()) o.report["name"] = s.name;
    o.report["group"] = g.to_string();
    const BciBoundReport b = check_bci_bound_fg(g, opt.window.value_or(3));
    const ordered_json body = bci_fg_json(b);
    for (auto& [k, v] : body.items()) o.report[k] = v;
    o.exit_code = b.violations.empty() ? 0 : 1;
    return o;
  }
  const Instance in = instantiate(s, opt);
  if (!in.finite && in.ext) {
    Outcome o = cmd_ladder(s, opt);
    if (bci && o.exit_code == 0) o.report["bci_bound"] = o.report["stable_value"];
    return o;
  }
  Outcome o{0, header(s, in)};
  if (!in.finite) {
    o.report["dedekind"] = true;
    o.report["reason"] = "abelian";
    return o;
  }
  const FciReport rep = check_fci_finite(*in.finite, in.cap);
  o.report["dedekind"] = rep.dedekind;
  o.report["cyclic_subgroups"] = rep.records.size();
  o.report["non_normal"] = rep.non_normal_count();
  o.report["max_index"] = rep.max_index;
  o.report["bci_bound"] = *rep.bci_bound;
  if (!bci) {
    ordered_json recs = ordered_json::array();
    for (const auto& r : rep.records) {
      if (r.normal) continue;
      ordered_json e;
      e["element"] = r.element;
      e["order"] = r.order;
      e["index"] = *r.index;
      recs.push_back(e);
    }
    o.report["non_normal_cyclics"] = recs;
  }
  return o;
}

Outcome cmd_centralizer(const GroupSpecFile& s, const CommandOptions& opt) {
  if (opt.element.empty()) raise(ErrorCode::InvalidArgument, "centralizer needs --element");
  Outcome o;
  if (s.kind == SpecKind::FgByTwo) {
    const CyclicExtension g = build_fg_extension(s);
    auto [k, d] = parse_element(opt.element, g.base());
    const GElement x = g.element(k, d);
    o.report["kind"] = to_string(s.kind);
    o.report["group"] = g.to_string();
    o.report["element"] = to_string(x);
    o.report["element_order"] = card(g.order_of(x));
    o.report["normal"] = is_cyclic_normal(g, x);
    if (x.k == 1) o.report["centralizer_order"] = fg_centralizer_order(g, x);
    o.report["index"] = card(fg_centralizer_index(g, x));
    return o;
  }
  const Instance in = instantiate(s, opt);
  o.report = header(s, in);
  const GElement x = parse_g_element(in, opt.element);
  o.report["element"] = in.ext ? to_string(x) : to_string(x.d);
  if (in.finite) {
    const Elem e = encode(in, x);
    const auto c = algo::centralizer(*in.finite, e);
    const auto ord = static_cast<std::int64_t>(algo::element_order(*in.finite, e));
    o.report["element_order"] = ord;
    o.report["normal"] = algo::is_cyclic_normal(*in.finite, e);
    o.report["centralizer_order"] = c.size();
    o.report["index"] = static_cast<std::int64_t>(c.size()) / ord;
    if (in.ext) o.report["closed_form_order"] = card(centralizer(*in.ext, x).order());
    ordered_json list = ordered_json::array();
    for (Elem y : c) list.push_back(in.finite->label(y));
    o.report["centralizer"] = list;
    return o;
  }
  if (!in.ext) raise(ErrorCode::InfiniteGroup, "centralizers in an infinite abelian group are the whole group");
  const CentralizerDesc c = centralizer(*in.ext, x);
  o.report["element_order"] = card(in.ext->order_of(x));
  o.report["normal"] = is_cyclic_normal(*in.ext, x);
  o.report["projection_step"] = c.projection_step;
  o.report["representative"] = to_string(c.aperiodic_generator());
  o.report["torsion_part_order"] = c.torsion_part.size();
  ordered_json list = ordered_json::array();
  for (const auto& d : c.torsion_part) list.push_back(to_string(d));
  o.report["torsion_part"] = list;
  o.report["index"] = card(centralizer_index(*in.ext, x));
  return o;
}

Outcome cmd_paut(const GroupSpecFile& s, const CommandOptions& opt) {
  const Instance in = instantiate(s, opt);
  const DedekindGroup base = in.ext ? in.ext->base() : *in.dedekind;
  const PAutGroup p = enumerate_paut(base, in.cap);
  Outcome o;
  o.report["kind"] = to_string(s.kind);
  if (!s.name.empty()) o.report["name"] = s.name;
  o.report["level"] = in.level;
  o.report["base"] = base.to_string();
  o.report["count"] = p.size();
  o.report["abelian"] = p.is_abelian();
  ordered_json list = ordered_json::array();
  for (const auto& phi : p.elements) list.push_back(phi.to_string());
  o.report["automorphisms"] = list;
  return o;
}

Outcome cmd_classify(const GroupSpecFile& s, const CommandOptions& opt) {
  const std::string family = opt.family.empty() ? to_string(s.kind) : opt.family;
  if (s.kind != SpecKind::Periodic && s.kind != SpecKind::NonPeriodic) {
    raise(ErrorCode::SpecInvalid, "classify needs a spec of kind thm32 or thm36, got " + to_string(s.kind));
  }
  if (family != to_string(s.kind)) {
    raise(ErrorCode::SpecInvalid, "classify " + family + " needs a spec of kind " + family + ", got " +
                                      to_string(s.kind));
  }
  Outcome o;
  o.report["kind"] = to_string(s.kind);
  if (!s.name.empty()) o.report["name"] = s.name;
  ordered_json reasons = ordered_json::array();
  if (s.kind == SpecKind::Periodic) {
    const PeriodicVerdict v = classify_periodic(build_periodic(s));
    o.report["verdict"] = to_string(v.verdict);
    for (const auto& r : v.reasons) reasons.push_back(r);
    o.exit_code = verdict_exit(v.verdict);
  } else {
    const NonPeriodicVerdict v = classify_nonperiodic(build_nonperiodic(s));
    o.report["verdict"] = to_string(v.overall);
    o.report["condition_i"] = to_string(v.cond_i.verdict);
    o.report["condition_ii"] = to_string(v.cond_ii.verdict);
    o.report["condition_iii"] = to_string(v.cond_iii.verdict);
    for (const auto& r : v.reasons()) reasons.push_back(r);
    o.exit_code = verdict_exit(v.overall);
  }
  o.report["reasons"] = reasons;
  return o;
}

Outcome cmd_report(const GroupSpecFile& s, const CommandOptions& opt) {
  Outcome o;
  o.report["build"] = cmd_build(s, opt).report;
  if (s.kind == SpecKind::Periodic || s.kind == SpecKind::NonPeriodic) {
    const Outcome c = cmd_classify(s, opt);
    o.report["classify"] = c.report;
    o.exit_code = std::max(o.exit_code, c.exit_code);
  }
  const Outcome f = cmd_check_fci(s, opt, false);
  o.report["fci"] = f.report;
  o.exit_code = std::max(o.exit_code, f.exit_code);
  return o;
}

Outcome dispatch(const std::string& command, const GroupSpecFile& s, const CommandOptions& opt) {
  if (command == "build") return cmd_build(s, opt);
  if (command == "check-dedekind") return cmd_check_dedekind(s, opt);
  if (command == "check-fci") return cmd_check_fci(s, opt, false);
  if (command == "check-bci") return cmd_check_fci(s, opt, true);
  if (command == "centralizer") return cmd_centralizer(s, opt);
  if (command == "paut") return cmd_paut(s, opt);
  if (command == "classify") return cmd_classify(s, opt);
  if (command == "ladder") return cmd_ladder(s, opt);
  if (command == "report") return cmd_report(s, opt);
  raise(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalars(const ordered_json& arr) {
  return std::all_of(arr.begin(), arr.end(), [](const ordered_json& v) { return v.is_primitive(); });
}

void render(std::ostream& out, const ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const ordered_json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render(out, v, indent + 2);
    } else if (v.is_array() && all_scalars(v)) {
      out << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
      out << "]\n";
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& item : v) {
        out << pad << "  -\n";
        render(out, item, indent + 4);
      }
    } else {
      out << pad << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

std::string format(const ordered_json& j, bool machine) {
  if (machine) return j.dump(2) + "\n";
  std::ostringstream out;
  render(out, j, 0);
  return out.str();
}

Outcome run_file(const std::string& command, const std::filesystem::path& file, const CommandOptions& opt) {
  try {
    std::ifstream in(file, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, "cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return dispatch(command, parse_spec(buf.str()), opt);
  } catch (const Error& e) {
    Outcome o{exit_code_for(e.code()), {}};
    o.report["error"] = to_string(e.code());
    o.report["message"] = e.what();
    return o;
  } catch (const std::exception& e) {
    Outcome o{4, {}};
    o.report["error"] = "Internal";
    o.report["message"] = e.what();
    return o;
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"build",       "check-dedekind", "check-fci",
                                                 "check-bci",   "centralizer",    "paut",
                                                 "classify",    "ladder",         "report"};
  return names;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::SpecInvalid ? 3 : 4;
}

CommandResult run_command(const std::string& command, const GroupSpecFile& spec, const CommandOptions& opt) {
  const Outcome o = dispatch(command, spec, opt);
  return CommandResult{o.exit_code, format(o.report, opt.machine)};
}

CommandResult run_on_path(const std::string& command, const std::string& path, const CommandOptions& opt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) {
    const Outcome o = run_file(command, path, opt);
    return CommandResult{o.exit_code, format(o.report, opt.machine)};
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  CommandResult result;
  ordered_json all = ordered_json::array();
  std::ostringstream text;
  for (const auto& f : files) {
    const Outcome o = run_file(command, f.string(), opt);
    result.exit_code = std::max(result.exit_code, o.exit_code);
    ordered_json e;
    e["file"] = f.filename().string();
    e["exit_code"] = o.exit_code;
    e["report"] = o.report;
    all.push_back(e);
    text << "== " << f.filename().string() << " (exit " << o.exit_code << ") ==\n" << format(o.report, false);
  }
  result.output = opt.machine ? all.dump(2) + "\n" : text.str();
  return result;
}

}  // namespace fci
