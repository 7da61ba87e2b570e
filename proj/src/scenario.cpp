#include "revolt/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "revolt/errors.hpp"

namespace revolt {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

// Section owning each key.
const std::map<std::string, std::string, std::less<>>& key_sections() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"name", "model"},
      {"variant", "model"},
      {"S", "model"},
      {"f_S", "rates"},
      {"f_C", "rates"},
      {"h_S", "rates"},
      {"h_C", "rates"},
      {"lambda_S", "intervention"},
      {"lambda_C", "intervention"},
      {"mu_S", "intervention"},
      {"mu_C", "intervention"},
      {"alpha", "opportunistic"},
      {"SB0", "init"},
      {"CR0", "init"},
      {"S0", "init"},
      {"rel_tol", "integrator"},
      {"abs_tol", "integrator"},
      {"t_max", "integrator"},
      {"convergence_eps", "integrator"},
      {"proximity_eps", "integrator"},
      {"record_stride", "integrator"},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Entries {
 public:
  explicit Entries(std::map<std::string, Entry, std::less<>> entries)
      : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  int line(std::string_view key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  const std::string& text(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(0, std::string(key), "missing required key");
    return it->second.value;
  }

  double number(std::string_view key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a finite number, got '" + s + "'");
    }
    return v;
  }

  std::optional<double> optional_number(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  double positive(std::string_view key) const {
    const double v = number(key);
    if (!(v > 0.0)) fail(key, "must be > 0, got " + num(v));
    return v;
  }

  double in_range(std::string_view key, double lo, double hi) const {
    const double v = number(key);
    if (v < lo || v > hi) fail(key, "must lie in [" + num(lo) + ", " + num(hi) + "], got " + num(v));
    return v;
  }

  void forbid(std::string_view key, std::string_view why) const {
    if (has(key)) fail(key, std::string(why));
  }

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    throw ParseError(line(key), std::string(key), what);
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

Entries tokenize(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    line = line.substr(0, std::min(line.find('#'), line.find(';')));
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "", "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const auto& table = key_sections();
      const bool known = std::any_of(table.begin(), table.end(),
                                     [&](const auto& kv) { return kv.second == section; });
      if (!known) throw ParseError(line_no, "", "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto owner = key_sections().find(key);
    if (owner == key_sections().end()) throw ParseError(line_no, key, "unknown key");
    if (section.empty()) throw ParseError(line_no, key, "key outside any section");
    if (owner->second != section) {
      throw ParseError(line_no, key, "belongs in [" + owner->second + "], not [" + section + "]");
    }
    if (value.empty()) throw ParseError(line_no, key, "empty value");
    if (entries.count(key)) throw ParseError(line_no, key, "duplicate key");
    entries.emplace(key, Entry{value, line_no});
  }
  return Entries(std::move(entries));
}

bool valid_name(std::string_view name) {
  return !name.empty() && trim(name) == name &&
         name.find_first_of("#;\n\r") == std::string_view::npos;
}

}  // namespace

bool IntegratorOverrides::empty() const noexcept {
  return !rel_tol && !abs_tol && !t_max && !convergence_eps && !proximity_eps && !record_stride;
}

IntegratorConfig IntegratorOverrides::apply(IntegratorConfig base) const {
  if (rel_tol) base.rel_tol = *rel_tol;
  if (abs_tol) base.abs_tol = *abs_tol;
  if (t_max) base.t_max = *t_max;
  if (convergence_eps) base.convergence_eps = *convergence_eps;
  if (proximity_eps) base.proximity_eps = *proximity_eps;
  if (record_stride) base.record_stride = *record_stride;
  return base;
}

PopulationSplit Scenario::split() const {
  if (!s) throw PreconditionError("scenario '" + name + "' has no fixed population split");
  return PopulationSplit(*s);
}

Model Scenario::model() const {
  switch (variant) {
    case Variant::Basic:
      return BasicModel{split(), rates};
    case Variant::Direct:
      return DirectModel{split(), rates, direct.value_or(DirectIntervention(0.0, 0.0))};
    case Variant::Indirect:
      return BasicModel{split(),
                        apply_indirect(rates, indirect.value_or(IndirectIntervention(1.0, 1.0)))};
    default:
      return OpportunisticModel{rates, opportunistic.value_or(OpportunisticParams(1.0))};
  }
}

InitialState Scenario::initial_state() const {
  if (variant == Variant::Opportunistic) {
    const double start = s0.value_or(0.5);
    if (sb0 && cr0) return OpportunisticState{*sb0, *cr0, start};
    return default_initial_state(start);
  }
  if (sb0 && cr0) return ReducedState{*sb0, *cr0};
  return default_initial_state(split());
}

Scenario parse_scenario(std::string_view text) {
  const Entries e = tokenize(text);
  Scenario sc;

  sc.name = e.text("name");
  if (!valid_name(sc.name)) e.fail("name", "must be non-empty and contain no '#', ';' or newline");
  const auto variant = parse_variant(e.text("variant"));
  if (!variant) e.fail("variant", "expected basic, direct, indirect or opportunistic");
  sc.variant = *variant;
  const bool opportunistic = sc.variant == Variant::Opportunistic;

  if (opportunistic) {
    e.forbid("S", "the opportunistic variant takes its initial split from [init] S0");
  } else {
    sc.s = e.in_range("S", 0.0, 1.0);
  }

  const double f_S = e.positive("f_S"), f_C = e.positive("f_C");
  const double h_S = e.positive("h_S"), h_C = e.positive("h_C");
  try {
    sc.rates = RateParams(f_S, f_C, h_S, h_C);
  } catch (const PreconditionError& err) {
    throw ParseError(e.line("f_S"), "f_S", err.what());
  }

  if (sc.variant != Variant::Direct) {
    e.forbid("lambda_S", "only the direct variant takes lambda_S");
    e.forbid("lambda_C", "only the direct variant takes lambda_C");
  }
  if (sc.variant != Variant::Indirect) {
    e.forbid("mu_S", "only the indirect variant takes mu_S");
    e.forbid("mu_C", "only the indirect variant takes mu_C");
  }
  if (sc.variant == Variant::Direct) {
    const double ls = e.number("lambda_S"), lc = e.number("lambda_C");
    if (ls < 0.0) e.fail("lambda_S", "must be >= 0, got " + num(ls));
    if (lc < 0.0) e.fail("lambda_C", "must be >= 0, got " + num(lc));
    sc.direct = DirectIntervention(ls, lc);
  }
  if (sc.variant == Variant::Indirect) {
    const double ms = e.number("mu_S"), mc = e.number("mu_C");
    if (ms < 1.0) e.fail("mu_S", "must be >= 1, got " + num(ms));
    if (mc < 1.0) e.fail("mu_C", "must be >= 1, got " + num(mc));
    sc.indirect = IndirectIntervention(ms, mc);
  }

  if (opportunistic) {
    sc.opportunistic = OpportunisticParams(e.positive("alpha"));
    sc.s0 = e.in_range("S0", 0.0, 1.0);
  } else {
    e.forbid("alpha", "only the opportunistic variant takes alpha");
    e.forbid("S0", "S0 applies to the opportunistic variant; use [model] S");
  }

  if (e.has("SB0") != e.has("CR0")) {
    const char* present = e.has("SB0") ? "SB0" : "CR0";
    e.fail(present, "SB0 and CR0 must be given together");
  }
  if (e.has("SB0")) {
    sc.sb0 = e.number("SB0");
    sc.cr0 = e.number("CR0");
    try {
      if (opportunistic) {
        check_state(OpportunisticState{*sc.sb0, *sc.cr0, *sc.s0});
      } else {
        check_state(ReducedState{*sc.sb0, *sc.cr0}, PopulationSplit(*sc.s));
      }
    } catch (const PreconditionError& err) {
      throw ParseError(e.line("SB0"), "SB0", err.what());
    }
  }

  auto& ov = sc.integrator;
  ov.rel_tol = e.optional_number("rel_tol");
  ov.abs_tol = e.optional_number("abs_tol");
  ov.t_max = e.optional_number("t_max");
  ov.convergence_eps = e.optional_number("convergence_eps");
  ov.proximity_eps = e.optional_number("proximity_eps");
  if (e.has("record_stride")) {
    const std::string& s = e.text("record_stride");
    std::size_t stride = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), stride);
    if (ec != std::errc{} || ptr != s.data() + s.size() || stride == 0) {
      e.fail("record_stride", "expected a positive integer, got '" + s + "'");
    }
    ov.record_stride = stride;
  }
  for (const char* key : {"rel_tol", "abs_tol", "t_max", "convergence_eps", "proximity_eps"}) {
    if (e.has(key)) e.positive(key);
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render_scenario(const Scenario& sc) {
  if (!valid_name(sc.name)) throw ConfigError("scenario name cannot be rendered: '" + sc.name + "'");
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).append("\n");
  };

  out += "[model]\n";
  put("name", sc.name);
  put("variant", std::string(variant_name(sc.variant)));
  if (sc.s) put("S", num(*sc.s));

  out += "\n[rates]\n";
  put("f_S", num(sc.rates.supporter_liberation()));
  put("f_C", num(sc.rates.contrarian_liberation()));
  put("h_S", num(sc.rates.supporter_subjugation()));
  put("h_C", num(sc.rates.contrarian_subjugation()));

  if (sc.direct || sc.indirect) {
    out += "\n[intervention]\n";
    if (sc.direct) {
      put("lambda_S", num(sc.direct->supporter_power()));
      put("lambda_C", num(sc.direct->contrarian_power()));
    }
    if (sc.indirect) {
      put("mu_S", num(sc.indirect->liberation_multiplier()));
      put("mu_C", num(sc.indirect->subjugation_multiplier()));
    }
  }
  if (sc.opportunistic) {
    out += "\n[opportunistic]\n";
    put("alpha", num(sc.opportunistic->switching_rate()));
  }
  if (sc.sb0 || sc.cr0 || sc.s0) {
    out += "\n[init]\n";
    if (sc.sb0) put("SB0", num(*sc.sb0));
    if (sc.cr0) put("CR0", num(*sc.cr0));
    if (sc.s0) put("S0", num(*sc.s0));
  }
  const auto& ov = sc.integrator;
  if (!ov.empty()) {
    out += "\n[integrator]\n";
    if (ov.rel_tol) put("rel_tol", num(*ov.rel_tol));
    if (ov.abs_tol) put("abs_tol", num(*ov.abs_tol));
    if (ov.t_max) put("t_max", num(*ov.t_max));
    if (ov.convergence_eps) put("convergence_eps", num(*ov.convergence_eps));
    if (ov.proximity_eps) put("proximity_eps", num(*ov.proximity_eps));
    if (ov.record_stride) put("record_stride", std::to_string(*ov.record_stride));
  }
  return out;
}

}  // namespace revolt
