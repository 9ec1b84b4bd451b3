#include "srhd/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "srhd/errors.hpp"
#include "srhd/time_integration.hpp"

namespace srhd {
namespace {

struct RawEntry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_name(const std::string& s, bool allow_dot) {
  if (s.empty()) return false;
  for (char ch : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                    ch == '_' || (allow_dot && ch == '.');
    if (!ok) return false;
  }
  return std::isalpha(static_cast<unsigned char>(s.front())) ||
         s.front() == '_';
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
  std::ostringstream os;
  os << "config line " << line << ": " << what;
  throw ConfigError(os.str());
}

[[noreturn]] void key_error(const std::string& key, const std::string& what) {
  std::ostringstream os;
  os << "config key '" << key << "': " << what;
  throw ConfigError(os.str());
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream is(value);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& key, const std::string& tok) {
  double x = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc{} || r.ptr != last)
    key_error(key, "expected a number, got '" + tok + "'");
  return x;
}

long to_long(const std::string& key, const std::string& tok) {
  long x = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc{} || r.ptr != last)
    key_error(key, "expected an integer, got '" + tok + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& tok) {
  if (tok == "true" || tok == "on" || tok == "yes" || tok == "1") return true;
  if (tok == "false" || tok == "off" || tok == "no" || tok == "0")
    return false;
  key_error(key, "expected a boolean (true/false/on/off/yes/no/1/0), got '" +
                     tok + "'");
}

// Lexes the document into fully-qualified key -> raw value entries.
std::map<std::string, RawEntry> lex_document(const std::string& text) {
  std::map<std::string, RawEntry> kv;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section, /*allow_dot=*/false))
        syntax_error(lineno, "invalid section name '" + section + "'");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      syntax_error(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_name(key, /*allow_dot=*/section.empty()))
      syntax_error(lineno, "invalid key '" + key + "'");
    if (value.empty()) syntax_error(lineno, "empty value for key '" + key + "'");
    if (!section.empty()) key = section + "." + key;

    const auto [it, inserted] = kv.emplace(key, RawEntry{value, lineno});
    if (!inserted) {
      std::ostringstream os;
      os << "duplicate key '" << key << "' (first set on line "
         << it->second.line << ")";
      syntax_error(lineno, os.str());
    }
  }
  return kv;
}

// Typed extraction helpers over the lexed map; each consumes its key.
class Extractor {
 public:
  explicit Extractor(std::map<std::string, RawEntry> kv) : kv_(std::move(kv)) {}

  std::optional<std::string> string(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    return e->value;
  }
  std::optional<double> number(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    return to_double(key, e->value);
  }
  std::optional<long> integer(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    return to_long(key, e->value);
  }
  std::optional<bool> boolean(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    return to_bool(key, e->value);
  }
  std::optional<std::vector<double>> numbers(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    for (const auto& tok : split_list(e->value))
      out.push_back(to_double(key, tok));
    return out;
  }
  std::optional<std::vector<int>> integers(const char* key) {
    auto e = take(key);
    if (!e) return std::nullopt;
    std::vector<int> out;
    for (const auto& tok : split_list(e->value)) {
      const long x = to_long(key, tok);
      out.push_back(static_cast<int>(x));
    }
    return out;
  }

  // After all known keys were consumed, anything left is unknown.
  void reject_leftovers() const {
    if (kv_.empty()) return;
    const auto it = std::min_element(
        kv_.begin(), kv_.end(), [](const auto& a, const auto& b) {
          return a.second.line < b.second.line;
        });
    syntax_error(it->second.line, "unknown key '" + it->first + "'");
  }

 private:
  std::optional<RawEntry> take(const std::string& key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    RawEntry e = it->second;
    kv_.erase(it);
    return e;
  }

  std::map<std::string, RawEntry> kv_;
};

Prim<1> inline_state(const std::string& key, const std::vector<double>& vals) {
  if (vals.size() != 3)
    key_error(key, "expected three values (rho v p)");
  Prim<1> v;
  v.rho = vals[0];
  v.v = {vals[1]};
  v.p = vals[2];
  return v;
}

RunConfig parse_entries(std::map<std::string, RawEntry> kv) {
  Extractor ex(std::move(kv));
  RunConfig cfg;

  if (const auto r = ex.integer("r")) {
    if (*r != 3 && *r != 5)
      key_error("r", "unsupported order (must be 3 or 5)");
    cfg.order_r = static_cast<int>(*r);
  }

  const auto w = ex.number("w_hat");
  cfg.w_hat = w ? *w : default_w_hat(cfg.order_r);
  if (!(cfg.w_hat > 0.0 && cfg.w_hat < 1.0))
    key_error("w_hat", "must lie in (0,1)");

  if (const auto t = ex.number("theta")) cfg.theta_amp = *t;
  if (!(cfg.theta_amp >= 1.0)) key_error("theta", "must be >= 1");

  if (const auto e = ex.number("eps_d")) cfg.eps_d = *e;
  if (const auto e = ex.number("eps_q")) cfg.eps_q = *e;
  if (!(cfg.eps_d > 0.0 && cfg.eps_d < 1.0))
    key_error("eps_d", "must lie in (0,1)");
  if (!(cfg.eps_q > 0.0 && cfg.eps_q < 1.0))
    key_error("eps_q", "must lie in (0,1)");

  if (const auto res = ex.integers("resolution")) {
    if (res->empty() || res->size() > 2)
      key_error("resolution", "expected one or two cell counts");
    for (const int n : *res)
      if (n < 1) key_error("resolution", "cell counts must be positive");
    cfg.resolution = *res;
  }
  if (const auto m = ex.integers("meshes")) {
    if (m->size() < 2)
      key_error("meshes", "need at least two resolutions for a study");
    for (std::size_t i = 0; i < m->size(); ++i) {
      if ((*m)[i] < 1) key_error("meshes", "cell counts must be positive");
      if (i > 0 && (*m)[i] <= (*m)[i - 1])
        key_error("meshes", "resolutions must be strictly increasing");
    }
    cfg.meshes = *m;
  }

  if (const auto t = ex.number("t_final")) {
    if (!(*t > 0.0)) key_error("t_final", "must be positive");
    cfg.t_final = *t;
  }

  if (const auto d = ex.string("output.dir")) cfg.output_dir = *d;
  if (const auto c = ex.number("output.cadence")) {
    if (!(*c >= 0.0)) key_error("output.cadence", "must be >= 0");
    cfg.output_cadence = *c;
  }

  if (const auto b = ex.boolean("limiter")) cfg.limiter = *b;
  if (const auto b = ex.boolean("characteristic")) cfg.characteristic = *b;

  if (const auto s = ex.integer("seed")) {
    if (*s < 0) key_error("seed", "must be >= 0");
    cfg.seed = static_cast<unsigned long>(*s);
  }
  if (const auto s = ex.integer("samples")) {
    if (*s < 1) key_error("samples", "must be >= 1");
    cfg.samples = *s;
  }

  if (const auto p = ex.string("problem")) cfg.problem = *p;

  const auto in_left = ex.numbers("inline.left");
  const auto in_right = ex.numbers("inline.right");
  const auto in_split = ex.number("inline.split");
  const auto in_gamma = ex.number("inline.gamma");
  const auto in_domain = ex.numbers("inline.domain");
  const auto in_tf = ex.number("inline.t_final");
  const bool any_inline = in_left || in_right || in_split || in_gamma ||
                          in_domain || in_tf;

  ex.reject_leftovers();

  if (any_inline) {
    if (!cfg.problem.empty())
      key_error("problem", "cannot combine a preset with inline.* keys");
    if (!in_left || !in_right)
      key_error("inline.left", "inline problems need both left and right "
                               "states");
    InlineRiemann rp;
    if (in_gamma) rp.gamma = *in_gamma;
    const EosParams eos{rp.gamma};
    try {
      validate_eos(eos);
    } catch (const Error& err) {
      key_error("inline.gamma", err.what());
    }
    rp.left = inline_state("inline.left", *in_left);
    rp.right = inline_state("inline.right", *in_right);
    try {
      validate_primitive(rp.left, eos);
    } catch (const Error& err) {
      key_error("inline.left", err.what());
    }
    try {
      validate_primitive(rp.right, eos);
    } catch (const Error& err) {
      key_error("inline.right", err.what());
    }
    if (in_domain) {
      if (in_domain->size() != 2 || !((*in_domain)[0] < (*in_domain)[1]))
        key_error("inline.domain", "expected lo hi with lo < hi");
      rp.domain = {(*in_domain)[0], (*in_domain)[1]};
    }
    rp.split = in_split ? *in_split : 0.5 * (rp.domain[0] + rp.domain[1]);
    if (!(rp.split > rp.domain[0] && rp.split < rp.domain[1]))
      key_error("inline.split", "must lie strictly inside the domain");
    if (in_tf) {
      if (!(*in_tf > 0.0)) key_error("inline.t_final", "must be positive");
      rp.t_final = *in_tf;
    }
    cfg.inline_rp = rp;
  } else if (!cfg.problem.empty()) {
    const auto names = list_problems();
    if (std::find(names.begin(), names.end(), cfg.problem) == names.end())
      key_error("problem", "unknown problem '" + cfg.problem + "'");
  }

  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  return parse_entries(lex_document(text));
}

RunConfig parse_config_overlay(const std::string& base,
                               const std::string& overrides) {
  std::map<std::string, RawEntry> kv = lex_document(base);
  for (const auto& [key, entry] : lex_document(overrides)) {
    const auto [it, inserted] = kv.emplace(key, entry);
    if (!inserted) {
      (void)it;
      key_error(key, "set in both the base document and the overrides");
    }
  }
  return parse_entries(std::move(kv));
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw IoError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProblemSpec make_problem(const RunConfig& config) {
  ProblemSpec spec;
  if (config.inline_rp) {
    const InlineRiemann rp = *config.inline_rp;
    spec.name = "inline";
    spec.dimension = 1;
    spec.geometry = Geometry::planar;
    spec.lo = {rp.domain[0], 0.0};
    spec.hi = {rp.domain[1], 0.0};
    spec.eos = EosParams{rp.gamma};
    spec.t_final = rp.t_final;
    spec.default_n = {400, 0};
    spec.init1 = [rp](double x) { return x < rp.split ? rp.left : rp.right; };
  } else if (!config.problem.empty()) {
    spec = preset(config.problem);
  } else {
    throw ConfigError("config: no problem selected (set 'problem' or "
                      "inline.* keys)");
  }
  if (config.t_final) spec.t_final = *config.t_final;
  return spec;
}

std::vector<int> default_meshes(int order_r) {
  if (order_r == 5) return {8, 16, 24, 32, 40, 48, 56};
  return {8, 16, 32, 64, 128, 256};
}

SchemeMeta scheme_meta(const RunConfig& config, const std::string& problem,
                       int threads) {
  SchemeMeta meta;
  meta.problem = problem;
  meta.order_r = config.order_r;
  meta.w_hat = config.w_hat;
  meta.theta_amp = config.theta_amp;
  meta.eps_d = config.eps_d;
  meta.eps_q = config.eps_q;
  meta.limiter = config.limiter;
  meta.characteristic = config.characteristic;
  meta.threads = threads;
  meta.seed = static_cast<unsigned>(config.seed);
  return meta;
}

}  // namespace srhd
