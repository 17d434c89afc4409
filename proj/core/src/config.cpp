#include "nlscat/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nlscat/errors.hpp"
#include "nlscat/geometry.hpp"
#include "nlscat/io.hpp"

namespace nlscat {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::map<std::string, Entry> entries;
  int line = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

// Structural problems are ConfigError (exit 2); value ranges re-validate the
// model invariants the modules enforce themselves, so they surface as
// InvariantViolation (exit 3) even when caught at load time.
[[noreturn]] void violate(int line, const std::string& message) {
  throw InvariantViolation("line " + std::to_string(line) + ": " + message);
}

std::map<std::string, Section> tokenize(const std::string& text) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(lineno, "unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty()) fail(lineno, "empty section name");
      if (sections.count(current)) fail(lineno, "duplicate section [" + current + "]");
      sections[current].line = lineno;
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    if (current.empty()) fail(lineno, "key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    Section& sec = sections[current];
    if (sec.entries.count(key)) fail(lineno, "duplicate key '" + key + "'");
    sec.entries[key] = Entry{value, lineno, false};
  }
  return sections;
}

double to_double(const Entry& e, const std::string& key) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "key '" + key + "': not a number: '" + e.value + "'");
  }
  if (pos != e.value.size()) fail(e.line, "key '" + key + "': trailing characters in '" + e.value + "'");
  return v;
}

long long to_integer(const Entry& e, const std::string& key) {
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(e.value, &pos);
  } catch (const std::exception&) {
    fail(e.line, "key '" + key + "': not an integer: '" + e.value + "'");
  }
  if (pos != e.value.size()) fail(e.line, "key '" + key + "': trailing characters in '" + e.value + "'");
  return v;
}

std::vector<double> to_doubles(const Entry& e, const std::string& key) {
  std::vector<double> values;
  std::istringstream in(e.value);
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      fail(e.line, "key '" + key + "': not a number: '" + tok + "'");
    }
    if (pos != tok.size()) fail(e.line, "key '" + key + "': trailing characters in '" + tok + "'");
    values.push_back(v);
  }
  return values;
}

// Access helpers; lookups mark entries used so leftovers can be rejected.
Entry* find(Section& sec, const std::string& key) {
  auto it = sec.entries.find(key);
  if (it == sec.entries.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

void reject_unused(const std::string& name, const Section& sec) {
  for (const auto& [key, entry] : sec.entries)
    if (!entry.used) fail(entry.line, "unknown key '" + key + "' in section [" + name + "]");
}

TermConfig parse_term(const std::string& name, Section& sec) {
  TermConfig term;
  Entry* shape = find(sec, "shape");
  if (!shape) fail(sec.line, "section [" + name + "] needs a shape");
  term.shape = shape->value;

  Entry* center = find(sec, "center");
  Entry* radius = find(sec, "radius");
  Entry* scale = find(sec, "scale");
  Entry* vertices = find(sec, "vertices");
  Entry* file = find(sec, "file");
  Entry* coefficient = find(sec, "coefficient");
  Entry* exponent = find(sec, "exponent");

  auto forbid = [&](Entry* e, const char* key) {
    if (e) fail(e->line, std::string("key '") + key + "' does not apply to shape '" + term.shape + "'");
  };

  if (term.shape == "disk") {
    if (!radius) fail(shape->line, "disk needs a radius");
    term.radius = to_double(*radius, "radius");
    if (!(term.radius > 0.0)) violate(radius->line, "radius must be positive");
    forbid(scale, "scale");
    forbid(vertices, "vertices");
    forbid(file, "file");
  } else if (term.shape == "kite") {
    if (!scale) fail(shape->line, "kite needs a scale");
    term.scale = to_double(*scale, "scale");
    if (!(term.scale > 0.0)) violate(scale->line, "scale must be positive");
    forbid(radius, "radius");
    forbid(vertices, "vertices");
    forbid(file, "file");
  } else if (term.shape == "polygon") {
    if (!vertices) fail(shape->line, "polygon needs vertices");
    const std::vector<double> v = to_doubles(*vertices, "vertices");
    if (v.size() < 6 || v.size() % 2 != 0)
      violate(vertices->line, "vertices must list at least 3 x y pairs");
    for (std::size_t p = 0; p + 1 < v.size(); p += 2) term.vertices.push_back(Vec2{v[p], v[p + 1]});
    forbid(radius, "radius");
    forbid(scale, "scale");
    forbid(file, "file");
    forbid(center, "center");
  } else if (term.shape == "raster") {
    if (!file) fail(shape->line, "raster needs a file");
    term.file = file->value;
    forbid(radius, "radius");
    forbid(scale, "scale");
    forbid(vertices, "vertices");
    forbid(center, "center");
  } else {
    fail(shape->line, "unknown shape '" + term.shape + "'");
  }

  if (center && term.shape != "polygon" && term.shape != "raster") {
    const std::vector<double> c = to_doubles(*center, "center");
    if (c.size() != 2) fail(center->line, "center must be 'x y'");
    term.center = Vec2{c[0], c[1]};
  }
  if (coefficient) term.coefficient = to_double(*coefficient, "coefficient");
  else if (term.shape != "raster") fail(shape->line, "section [" + name + "] needs a coefficient");
  if (exponent) {
    term.exponent = to_double(*exponent, "exponent");
    if (term.exponent < 0.0) violate(exponent->line, "exponent must be nonnegative");
  }
  return term;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, Section> sections = tokenize(text);
  RunConfig config;

  auto section = [&](const char* name) -> Section* {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  Section* scene = section("scene");
  if (!scene) throw ConfigError("missing required section [scene]");
  if (Entry* e = find(*scene, "wavenumber")) {
    config.wavenumber = to_double(*e, "wavenumber");
    if (!(config.wavenumber > 0.0)) violate(e->line, "wavenumber must be positive");
  } else {
    fail(scene->line, "[scene] needs wavenumber");
  }
  if (Entry* e = find(*scene, "halfwidth")) {
    config.halfwidth = to_double(*e, "halfwidth");
    if (!(config.halfwidth > 0.0)) violate(e->line, "halfwidth must be positive");
  } else {
    fail(scene->line, "[scene] needs halfwidth");
  }
  if (Entry* e = find(*scene, "halfcount")) {
    const long long v = to_integer(*e, "halfcount");
    if (v < 1) violate(e->line, "halfcount must be at least 1");
    config.halfcount = static_cast<int>(v);
  } else {
    fail(scene->line, "[scene] needs halfcount");
  }
  if (Entry* e = find(*scene, "rescale")) {
    config.rescale = to_double(*e, "rescale");
    if (!(config.rescale > 0.0)) violate(e->line, "rescale must be positive");
  }
  reject_unused("scene", *scene);

  // Terms must be contiguous from term.0.
  for (int t = 0;; ++t) {
    const std::string name = "term." + std::to_string(t);
    Section* sec = section(name.c_str());
    if (!sec) break;
    config.terms.push_back(parse_term(name, *sec));
    reject_unused(name, *sec);
  }
  if (config.terms.empty()) throw ConfigError("at least section [term.0] is required");

  if (Section* sec = section("quadrature")) {
    if (Entry* e = find(*sec, "directions")) {
      const long long v = to_integer(*e, "directions");
      if (v < 2) violate(e->line, "directions must be at least 2");
      config.quadrature = static_cast<int>(v);
    }
    reject_unused("quadrature", *sec);
  }
  if (Section* sec = section("modes")) {
    if (Entry* e = find(*sec, "count")) {
      const long long v = to_integer(*e, "count");
      if (v < 2 || v % 2 != 0) violate(e->line, "mode count must be even and at least 2");
      config.modes = static_cast<int>(v);
    }
    reject_unused("modes", *sec);
  }
  if (Section* sec = section("forward")) {
    if (Entry* e = find(*sec, "tolerance")) {
      config.forward.tolerance = to_double(*e, "tolerance");
      if (!(config.forward.tolerance > 0.0)) violate(e->line, "tolerance must be positive");
    }
    if (Entry* e = find(*sec, "max_sweeps")) {
      const long long v = to_integer(*e, "max_sweeps");
      if (v < 1) violate(e->line, "max_sweeps must be at least 1");
      config.forward.max_sweeps = static_cast<int>(v);
    }
    reject_unused("forward", *sec);
  }
  if (Section* sec = section("krylov")) {
    if (Entry* e = find(*sec, "tolerance")) {
      config.krylov.tolerance = to_double(*e, "tolerance");
      if (!(config.krylov.tolerance > 0.0)) violate(e->line, "tolerance must be positive");
    }
    if (Entry* e = find(*sec, "max_iterations")) {
      const long long v = to_integer(*e, "max_iterations");
      if (v < 1) violate(e->line, "max_iterations must be at least 1");
      config.krylov.max_iterations = static_cast<int>(v);
    }
    if (Entry* e = find(*sec, "restart")) {
      const long long v = to_integer(*e, "restart");
      if (v < 1) violate(e->line, "restart must be at least 1");
      config.krylov.restart = static_cast<int>(v);
    }
    reject_unused("krylov", *sec);
  }
  if (Section* sec = section("reconstruction")) {
    if (Entry* e = find(*sec, "kind")) {
      if (e->value == "factorization") config.kind = ReconKind::Factorization;
      else if (e->value == "monotonicity") config.kind = ReconKind::Monotonicity;
      else if (e->value == "both") config.kind = ReconKind::Both;
      else fail(e->line, "kind must be factorization, monotonicity, or both");
    }
    if (Entry* e = find(*sec, "norm")) {
      config.norm_constraint = to_double(*e, "norm");
      if (!(config.norm_constraint > 0.0)) violate(e->line, "norm must be positive");
    }
    if (Entry* e = find(*sec, "budget")) {
      const long long v = to_integer(*e, "budget");
      if (v < 0) violate(e->line, "budget must be nonnegative");
      config.budget = static_cast<int>(v);
    }
    if (Entry* e = find(*sec, "stride")) {
      const long long v = to_integer(*e, "stride");
      if (v < 1) violate(e->line, "stride must be at least 1");
      config.stride = static_cast<int>(v);
    }
    reject_unused("reconstruction", *sec);
  }
  if (Section* sec = section("output")) {
    if (Entry* e = find(*sec, "directory")) config.output_dir = e->value;
    reject_unused("output", *sec);
  }
  if (Section* sec = section("run")) {
    if (Entry* e = find(*sec, "seed")) {
      const long long v = to_integer(*e, "seed");
      if (v < 0) violate(e->line, "seed must be nonnegative");
      config.seed = static_cast<std::uint64_t>(v);
    }
    if (Entry* e = find(*sec, "threads")) {
      const long long v = to_integer(*e, "threads");
      if (v < 0) violate(e->line, "threads must be nonnegative");
      config.threads = static_cast<int>(v);
    }
    reject_unused("run", *sec);
  }

  // Any section not consumed above is unknown.
  for (const auto& [name, sec] : sections) {
    static const char* known[] = {"scene",  "quadrature", "modes", "forward",
                                  "krylov", "reconstruction", "output", "run"};
    bool ok = false;
    for (const char* k : known) ok = ok || name == k;
    if (name.rfind("term.", 0) == 0) {
      // Contiguity: term.N accepted only if every smaller index existed.
      const std::string idx = name.substr(5);
      bool numeric = !idx.empty();
      for (char c : idx) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
      if (!numeric) fail(sec.line, "malformed term section [" + name + "]");
      if (std::stoul(idx) < config.terms.size()) ok = true;
    }
    if (!ok) fail(sec.line, "unknown or non-contiguous section [" + name + "]");
  }

  if (config.quadrature < 2 * config.modes)
    throw InvariantViolation("quadrature directions must be at least twice the mode count");

  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

Grid2D config_grid(const RunConfig& config) {
  return Grid2D(config.halfwidth, config.halfcount);
}

double effective_norm_constraint(const RunConfig& config) {
  return config.norm_constraint / config.rescale;
}

Contrast build_contrast(const RunConfig& config) {
  const Grid2D grid = config_grid(config);

  // Terms sharing one geometry (the usual q0/q1 pair) reuse its weights.
  // Reserved up front so returned references survive later insertions.
  std::vector<std::pair<const TermConfig*, RealField>> covers;
  covers.reserve(config.terms.size());
  auto coverage_of = [&](const TermConfig& tc) -> const RealField& {
    for (const auto& [seen, cover] : covers) {
      const bool same = seen->shape == tc.shape && seen->center.x == tc.center.x &&
                        seen->center.y == tc.center.y && seen->radius == tc.radius &&
                        seen->scale == tc.scale && seen->vertices.size() == tc.vertices.size();
      bool verts = same;
      for (std::size_t p = 0; verts && p < tc.vertices.size(); ++p)
        verts = seen->vertices[p].x == tc.vertices[p].x && seen->vertices[p].y == tc.vertices[p].y;
      if (same && verts) return cover;
    }
    Shape shape = tc.shape == "disk"
                      ? Shape::disk(tc.center, tc.radius)
                      : (tc.shape == "kite" ? Shape::kite(tc.center, tc.scale)
                                            : Shape::polygon(tc.vertices));
    // Cell-coverage weights, not a binary mask: the staircase of an
    // indicator rasterization biases the shape mass by O(h) and stalls
    // grid convergence against continuum references.
    covers.emplace_back(&tc, coverage(shape, grid));
    return covers.back().second;
  };

  std::vector<ContrastTerm> terms;
  for (const TermConfig& tc : config.terms) {
    RealField coeff(grid.point_count(), 0.0);
    const double gain =
        tc.exponent > 0.0 ? tc.coefficient * std::pow(config.rescale, tc.exponent) : tc.coefficient;
    if (tc.shape == "raster") {
      const RealField raster = read_real_field_csv(tc.file, grid);
      for (std::size_t f = 0; f < coeff.size(); ++f) coeff[f] = gain * raster[f];
    } else {
      const RealField& cover = coverage_of(tc);
      for (std::size_t f = 0; f < coeff.size(); ++f) coeff[f] = gain * cover[f];
    }
    terms.push_back(ContrastTerm{std::move(coeff), tc.exponent});
  }
  return Contrast(grid, std::move(terms));
}

}  // namespace nlscat
