#include "xcomplex/workbench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace xcomplex {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

template <class T>
T as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    fail(where, std::string("wrong type (") + e.what() + ")");
  }
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const std::string& kind) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError("unknown " + kind + " '" + name + "'");
  return it->second;
}

IntMatrix to_matrix(const IntRows& rows, int ncols) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != ncols) throw ValidationError("matrix rows have unequal lengths");
    for (int c = 0; c < ncols; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][c];
  }
  return m;
}

SimplexRef parse_ref(const Json& j, int dim, const std::string& where) {
  if (j.is_number_integer()) return SimplexRef::nondegenerate(dim, j.get<int>());
  SimplexRef r;
  r.nd_dim = as<int>(field(j, "dim", where), where);
  r.id = as<int>(field(j, "id", where), where);
  r.surjection = as<std::vector<int>>(field(j, "surjection", where), where);
  if (r.dim() != dim) fail(where, "simplex has the wrong dimension");
  return r;
}

Json ref_json(const SimplexRef& r) {
  if (!r.degenerate()) return r.id;
  return Json{{"dim", r.nd_dim}, {"id", r.id}, {"surjection", r.surjection}};
}

FiniteGroup parse_group(const Json& j, const std::string& where) {
  if (j.contains("cyclic")) return FiniteGroup::cyclic(as<int>(j["cyclic"], where));
  if (j.contains("symmetric")) return FiniteGroup::symmetric(as<int>(j["symmetric"], where));
  if (j.contains("trivial")) return FiniteGroup::trivial();
  if (j.contains("table")) {
    FiniteGroup g = FiniteGroup::from_table(as<std::vector<std::vector<int>>>(j["table"], where));
    if (j.contains("generators")) g = g.with_generators(as<std::vector<int>>(j["generators"], where));
    return g;
  }
  if (j.contains("permutations")) {
    const Json& p = j["permutations"];
    return FiniteGroup::from_permutations(as<int>(field(p, "degree", where), where),
                                          as<std::vector<std::vector<int>>>(field(p, "generators", where), where));
  }
  fail(where, "a group needs one of cyclic, symmetric, trivial, table, permutations");
}

SimplicialSet parse_set(const Json& j, const std::string& where) {
  if (j.contains("builtin")) {
    std::string b = as<std::string>(j["builtin"], where);
    int n = j.contains("n") ? as<int>(j["n"], where) : 0;
    if (b == "point") return SimplicialSet::point();
    if (b == "points") return SimplicialSet::points(n);
    if (b == "minimal_circle") return SimplicialSet::minimal_circle();
    if (b == "polygon") return SimplicialSet::polygon(n);
    if (b == "standard_simplex") return SimplicialSet::standard_simplex(n);
    if (b == "torus") return SimplicialSet::torus();
    if (b == "sphere_quotient") return SimplicialSet::sphere_quotient(n);
    fail(where, "unknown builtin '" + b + "'");
  }
  SimplicialSet s = SimplicialSet::points(as<int>(field(j, "vertices", where), where));
  if (j.contains("faces")) {
    const Json& dims = j["faces"];
    if (!dims.is_array()) fail(where, "'faces' must be an array");
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const int d = static_cast<int>(k) + 1;
      for (const auto& simplex : dims[k]) {
        std::vector<SimplexRef> faces;
        for (const auto& f : simplex) faces.push_back(parse_ref(f, d - 1, where));
        s.add_simplex(d, std::move(faces));
      }
    }
  }
  s.validate();
  return s;
}

Json set_json(const SimplicialSet& s) {
  Json faces = Json::array();
  for (int d = 1; d <= s.dimension(); ++d) {
    Json level = Json::array();
    for (int i = 0; i < s.count(d); ++i) {
      Json simplex = Json::array();
      for (const auto& f : s.faces(d, i)) simplex.push_back(ref_json(f));
      level.push_back(simplex);
    }
    faces.push_back(level);
  }
  return Json{{"vertices", s.count(0)}, {"faces", faces}};
}

std::vector<std::vector<SimplexRef>> parse_images(const Json& j, const SimplicialSet& from, const std::string& where) {
  std::vector<std::vector<SimplexRef>> images;
  if (j.contains("constant")) return SimplicialMap::constant(from, as<int>(j["constant"], where)).images;
  const Json& dims = field(j, "images", where);
  for (std::size_t d = 0; d < dims.size(); ++d) {
    images.emplace_back();
    for (const auto& r : dims[d]) images.back().push_back(parse_ref(r, static_cast<int>(d), where));
  }
  return images;
}

}  // namespace

WorkbenchInput input_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("the document must be a JSON object");
  WorkbenchInput in;
  if (j.contains("task")) in.task = as<std::string>(j["task"], "task");
  auto section = [&](const char* key) -> const Json& {
    static const Json empty = Json::object();
    auto it = j.find(key);
    if (it == j.end()) return empty;
    if (!it->is_object()) throw InputError(std::string("'") + key + "' must be an object keyed by name");
    return *it;
  };
  for (const auto& [name, g] : section("groups").items()) {
    try {
      in.groups[name] = parse_group(g, "group '" + name + "'");
    } catch (const ValidationError& e) {
      throw ValidationError("group '" + name + "': " + e.what());
    }
  }
  for (const auto& [name, s] : section("sets").items()) {
    try {
      in.sets[name] = parse_set(s, "set '" + name + "'");
    } catch (const ValidationError& e) {
      throw ValidationError("set '" + name + "': " + e.what());
    }
  }
  for (const auto& [name, m] : section("modules").items()) {
    std::string w = "module '" + name + "'";
    ModuleSpec spec;
    spec.group = as<std::string>(field(m, "group", w), w);
    spec.orders = as<std::vector<Integer>>(field(m, "orders", w), w);
    spec.generator_matrices = as<std::vector<IntRows>>(field(m, "generators", w), w);
    in.modules[name] = spec;
  }
  for (const auto& [name, g] : section("gsets").items()) {
    std::string w = "gset '" + name + "'";
    GSetSpec spec;
    spec.set = as<std::string>(field(g, "set", w), w);
    spec.group = as<std::string>(field(g, "group", w), w);
    const SimplicialSet& x = lookup(in.sets, spec.set, "set");
    const FiniteGroup& grp = lookup(in.groups, spec.group, "group");
    try {
      if (g.contains("elements")) {
        spec.act = as<std::vector<std::vector<std::vector<int>>>>(g["elements"], w);
      } else if (g.contains("generators")) {
        spec.act = GSimplicialSet::from_generators(
                       x, grp, as<std::vector<std::vector<std::vector<int>>>>(g["generators"], w))
                       .table();
      } else {
        spec.act = GSimplicialSet::trivial(x, grp).table();
      }
    } catch (const ValidationError& e) {
      throw ValidationError(w + ": " + e.what());
    }
    in.gsets[name] = spec;
  }
  for (const auto& [name, l] : section("local_systems").items()) {
    std::string w = "local system '" + name + "'";
    LocalSystemSpec spec;
    spec.set = as<std::string>(field(l, "set", w), w);
    if (l.contains("module")) {
      spec.module = as<std::string>(l["module"], w);
      spec.labels = as<std::vector<int>>(field(l, "labels", w), w);
    } else {
      spec.orders = as<std::vector<Integer>>(field(l, "orders", w), w);
      spec.twists = as<std::vector<IntRows>>(field(l, "twists", w), w);
    }
    in.local_systems[name] = spec;
  }
  for (const auto& [name, m] : section("maps").items()) {
    std::string w = "map '" + name + "'";
    MapSpec spec;
    spec.from = as<std::string>(field(m, "from", w), w);
    spec.to = as<std::string>(field(m, "to", w), w);
    auto set_of = [&](const std::string& n) -> const SimplicialSet& {
      if (in.gsets.count(n)) return lookup(in.sets, in.gsets.at(n).set, "set");
      return lookup(in.sets, n, "set or gset");
    };
    spec.images = parse_images(m, set_of(spec.from), w);
    set_of(spec.to);
    in.maps[name] = spec;
  }
  for (const auto& [name, m] : section("og_modules").items()) {
    std::string w = "O_G-module '" + name + "'";
    OGModuleSpec spec;
    spec.group = as<std::string>(field(m, "group", w), w);
    if (m.contains("constant")) {
      spec.constant = as<std::vector<Integer>>(m["constant"], w);
    } else {
      spec.values = as<std::vector<std::string>>(field(m, "values", w), w);
      spec.pi_maps = as<std::vector<std::vector<int>>>(field(m, "pi_maps", w), w);
      spec.module_maps = as<std::vector<IntRows>>(field(m, "module_maps", w), w);
    }
    in.og_modules[name] = spec;
  }
  for (const auto& [name, e] : section("equivariant_systems").items()) {
    std::string w = "equivariant system '" + name + "'";
    EquivariantSystemSpec spec;
    spec.gset = as<std::string>(field(e, "gset", w), w);
    spec.coefficients = as<std::string>(field(e, "coefficients", w), w);
    if (e.contains("omega")) spec.omega = as<std::vector<std::vector<int>>>(e["omega"], w);
    in.equivariant_systems[name] = spec;
  }
  if (j.contains("args")) {
    const Json& a = j["args"];
    if (!a.is_object()) throw InputError("'args' must be an object");
    TaskArgs& t = in.args;
    auto str = [&](const char* k, std::optional<std::string>& out) {
      if (a.contains(k)) out = as<std::string>(a[k], std::string("args.") + k);
    };
    auto num = [&](const char* k, std::optional<int>& out) {
      if (a.contains(k)) out = as<int>(a[k], std::string("args.") + k);
    };
    str("group", t.group);
    str("module", t.module);
    str("set", t.set);
    str("system", t.system);
    str("gset", t.gset);
    str("base", t.base);
    str("map", t.map);
    str("equivariant_system", t.equivariant_system);
    num("degree", t.degree);
    num("max_dim", t.max_dim);
    num("subgroup", t.subgroup);
    num("low", t.low);
    num("high", t.high);
    if (a.contains("cover_a")) t.cover_a = as<std::vector<std::vector<int>>>(a["cover_a"], "args.cover_a");
    if (a.contains("cover_b")) t.cover_b = as<std::vector<std::vector<int>>>(a["cover_b"], "args.cover_b");
    if (a.contains("constant_diagram")) t.constant_diagram = as<bool>(a["constant_diagram"], "args.constant_diagram");
  }
  return in;
}

bool operator==(const WorkbenchInput& a, const WorkbenchInput& b) {
  if (a.groups.size() != b.groups.size()) return false;
  for (const auto& [name, g] : a.groups) {
    auto it = b.groups.find(name);
    if (it == b.groups.end() || !(it->second == g) || it->second.generators() != g.generators()) return false;
  }
  return a.task == b.task && a.modules == b.modules && a.sets == b.sets && a.gsets == b.gsets &&
         a.local_systems == b.local_systems && a.maps == b.maps && a.og_modules == b.og_modules &&
         a.equivariant_systems == b.equivariant_systems && a.args == b.args;
}

WorkbenchInput parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // the message already carries the line and column
    throw InputError(e.what());
  }
  return input_from_json(j);
}

Json to_json(const WorkbenchInput& in) {
  Json j = Json::object();
  if (in.task) j["task"] = *in.task;
  for (const auto& [name, g] : in.groups) j["groups"][name] = Json{{"table", g.table()}, {"generators", g.generators()}};
  for (const auto& [name, s] : in.sets) j["sets"][name] = set_json(s);
  for (const auto& [name, m] : in.modules)
    j["modules"][name] = Json{{"group", m.group}, {"orders", m.orders}, {"generators", m.generator_matrices}};
  for (const auto& [name, g] : in.gsets)
    j["gsets"][name] = Json{{"set", g.set}, {"group", g.group}, {"elements", g.act}};
  for (const auto& [name, l] : in.local_systems) {
    Json o{{"set", l.set}};
    if (!l.module.empty()) {
      o["module"] = l.module;
      o["labels"] = l.labels;
    } else {
      o["orders"] = l.orders;
      o["twists"] = l.twists;
    }
    j["local_systems"][name] = o;
  }
  for (const auto& [name, m] : in.maps) {
    Json images = Json::array();
    for (const auto& dim : m.images) {
      Json level = Json::array();
      for (const auto& r : dim) level.push_back(ref_json(r));
      images.push_back(level);
    }
    j["maps"][name] = Json{{"from", m.from}, {"to", m.to}, {"images", images}};
  }
  for (const auto& [name, m] : in.og_modules) {
    Json o{{"group", m.group}};
    if (m.values.empty()) {
      o["constant"] = m.constant;
    } else {
      o["values"] = m.values;
      o["pi_maps"] = m.pi_maps;
      o["module_maps"] = m.module_maps;
    }
    j["og_modules"][name] = o;
  }
  for (const auto& [name, e] : in.equivariant_systems) {
    Json o{{"gset", e.gset}, {"coefficients", e.coefficients}};
    if (!e.omega.empty()) o["omega"] = e.omega;
    j["equivariant_systems"][name] = o;
  }
  Json a = Json::object();
  const TaskArgs& t = in.args;
  auto put = [&](const char* k, const auto& v) {
    if (v) a[k] = *v;
  };
  put("group", t.group);
  put("module", t.module);
  put("set", t.set);
  put("system", t.system);
  put("gset", t.gset);
  put("base", t.base);
  put("map", t.map);
  put("equivariant_system", t.equivariant_system);
  put("degree", t.degree);
  put("max_dim", t.max_dim);
  put("subgroup", t.subgroup);
  put("low", t.low);
  put("high", t.high);
  if (!t.cover_a.empty()) a["cover_a"] = t.cover_a;
  if (!t.cover_b.empty()) a["cover_b"] = t.cover_b;
  if (t.constant_diagram) a["constant_diagram"] = true;
  if (!a.empty()) j["args"] = a;
  return j;
}

}  // namespace xcomplex

namespace xcomplex {

namespace {

template <class F>
auto named(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

std::vector<IntMatrix> to_matrices(const std::vector<IntRows>& rows, int k) {
  std::vector<IntMatrix> out;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != k) throw ValidationError("matrix must be " + std::to_string(k) + " x " + std::to_string(k));
    out.push_back(to_matrix(r, k));
  }
  return out;
}

const SimplicialSet& set_or_gset(const WorkbenchInput& in, const std::string& name) {
  if (in.gsets.count(name)) return in.sets.at(in.gsets.at(name).set);
  return lookup(in.sets, name, "set or gset");
}

}  // namespace

Workspace build(const WorkbenchInput& in) {
  Workspace ws;
  for (const auto& [name, m] : in.modules) {
    const FiniteGroup& g = lookup(in.groups, m.group, "group");
    ws.modules.emplace(name, named("module '" + name + "'", [&] {
      FgAbelianGroup a(m.orders);
      if (m.generator_matrices.size() != g.generators().size())
        throw ValidationError("need one matrix per group generator (" + std::to_string(g.generators().size()) + ")");
      return PiModule(g, a, to_matrices(m.generator_matrices, a.num_generators()));
    }));
  }
  for (const auto& [name, s] : in.gsets) {
    ws.gsets.emplace(name, named("gset '" + name + "'", [&] {
      return GSimplicialSet(lookup(in.sets, s.set, "set"), lookup(in.groups, s.group, "group"), s.act);
    }));
  }
  for (const auto& [name, l] : in.local_systems) {
    const SimplicialSet& x = lookup(in.sets, l.set, "set");
    ws.local_systems.emplace(name, named("local system '" + name + "'", [&] {
      if (!l.module.empty()) return LocalSystem::from_labels(x, lookup(ws.modules, l.module, "module"), l.labels);
      FgAbelianGroup a(l.orders);
      return LocalSystem::from_twists(x, a, to_matrices(l.twists, a.num_generators()));
    }));
  }
  for (const auto& [name, m] : in.maps) {
    ws.maps.emplace(name, named("map '" + name + "'", [&] {
      SimplicialMap f{m.images};
      f.validate(set_or_gset(in, m.from), set_or_gset(in, m.to));
      return f;
    }));
  }
  for (const auto& [name, m] : in.og_modules) {
    OrbitCategory oc(lookup(in.groups, m.group, "group"));
    ws.og_modules.emplace(name, named("O_G-module '" + name + "'", [&] {
      if (m.values.empty()) return OGModule::constant(oc, FgAbelianGroup(m.constant));
      OGModule out;
      if (static_cast<int>(m.values.size()) != oc.num_objects())
        throw ValidationError("need one module per subgroup (" + std::to_string(oc.num_objects()) + ")");
      if (static_cast<int>(m.module_maps.size()) != oc.num_morphisms())
        throw ValidationError("need one map per orbit-category morphism (" + std::to_string(oc.num_morphisms()) + ")");
      for (const auto& v : m.values) {
        out.values.push_back(lookup(ws.modules, v, "module"));
        out.pi.values.push_back(out.values.back().pi());
      }
      out.pi.maps = m.pi_maps;
      for (int i = 0; i < oc.num_morphisms(); ++i) {
        const FgAbelianGroup& from = out.module(oc.target(i));
        const FgAbelianGroup& to = out.module(oc.source(i));
        out.maps.emplace_back(from, to, to_matrix(m.module_maps[i], from.num_generators()));
      }
      out.validate(oc);
      return out;
    }));
  }
  for (const auto& [name, e] : in.equivariant_systems) {
    const GSimplicialSet& x = lookup(ws.gsets, e.gset, "gset");
    const OGModule& coeff = lookup(ws.og_modules, e.coefficients, "O_G-module");
    if (!(in.groups.at(in.og_modules.at(e.coefficients).group) == x.group()))
      throw ValidationError("equivariant system '" + name + "': coefficients over a different group");
    ws.equivariant_systems.emplace(name, named("equivariant system '" + name + "'", [&] {
      OrbitCategory oc(x.group());
      EquivariantLocalSystem l;
      l.coefficients = coeff;
      if (e.omega.empty()) {
        for (int h = 0; h < oc.num_objects(); ++h) {
          Subcomplex fx = fixed_points(x, oc.subgroup(h));
          l.omega.emplace_back(x.set().count(1), -1);
          for (int i = 0; i < fx.set.count(1); ++i) l.omega[h][fx.to_parent[1][i]] = coeff.pi.values[h].identity();
        }
      } else {
        l.omega = e.omega;
      }
      l.validate(oc, x);
      return l;
    }));
  }
  return ws;
}

}  // namespace xcomplex

namespace xcomplex {

const std::vector<std::string> kTasks = {"chi",     "hom",      "loop",    "nerve",   "localh",            "homclasses",
                                         "orbitcat", "bredon",  "suspend", "verify-suspension", "verify-mv", "bar"};

namespace {

Json group_json(const FgAbelianGroup& g) {
  return Json{{"rank", g.rank()}, {"torsion", g.torsion()}, {"text", g.to_string()}};
}

Json level_table(const CrossedComplex& c) {
  Json levels = Json::array();
  levels.push_back(Json{{"level", 0}, {"size", c.num_objects()}});
  std::vector<int> vertex;
  for (int v = 0; v < c.num_objects(); ++v) vertex.push_back(static_cast<int>(c.c1().hom(v, v).size()));
  levels.push_back(Json{{"level", 1}, {"size", c.c1().num_morphisms()}, {"vertex_group_orders", vertex}});
  for (int n = 2; n <= c.top(); ++n) {
    std::vector<int> orders;
    for (int v = 0; v < c.num_objects(); ++v) orders.push_back(c.level(n).group(v).order());
    levels.push_back(Json{{"level", n}, {"size", c.level_size(n)}, {"group_orders", orders}});
  }
  return levels;
}

void table_lines(const Json& levels, std::vector<std::string>& lines, const std::string& indent = "  ") {
  for (const auto& l : levels) {
    std::ostringstream os;
    os << indent << "level " << l["level"].get<int>() << ": " << l["size"].get<int>();
    if (l["level"] == 0) os << " objects";
    else if (l["level"] == 1) os << " morphisms, vertex groups " << l["vertex_group_orders"].dump();
    else os << " cells, groups " << l["group_orders"].dump();
    lines.push_back(os.str());
  }
}

std::vector<std::vector<bool>> mask_of(const SimplicialSet& x, const std::vector<std::vector<int>>& ids) {
  std::vector<std::vector<bool>> keep;
  for (int d = 0; d <= x.dimension(); ++d) {
    keep.emplace_back(x.count(d), false);
    if (d < static_cast<int>(ids.size()))
      for (int i : ids[d]) {
        if (i < 0 || i >= x.count(d)) throw ValidationError("cover refers to an unknown simplex");
        keep[d][i] = true;
      }
  }
  return keep;
}

class Runner {
 public:
  Runner(const WorkbenchInput& in, const RunOptions& opts, Report& r) : in_(in), opts_(opts), r_(r), ws_(build(in)) {
    for (const auto& [n, _] : in.groups) r_.log.push_back("group '" + n + "' ok");
    for (const auto& [n, _] : in.sets) r_.log.push_back("set '" + n + "' ok");
    for (const auto& [n, _] : ws_.modules) r_.log.push_back("module '" + n + "' ok");
    for (const auto& [n, _] : ws_.gsets) r_.log.push_back("gset '" + n + "' ok");
    for (const auto& [n, _] : ws_.local_systems) r_.log.push_back("local system '" + n + "' ok");
    for (const auto& [n, _] : ws_.maps) r_.log.push_back("map '" + n + "' ok");
    for (const auto& [n, _] : ws_.og_modules) r_.log.push_back("O_G-module '" + n + "' ok");
    for (const auto& [n, _] : ws_.equivariant_systems) r_.log.push_back("equivariant system '" + n + "' ok");
  }

  void run(const std::string& task) {
    if (task == "chi") chi_task();
    else if (task == "hom") hom_task();
    else if (task == "loop") loop_task();
    else if (task == "nerve") nerve_task();
    else if (task == "localh") localh_task();
    else if (task == "homclasses") homclasses_task();
    else if (task == "orbitcat") orbitcat_task();
    else if (task == "bredon") bredon_task();
    else if (task == "suspend") suspend_task();
    else if (task == "verify-suspension") verify_suspension_task();
    else if (task == "verify-mv") verify_mv_task();
    else if (task == "bar") bar_task();
    else throw InputError("unknown task '" + task + "'");
  }

 private:
  std::string need(const std::optional<std::string>& v, const char* key) const {
    if (!v) throw InputError("task '" + r_.task + "' needs args." + key);
    return *v;
  }
  std::optional<int> degree() const { return opts_.degree ? opts_.degree : in_.args.degree; }
  int need_degree() const {
    auto d = degree();
    if (!d) throw InputError("task '" + r_.task + "' needs a degree (--degree or args.degree)");
    return *d;
  }
  std::optional<int> max_dim() const { return opts_.max_dim ? opts_.max_dim : in_.args.max_dim; }

  // chi_phi(A, n) when a module is named, chi(pi, n) otherwise.
  CrossedComplex target_complex(int n, Json& info) const {
    if (in_.args.module) {
      const PiModule& m = lookup(ws_.modules, *in_.args.module, "module");
      ChiPhi c = chi_phi(m, n);
      bool fib = is_fibration(c.complex, c.base, c.p);
      info["fibration"] = fib;
      r_.log.push_back(std::string("projection to chi(pi,1) is ") + (fib ? "a fibration" : "not a fibration"));
      return c.complex;
    }
    const FiniteGroup& g = lookup(in_.groups, need(in_.args.group, "group or args.module"), "group");
    return chi(g, n);
  }

  void chi_task() {
    int n = need_degree();
    Json info;
    CrossedComplex c = target_complex(n, info);
    r_.results = info;
    r_.results["degree"] = n;
    r_.results["levels"] = level_table(c);
    r_.lines.push_back(std::string(in_.args.module ? "chi_phi(A, " : "chi(pi, ") + std::to_string(n) + ")");
    table_lines(r_.results["levels"], r_.lines);
  }

  void hom_task() {
    int n = need_degree();
    Json info;
    CrossedComplex c = target_complex(n, info);
    MappingComplex mc = crs_hom_z1(c, max_dim().value_or(-1));
    r_.results = info;
    r_.results["degree"] = n;
    r_.results["levels"] = level_table(mc.complex);
    r_.lines.push_back("CRS(chi(Z,1), target) for degree " + std::to_string(n));
    table_lines(r_.results["levels"], r_.lines);
  }

  void loop_task() {
    int n = need_degree();
    const PiModule& m = lookup(ws_.modules, need(in_.args.module, "module"), "module");
    bool ok = true;
    std::string why;
    Json loop_levels, shifted_levels;
    try {
      FibrewiseLoop f = fibrewise_loop(m, n);
      loop_levels = level_table(f.complex);
      shifted_levels = level_table(f.shifted.complex);
    } catch (const ValidationError& e) {
      ok = false;
      why = e.what();
    }
    r_.verified = ok;
    r_.results = Json{{"degree", n}, {"isomorphism", ok}};
    if (ok) {
      r_.results["loops"] = loop_levels;
      r_.results["shifted"] = shifted_levels;
      r_.lines.push_back("fibrewise loops of chi_phi(A, " + std::to_string(n) + ") ~ chi_phi(A, " + std::to_string(n - 1) + ")");
      table_lines(loop_levels, r_.lines);
    } else {
      r_.results["failure"] = why;
      r_.lines.push_back("identification failed: " + why);
    }
  }

  void nerve_task() {
    int n = need_degree();
    int d = max_dim().value_or(2);
    Json info;
    CrossedComplex c = target_complex(n, info);
    Nerve nv = nerve(c, d);
    nv.validate();
    r_.log.push_back("nerve simplicial identities ok");
    std::vector<int> counts, nd;
    for (int k = 0; k <= nv.top(); ++k) {
      counts.push_back(nv.count(k));
      nd.push_back(nv.nondegenerate_count(k));
    }
    r_.results = info;
    r_.results["degree"] = n;
    r_.results["max_dim"] = d;
    r_.results["simplices"] = counts;
    r_.results["nondegenerate"] = nd;
    r_.lines.push_back("nerve up to degree " + std::to_string(d));
    for (int k = 0; k <= nv.top(); ++k)
      r_.lines.push_back("  degree " + std::to_string(k) + ": " + std::to_string(counts[k]) + " simplices, " +
                         std::to_string(nd[k]) + " nondegenerate");
  }

  std::vector<int> degrees(int top) const {
    if (auto d = degree()) return {*d};
    std::vector<int> out;
    for (int n = 0; n <= top; ++n) out.push_back(n);
    return out;
  }

  void localh_task() {
    const std::string sys = need(in_.args.system, "system");
    const LocalSystem& l = lookup(ws_.local_systems, sys, "local system");
    const SimplicialSet& x = in_.sets.at(in_.local_systems.at(sys).set);
    AbCochainComplex cx = local_cochain_complex(x, l);
    r_.log.push_back("delta delta = 0 ok");
    r_.results["groups"] = Json::array();
    for (int n : degrees(x.dimension())) {
      FgAbelianGroup h = cohomology(cx, n);
      r_.results["groups"].push_back(Json{{"degree", n}, {"group", group_json(h)}});
      r_.lines.push_back("H^" + std::to_string(n) + " = " + h.to_string());
    }
  }

  void homclasses_task() {
    const std::string sys = need(in_.args.system, "system");
    const LocalSystem& l = lookup(ws_.local_systems, sys, "local system");
    const SimplicialSet& x = in_.sets.at(in_.local_systems.at(sys).set);
    r_.results["degrees"] = Json::array();
    for (int n : degrees(2)) {
      HomClassesResult hc = hom_classes_over(x, l, n);
      FgAbelianGroup h = local_h(x, l, n);
      bool match = static_cast<Integer>(hc.representatives.size()) == h.order();
      r_.verified = r_.verified && match;
      r_.results["degrees"].push_back(Json{{"degree", n},
                                           {"maps", hc.num_maps},
                                           {"classes", hc.representatives.size()},
                                           {"cohomology", group_json(h)},
                                           {"match", match}});
      r_.lines.push_back("n = " + std::to_string(n) + ": " + std::to_string(hc.num_maps) + " maps, " +
                         std::to_string(hc.representatives.size()) + " classes, H^n = " + h.to_string() +
                         (match ? "  [match]" : "  [MISMATCH]"));
    }
  }

  void orbitcat_task() {
    OrbitCategory oc(lookup(in_.groups, need(in_.args.group, "group"), "group"));
    Json subgroups = Json::array(), hom = Json::array();
    for (int h = 0; h < oc.num_objects(); ++h) {
      subgroups.push_back(oc.subgroup(h));
      std::vector<int> row;
      for (int k = 0; k < oc.num_objects(); ++k) row.push_back(static_cast<int>(oc.hom(h, k).size()));
      hom.push_back(row);
    }
    r_.results = Json{{"subgroups", subgroups}, {"hom_sizes", hom}, {"morphisms", oc.num_morphisms()}};
    r_.lines.push_back(std::to_string(oc.num_objects()) + " orbits, " + std::to_string(oc.num_morphisms()) + " morphisms");
    for (int h = 0; h < oc.num_objects(); ++h)
      r_.lines.push_back("  H" + std::to_string(h) + " = " + subgroups[h].dump() + "  |hom(H" + std::to_string(h) +
                         ", -)| = " + hom[h].dump());
  }

  void bredon_task() {
    const std::string name = need(in_.args.equivariant_system, "equivariant_system");
    const EquivariantLocalSystem& l = lookup(ws_.equivariant_systems, name, "equivariant system");
    const GSimplicialSet& x = ws_.gsets.at(in_.equivariant_systems.at(name).gset);
    BredonComplex bc = bredon_cochains(x, l);
    r_.log.push_back("compatible cochains closed under delta ok");
    r_.results["groups"] = Json::array();
    for (int n : degrees(x.set().dimension())) {
      FgAbelianGroup h = cohomology(bc.complex, n);
      r_.results["groups"].push_back(Json{{"degree", n}, {"group", group_json(h)}});
      r_.lines.push_back("H^" + std::to_string(n) + "_G = " + h.to_string());
    }
  }

  struct SuspensionData {
    const GSimplicialSet* x;
    const GSimplicialSet* k;
    const SimplicialMap* p;
  };
  SuspensionData suspension_data() const {
    return {&lookup(ws_.gsets, need(in_.args.gset, "gset"), "gset"),
            &lookup(ws_.gsets, need(in_.args.base, "base"), "gset"),
            &lookup(ws_.maps, need(in_.args.map, "map"), "map")};
  }

  void suspend_task() {
    auto d = suspension_data();
    FibrewiseSuspension s = fibrewise_suspension(*d.x, *d.k, *d.p);
    r_.log.push_back("suspension simplicial identities, action and projection ok");
    std::vector<int> counts;
    for (int k = 0; k <= s.set.set().dimension(); ++k) counts.push_back(s.set.set().count(k));
    r_.results = Json{{"nondegenerate", counts}};
    r_.lines.push_back("fibrewise suspension: nondegenerate simplices per dimension " + Json(counts).dump());
  }

  void verify_suspension_task() {
    auto d = suspension_data();
    const std::string name = need(in_.args.equivariant_system, "equivariant_system");
    const EquivariantLocalSystem& l = lookup(ws_.equivariant_systems, name, "equivariant system");
    if (in_.equivariant_systems.at(name).gset != *in_.args.base)
      throw InputError("the equivariant system must live on the base");
    std::vector<int> ns = degree() ? std::vector<int>{*degree()} : std::vector<int>{1, 2};
    r_.results["checks"] = Json::array();
    for (int n : ns) {
      SuspensionCheck c = verify_suspension_iso(*d.x, *d.k, *d.p, l, n);
      r_.verified = r_.verified && c.pass;
      r_.results["checks"].push_back(Json{{"degree", n},
                                          {"suspension", group_json(c.suspension)},
                                          {"lower", group_json(c.lower)},
                                          {"base", group_json(c.base)},
                                          {"pass", c.pass}});
      r_.lines.push_back("n = " + std::to_string(n) + ": H^n_G(SX) = " + c.suspension.to_string() +
                         ", H^{n-1}_G(X) + H^n_G(K) = " + c.lower.to_string() + " + " + c.base.to_string() +
                         (c.pass ? "  [pass]" : "  [FAIL]"));
    }
  }

  void verify_mv_task() {
    const std::string name = need(in_.args.equivariant_system, "equivariant_system");
    const EquivariantLocalSystem& l = lookup(ws_.equivariant_systems, name, "equivariant system");
    const GSimplicialSet& x = ws_.gsets.at(in_.equivariant_systems.at(name).gset);
    int lo = in_.args.low.value_or(degree().value_or(0));
    int hi = in_.args.high.value_or(degree().value_or(std::max(x.set().dimension(), 0)));
    MayerVietorisCheck mv = mayer_vietoris_check(x, l, mask_of(x.set(), in_.args.cover_a),
                                                 mask_of(x.set(), in_.args.cover_b), lo, hi);
    r_.verified = mv.pass;
    r_.results["nodes"] = Json::array();
    for (const auto& node : mv.nodes) {
      r_.results["nodes"].push_back(Json{{"degree", node.degree}, {"position", node.position}, {"exact", node.pass}});
      r_.lines.push_back("exact at H^" + std::to_string(node.degree) + "(" + node.position + "): " +
                         (node.pass ? "yes" : "NO"));
    }
    r_.results["pass"] = mv.pass;
  }

  void bar_task() {
    int d = max_dim().value_or(1);
    int h = in_.args.subgroup.value_or(0);
    OGDiagram u;
    OrbitCategory oc;
    if (in_.args.constant_diagram) {
      oc = OrbitCategory(lookup(in_.groups, need(in_.args.group, "group"), "group"));
      u = OGDiagram::constant(oc, lookup(in_.sets, need(in_.args.set, "set"), "set"));
    } else {
      const GSimplicialSet& x = lookup(ws_.gsets, need(in_.args.gset, "gset"), "gset");
      oc = OrbitCategory(x.group());
      u = OGDiagram::fixed_point_diagram(oc, x);
    }
    if (h < 0 || h >= oc.num_objects()) throw InputError("args.subgroup out of range");
    BarDiagonal bar = elmendorf_bar(oc, u, h, d);
    r_.log.push_back("bar diagonal simplicial identities ok");
    std::vector<int> counts;
    for (const auto& s : bar.simplices) counts.push_back(static_cast<int>(s.size()));
    r_.verified = bar.pi0_bijective;
    r_.results = Json{{"subgroup", oc.subgroup(h)},
                      {"simplices", counts},
                      {"components", bar.components},
                      {"target_components", bar.target_components},
                      {"pi0_bijective", bar.pi0_bijective}};
    r_.lines.push_back("bar diagonal simplices per degree " + Json(counts).dump());
    r_.lines.push_back("pi_0: " + std::to_string(bar.components) + " components onto " +
                       std::to_string(bar.target_components) + (bar.pi0_bijective ? "  [bijective]" : "  [NOT bijective]"));
  }

  const WorkbenchInput& in_;
  const RunOptions& opts_;
  Report& r_;
  Workspace ws_;
};

}  // namespace

Report run_task(const std::string& task, const WorkbenchInput& in, const RunOptions& opts) {
  if (std::find(kTasks.begin(), kTasks.end(), task) == kTasks.end()) throw InputError("unknown task '" + task + "'");
  Report r;
  r.task = task;
  r.results = Json::object();
  auto start = std::chrono::steady_clock::now();
  Runner runner(in, opts, r);
  runner.run(task);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string Report::text() const {
  std::ostringstream os;
  os << "task: " << task << "\n";
  for (const auto& l : lines) os << l << "\n";
  os << "validators: " << log.size() << " passed\n";
  for (const auto& l : log) os << "  " << l << "\n";
  os << "status: " << (verified ? "ok" : "FAILED") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "time: %.3f s\n", seconds);
  os << buf;
  return os.str();
}

Json Report::json() const { return Json{{"task", task}, {"results", results}, {"log", log}, {"verified", verified}}; }

}  // namespace xcomplex
