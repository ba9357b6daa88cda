#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xcomplex/equivariant.hpp"
#include "xcomplex/hom_crs.hpp"
#include "xcomplex/local_cohomology.hpp"

namespace xcomplex {

using Json = nlohmann::json;

/// Malformed input document: bad JSON, a missing field or a dangling name.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IntRows = std::vector<std::vector<Integer>>;

struct ModuleSpec {
  std::string group;
  std::vector<Integer> orders;
  std::vector<IntRows> generator_matrices;  // one per generator of the group
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

struct GSetSpec {
  std::string set, group;
  std::vector<std::vector<std::vector<int>>> act;  // [element][dim][id]
  friend bool operator==(const GSetSpec&, const GSetSpec&) = default;
};

struct LocalSystemSpec {
  std::string set;
  std::string module;                 // with labels
  std::vector<int> labels;
  std::vector<Integer> orders;        // with twists
  std::vector<IntRows> twists;
  friend bool operator==(const LocalSystemSpec&, const LocalSystemSpec&) = default;
};

struct MapSpec {
  std::string from, to;
  std::vector<std::vector<SimplexRef>> images;
  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

/// Coefficients over the orbit category, indexed like OrbitCategory.
struct OGModuleSpec {
  std::string group;
  std::vector<Integer> constant;             // used when values is empty
  std::vector<std::string> values;           // module name per subgroup
  std::vector<std::vector<int>> pi_maps;     // per orbit-category morphism
  std::vector<IntRows> module_maps;          // per orbit-category morphism
  friend bool operator==(const OGModuleSpec&, const OGModuleSpec&) = default;
};

struct EquivariantSystemSpec {
  std::string gset, coefficients;
  std::vector<std::vector<int>> omega;  // empty for constant coefficients
  friend bool operator==(const EquivariantSystemSpec&, const EquivariantSystemSpec&) = default;
};

struct TaskArgs {
  std::optional<std::string> group, module, set, system, gset, base, map, equivariant_system;
  std::optional<int> degree, max_dim, subgroup, low, high;
  std::vector<std::vector<int>> cover_a, cover_b;  // simplex ids per dimension
  bool constant_diagram = false;
  friend bool operator==(const TaskArgs&, const TaskArgs&) = default;
};

/// One input document. Groups and simplicial sets are stored expanded;
/// everything else as named specs resolved by build().
struct WorkbenchInput {
  std::optional<std::string> task;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, ModuleSpec> modules;
  std::map<std::string, SimplicialSet> sets;
  std::map<std::string, GSetSpec> gsets;
  std::map<std::string, LocalSystemSpec> local_systems;
  std::map<std::string, MapSpec> maps;
  std::map<std::string, OGModuleSpec> og_modules;
  std::map<std::string, EquivariantSystemSpec> equivariant_systems;
  TaskArgs args;
  /// Also compares group generators, which module matrices refer to.
  friend bool operator==(const WorkbenchInput& a, const WorkbenchInput& b);
};

/// Every structure of an input built and validated.
struct Workspace {
  std::map<std::string, PiModule> modules;
  std::map<std::string, GSimplicialSet> gsets;
  std::map<std::string, LocalSystem> local_systems;
  std::map<std::string, SimplicialMap> maps;
  std::map<std::string, OGModule> og_modules;
  std::map<std::string, EquivariantLocalSystem> equivariant_systems;
};

/// Parses a document; InputError carries the line and column of JSON syntax
/// errors.
WorkbenchInput parse_input(const std::string& text);
WorkbenchInput input_from_json(const Json& j);
Json to_json(const WorkbenchInput& in);

/// Throws ValidationError naming the structure that fails.
Workspace build(const WorkbenchInput& in);

struct RunOptions {
  std::optional<int> degree, max_dim;
  std::optional<std::uint64_t> seed;
};

struct Report {
  std::string task;
  Json results;
  std::vector<std::string> lines;  // human-readable summary
  std::vector<std::string> log;    // validators that ran
  bool verified = true;  // false when a verification task fails
  double seconds = 0;

  /// Timing appears in the text only, so the JSON is deterministic.
  std::string text() const;
  Json json() const;
};

extern const std::vector<std::string> kTasks;

/// Runs one task. Throws InputError or ValidationError on bad input.
Report run_task(const std::string& task, const WorkbenchInput& in, const RunOptions& opts);

}  // namespace xcomplex
