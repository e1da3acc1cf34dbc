#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridknot/grid_diagram.hpp"

namespace gridknot {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassLabel {
  int index = 0;
  std::string name;
};

/// The 36 knot types with up to eight crossings, each with one seed grid
/// diagram. The entry order fixes the classifier's output coordinates.
class ClassRegistry {
 public:
  struct Entry {
    ClassLabel label;
    GridDiagram seed;
    std::string source;
  };

  static ClassRegistry load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableError("cannot open knot table: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw TableError("bad knot table JSON: " + std::string(e.what()));
    }
    ClassRegistry reg;
    int index = 0;
    for (const auto& item : j) {
      Entry entry{{index, item.at("name").get<std::string>()},
                  diagram_from_json(item),
                  item.value("source", std::string())};
      reg.entries_.push_back(std::move(entry));
      ++index;
    }
    reg.self_test();
    return reg;
  }

  /// Resolution order: explicit path, $GRIDKNOT_DATA_DIR, compiled default.
  static ClassRegistry load_default() {
    if (const char* dir = std::getenv("GRIDKNOT_DATA_DIR"))
      return load(std::string(dir) + "/knots36.json");
#ifdef GRIDKNOT_DEFAULT_DATA_DIR
    return load(std::string(GRIDKNOT_DEFAULT_DATA_DIR) + "/knots36.json");
#else
    return load("data/knots36.json");
#endif
  }

  size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  const Entry& at(int index) const {
    if (index < 0 || index >= static_cast<int>(entries_.size()))
      throw TableError("class index out of range: " + std::to_string(index));
    return entries_[static_cast<size_t>(index)];
  }

  const Entry& find(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.label.name == name) return e;
    throw TableError("unknown knot class: " + name);
  }

  GridDiagram seed(const std::string& name) const { return find(name).seed; }
  ClassLabel label(const std::string& name) const { return find(name).label; }

  /// Structural invariants: the fixed 36-name order, valid seeds, the
  /// trivial unknot seed, and drawn crossings equal to the crossing number.
  void self_test() const {
    const std::vector<std::string> expected = expected_names();
    if (entries_.size() != expected.size())
      throw TableError("knot table must hold " + std::to_string(expected.size()) + " classes");
    for (size_t i = 0; i < entries_.size(); ++i) {
      const Entry& e = entries_[i];
      if (e.label.name != expected[i])
        throw TableError("class " + std::to_string(i) + " must be " + expected[i] +
                         ", got " + e.label.name);
      if (e.label.index != static_cast<int>(i)) throw TableError("bad class index");
      const int expected_crossings = crossing_number(e.label.name);
      if (crossing_count(e.seed) != expected_crossings)
        throw TableError(e.label.name + " seed draws " +
                         std::to_string(crossing_count(e.seed)) + " crossings, expected " +
                         std::to_string(expected_crossings));
    }
    if (entries_[0].seed != GridDiagram::validate({1, 2}, {2, 1}))
      throw TableError("0_1 seed must be the trivial diagram");
  }

  static int crossing_number(const std::string& name) {
    return std::atoi(name.substr(0, name.find('_')).c_str());
  }

  static std::vector<std::string> expected_names() {
    std::vector<std::string> names = {"0_1", "3_1", "4_1", "5_1", "5_2"};
    for (int k : {6, 7, 8}) {
      const int count = k == 6 ? 3 : k == 7 ? 7 : 21;
      for (int j = 1; j <= count; ++j)
        names.push_back(std::to_string(k) + "_" + std::to_string(j));
    }
    return names;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace gridknot
