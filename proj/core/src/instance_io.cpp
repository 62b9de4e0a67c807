#include "shuntyard/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace shuntyard {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::vector<std::string>& problems) {
  std::string msg = "instance schema violation:";
  for (const auto& p : problems) {
    msg += "\n  - ";
    msg += p;
  }
  throw std::runtime_error(msg);
}

bool check_matrix(const json& m, int n, const char* label, std::vector<std::string>& problems) {
  if (!m.is_array() || static_cast<int>(m.size()) != n) {
    problems.push_back(std::string(label) + " must be a " + std::to_string(n) + "x" +
                       std::to_string(n) + " array");
    return false;
  }
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    const auto& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      problems.push_back(std::string(label) + " row " + std::to_string(i) + " has wrong width");
      ok = false;
      continue;
    }
    for (int j = 0; j < n; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) {
        problems.push_back(std::string(label) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] is not a number");
        ok = false;
      } else if (i != j && cell.get<double>() < 0.0) {
        problems.push_back(std::string(label) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] is negative");
        ok = false;
      }
    }
  }
  return ok;
}

std::vector<std::vector<double>> to_matrix(const json& m) {
  std::vector<std::vector<double>> out;
  for (const auto& row : m) out.push_back(row.get<std::vector<double>>());
  return out;
}

}  // namespace

YardInstance parse_instance(const std::string& json_text, const std::string& name_hint) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("instance is not valid JSON: ") + e.what());
  }

  std::vector<std::string> problems;
  YardInstance inst;

  if (!doc.is_object()) schema_fail({"top level must be an object"});

  if (!doc.contains("sided") || !doc["sided"].is_string() ||
      (doc["sided"] != "one" && doc["sided"] != "two")) {
    problems.push_back("\"sided\" must be \"one\" or \"two\"");
  } else {
    inst.sided = doc["sided"] == "one" ? Sided::One : Sided::Two;
  }

  if (!doc.contains("num_tracks") || !doc["num_tracks"].is_number_integer() ||
      doc["num_tracks"].get<int>() < 1) {
    problems.push_back("\"num_tracks\" must be a positive integer");
  } else {
    inst.num_tracks = doc["num_tracks"].get<int>();
  }

  if (!doc.contains("num_departure") || !doc["num_departure"].is_number_integer() ||
      doc["num_departure"].get<int>() < 0) {
    problems.push_back("\"num_departure\" must be a non-negative integer");
  } else {
    inst.num_departure = doc["num_departure"].get<int>();
    if (inst.num_tracks > 0 && inst.num_departure > inst.num_tracks)
      problems.push_back("\"num_departure\" exceeds \"num_tracks\"");
  }

  if (!doc.contains("cost") || !doc["cost"].is_object() || !doc["cost"].contains("mode")) {
    problems.push_back("\"cost\" must be an object with a \"mode\"");
  } else {
    const auto& cost = doc["cost"];
    const std::string mode = cost["mode"].is_string() ? cost["mode"].get<std::string>() : "";
    if (mode == "index_distance") {
      inst.cost = CostModel::index_distance();
    } else if (mode == "matrix") {
      std::vector<std::vector<double>> a, b;
      if (!cost.contains("A")) {
        problems.push_back("matrix cost mode requires table \"A\"");
      } else if (check_matrix(cost["A"], inst.num_tracks, "cost.A", problems)) {
        a = to_matrix(cost["A"]);
      }
      if (cost.contains("B")) {
        if (check_matrix(cost["B"], inst.num_tracks, "cost.B", problems)) b = to_matrix(cost["B"]);
      } else if (inst.sided == Sided::Two) {
        problems.push_back("two-sided matrix cost mode requires table \"B\"");
      }
      inst.cost = CostModel::matrix(std::move(a), std::move(b));
    } else {
      problems.push_back("cost mode must be \"index_distance\" or \"matrix\"");
    }
  }

  if (!doc.contains("tracks") || !doc["tracks"].is_array() ||
      static_cast<int>(doc["tracks"].size()) != inst.num_tracks) {
    problems.push_back("\"tracks\" must be an array with one entry per track");
  } else {
    std::unordered_set<std::string> seen_ids;
    inst.initial.tracks.resize(static_cast<std::size_t>(inst.num_tracks));
    for (int t = 0; t < inst.num_tracks; ++t) {
      const auto& track = doc["tracks"][static_cast<std::size_t>(t)];
      if (!track.is_array()) {
        problems.push_back("track " + std::to_string(t) + " must be an array of groups");
        continue;
      }
      for (const auto& g : track) {
        Group group;
        if (!g.is_object() || !g.contains("id") || !g["id"].is_string() ||
            g["id"].get<std::string>().empty()) {
          problems.push_back("track " + std::to_string(t) + " has a group without a usable id");
          continue;
        }
        group.id = g["id"].get<std::string>();
        if (!seen_ids.insert(group.id).second)
          problems.push_back("group id \"" + group.id + "\" appears more than once");
        if (!g.contains("len") || !g["len"].is_number_integer() || g["len"].get<int>() < 1) {
          problems.push_back("group \"" + group.id + "\" needs an integer \"len\" >= 1");
        } else {
          group.length = g["len"].get<int>();
        }
        if (!g.contains("dest") || g["dest"].is_null()) {
          group.destination = kFlexible;
        } else if (!g["dest"].is_number_integer()) {
          problems.push_back("group \"" + group.id + "\" has a non-integer \"dest\"");
        } else {
          group.destination = g["dest"].get<int>();
          if (group.destination < 0 || group.destination >= inst.num_departure)
            problems.push_back("group \"" + group.id + "\" destination " +
                               std::to_string(group.destination) + " is not a departure track");
        }
        inst.initial.tracks[static_cast<std::size_t>(t)].push_back(std::move(group));
      }
    }
  }

  if (doc.contains("meta") && doc["meta"].is_object()) {
    const auto& meta = doc["meta"];
    if (meta.contains("name") && meta["name"].is_string()) inst.meta.name = meta["name"];
    if (meta.contains("scale") && meta["scale"].is_string()) inst.meta.scale = meta["scale"];
    if (meta.contains("seed") && meta["seed"].is_number_unsigned())
      inst.meta.seed = meta["seed"].get<std::uint64_t>();
  }
  if (inst.meta.name.empty()) inst.meta.name = name_hint;

  if (!problems.empty()) schema_fail(problems);

  // The normalized initial state is the replay baseline: each group after
  // this point is one physical unit.
  inst.initial = normalize_groups(inst.initial);
  for (auto& track : inst.initial.tracks)
    for (auto& g : track) g.units = 1;
  return inst;
}

YardInstance load_instance(const std::string& path) {
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (name.size() > 5 && name.ends_with(".json")) name.resize(name.size() - 5);
  return parse_instance(read_text_file(path), name);
}

std::string instance_to_json(const YardInstance& instance) {
  json doc;
  doc["sided"] = instance.sided == Sided::One ? "one" : "two";
  doc["num_tracks"] = instance.num_tracks;
  doc["num_departure"] = instance.num_departure;
  if (instance.cost.mode == CostModel::Mode::IndexDistance) {
    doc["cost"] = {{"mode", "index_distance"}};
  } else {
    doc["cost"] = {{"mode", "matrix"}, {"A", instance.cost.a}};
    if (!instance.cost.b.empty()) doc["cost"]["B"] = instance.cost.b;
  }
  doc["tracks"] = json::array();
  for (const auto& track : instance.initial.tracks) {
    json jt = json::array();
    for (const Group& g : track) {
      json jg = {{"id", g.id}, {"len", g.length}};
      if (g.flexible()) {
        jg["dest"] = nullptr;
      } else {
        jg["dest"] = g.destination;
      }
      jt.push_back(std::move(jg));
    }
    doc["tracks"].push_back(std::move(jt));
  }
  if (!instance.meta.name.empty() || !instance.meta.scale.empty()) {
    json meta;
    if (!instance.meta.name.empty()) meta["name"] = instance.meta.name;
    if (!instance.meta.scale.empty()) meta["scale"] = instance.meta.scale;
    meta["seed"] = instance.meta.seed;
    doc["meta"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

void save_instance(const YardInstance& instance, const std::string& path) {
  write_text_file(path, instance_to_json(instance));
}

ShuntPlan parse_plan(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("moves") || !doc["moves"].is_array())
    throw std::runtime_error("plan must be an object with a \"moves\" array");

  ShuntPlan plan;
  bool any_tag = false;
  for (const auto& jm : doc["moves"]) {
    Move m;
    if (!jm.contains("from") || !jm.contains("to") || !jm.contains("m"))
      throw std::runtime_error("plan move needs \"from\", \"m\" and \"to\"");
    m.from = jm["from"].get<int>();
    m.count = jm["m"].get<int>();
    m.to = jm["to"].get<int>();
    const std::string end = jm.value("end", std::string("A"));
    if (end != "A" && end != "B") throw std::runtime_error("plan move end must be \"A\" or \"B\"");
    m.end = end == "A" ? End::A : End::B;
    m.cost = jm.value("cost", 0.0);
    plan.moves.push_back(m);
    plan.tags.push_back(jm.value("phase", std::string()));
    any_tag = any_tag || !plan.tags.back().empty();
  }
  if (!any_tag) plan.tags.clear();
  plan.total_cost = doc.value("total_cost", 0.0);
  plan.makespan = doc.value("makespan", 0);
  return plan;
}

ShuntPlan load_plan(const std::string& path) { return parse_plan(read_text_file(path)); }

std::string plan_to_json(const ShuntPlan& plan) {
  json doc;
  doc["moves"] = json::array();
  int t_a = 0, t_b = 0;
  for (std::size_t i = 0; i < plan.moves.size(); ++i) {
    const Move& m = plan.moves[i];
    json jm;
    jm["t"] = m.end == End::A ? ++t_a : ++t_b;
    jm["end"] = std::string(1, end_name(m.end));
    jm["from"] = m.from;
    jm["m"] = m.count;
    jm["to"] = m.to;
    jm["cost"] = m.cost;
    if (i < plan.tags.size() && !plan.tags[i].empty()) jm["phase"] = plan.tags[i];
    doc["moves"].push_back(std::move(jm));
  }
  doc["total_cost"] = plan.total_cost;
  doc["makespan"] = plan.makespan;
  return doc.dump(2) + "\n";
}

void save_plan(const ShuntPlan& plan, const std::string& path) {
  write_text_file(path, plan_to_json(plan));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace shuntyard
