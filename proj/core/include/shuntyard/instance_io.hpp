#pragma once

// JSON (de)serialization for instances and plans. Loading validates the
// document against the schema and normalizes the initial state; the loaded
// instance is the replay baseline for every plan this toolkit emits.

#include <string>

#include "shuntyard/yard.hpp"

namespace shuntyard {

YardInstance parse_instance(const std::string& json_text, const std::string& name_hint = "");
YardInstance load_instance(const std::string& path);
std::string instance_to_json(const YardInstance& instance);
void save_instance(const YardInstance& instance, const std::string& path);

ShuntPlan parse_plan(const std::string& json_text);
ShuntPlan load_plan(const std::string& path);
std::string plan_to_json(const ShuntPlan& plan);
void save_plan(const ShuntPlan& plan, const std::string& path);

// Slurp/overwrite helpers shared by the CLI.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace shuntyard
