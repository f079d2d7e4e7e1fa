// Copyright 2026 The slimslide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "slimslide/io.hpp"

namespace slimslide::cli {

void emit_report(const GlobalOptions& g, const std::string& text) {
  if (g.report_file) {
    write_text_file(*g.report_file, text);
  } else {
    std::cout << text;
    std::cout.flush();
  }
}

namespace {
std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string flat_csv(const nlohmann::json& object) {
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : object.items()) {
    if (!first) {
      head << ',';
      row << ',';
    }
    first = false;
    head << csv_field(key);
    if (value.is_string()) {
      row << csv_field(value.get<std::string>());
    } else if (!value.is_null()) {
      row << csv_field(value.dump());
    }
  }
  return head.str() + "\n" + row.str() + "\n";
}

void note(const GlobalOptions& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace slimslide::cli
