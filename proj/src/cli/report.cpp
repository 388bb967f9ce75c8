#include "relsamp/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "relsamp/error.hpp"

namespace relsamp::cli {

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v) {
    if (!row.is_object()) return false;
    for (const auto& [k, cell] : row.items()) {
      if (cell.is_structured()) return false;
    }
  }
  return true;
}

void render_table(std::ostream& out, const std::string& name, const Json& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [k, cell] : row.items()) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    }
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : columns) width.push_back(c.size());
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      line.push_back(row.contains(columns[i]) ? scalar_text(row[columns[i]]) : "-");
      width[i] = std::max(width[i], line.back().size());
    }
  }
  out << name << ":\n";
  const auto emit = [&](const std::vector<std::string>& line) {
    std::string text = " ";
    for (std::size_t i = 0; i < line.size(); ++i) {
      text += " " + line[i] + std::string(width[i] - line[i].size(), ' ');
    }
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << "\n";
  };
  emit(columns);
  for (const auto& line : cells) emit(line);
}

void render_object(std::ostream& out, const Json& obj, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      render_object(out, value, name);
    } else if (is_table(value)) {
      render_table(out, name, value);
    } else if (value.is_array()) {
      out << name << " = ";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ", " : "") << scalar_text(value[i]);
      }
      out << "\n";
    } else {
      out << name << " = " << scalar_text(value) << "\n";
    }
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

void require_finite(const Json& value, const std::string& path) {
  if (value.is_number_float()) {
    if (!std::isfinite(value.get<double>())) {
      throw Error(ErrorKind::Numerical, "non-finite value in " + path);
    }
  } else if (value.is_object()) {
    for (const auto& [k, v] : value.items()) require_finite(v, path + "." + k);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      require_finite(value[i], path + "[" + std::to_string(i) + "]");
    }
  }
}

Json report_json(const RunReport& report) {
  Json j = Json::object();
  j["tool"] = "relsamp";
  j["verb"] = report.verb;
  j["schema_version"] = report.config.schema_version;
  j["master_seed"] = report.config.master_seed;
  j["config"] = echo_config(report.config);
  for (const auto& [k, v] : report.sections.items()) j[k] = v;
  j["artifacts"] = report.artifacts;
  require_finite(j);
  return j;
}

std::string render_text(const RunReport& report) {
  std::ostringstream out;
  out << "relsamp " << report.verb << " report\n";
  out << "master_seed = " << report.config.master_seed << "\n";
  for (const auto& [name, section] : report.sections.items()) {
    out << "\n[" << name << "]\n";
    if (section.is_object()) {
      render_object(out, section, "");
    } else if (is_table(section)) {
      render_table(out, "rows", section);
    } else {
      out << scalar_text(section) << "\n";
    }
  }
  if (!report.artifacts.empty()) {
    out << "\n[artifacts]\n";
    for (const auto& a : report.artifacts) out << a << "\n";
  }
  out << "\n[config]\n";
  std::istringstream echo(echo_config(report.config));
  for (std::string line; std::getline(echo, line);) {
    out << (line.empty() ? "" : "  ") << line << "\n";
  }
  return out.str();
}

Json timings_json(const RunReport& report) {
  Json j = Json::object();
  j["verb"] = report.verb;
  Json stages = Json::object();
  double total = 0.0;
  for (const auto& [stage, seconds] : report.timings) {
    stages[stage] = seconds;
    total += seconds;
  }
  j["stages_seconds"] = stages;
  j["total_seconds"] = total;
  return j;
}

void write_report(const RunReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "report.json", report_json(report).dump(2) + "\n");
  write_text_file(out_dir / "report.txt", render_text(report));
  write_text_file(out_dir / "timings.json", timings_json(report).dump(2) + "\n");
  write_text_file(out_dir / "config.ini", echo_config(report.config));
}

}  // namespace relsamp::cli
