#include "bridgekit/score_table.hpp"

#include <istream>
#include <ostream>

#include "bridgekit/csv.hpp"

namespace bridgekit {

void ScoreTable::set(const std::string& metric, std::vector<double> values) {
  metrics_[metric] = std::move(values);
}

const std::vector<double>& ScoreTable::values(const std::string& metric) const {
  auto it = metrics_.find(metric);
  if (it == metrics_.end()) throw InputError("unknown metric: " + metric);
  return it->second;
}

std::vector<std::string> ScoreTable::metric_names() const {
  std::vector<std::string> out;
  for (const auto& [name, v] : metrics_) out.push_back(name);
  return out;
}

void ScoreTable::write_csv(std::ostream& out, const SocialGraph& g) const {
  out << "user,metric,value\n";
  for (const auto& [metric, values] : metrics_) {
    for (UserId u = 0; u < values.size(); ++u)
      out << g.ids().name(u) << ',' << metric << ',' << csv::format_double(values[u]) << '\n';
  }
}

ScoreTable ScoreTable::read_csv(std::istream& in, const SocialGraph& g) {
  ScoreTable table;
  std::map<std::string, std::vector<double>> metrics;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "user,metric,value")
        throw InputError("line 1: expected header 'user,metric,value'");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 3)
      throw InputError("line " + std::to_string(line_no) + ": expected 3 fields");
    UserId u = g.user(std::string(fields[0]));
    if (u == kInvalidUser)
      throw InputError("line " + std::to_string(line_no) + ": unknown user '" +
                       std::string(fields[0]) + "'");
    auto& vec = metrics[std::string(fields[1])];
    if (vec.empty()) vec.resize(g.node_count(), 0.0);
    vec[u] = csv::parse_double(fields[2], line_no, "value");
  }
  for (auto& [name, vec] : metrics) table.set(name, std::move(vec));
  return table;
}

}  // namespace bridgekit
