#include "igam/edge_list.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "igam/errors.hpp"

namespace igam {

namespace {

bool is_separator(char ch) { return ch == ' ' || ch == '\t' || ch == ',' || ch == '\r' || ch == ';'; }

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_separator(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_id(const std::string& token, long long& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size() && value >= 0;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string EdgeListData::name_of(node_t v) const {
  return names.empty() ? std::to_string(v) : names[v];
}

EdgeListData parse_edge_list(std::istream& in, IdMode mode) {
  struct Row {
    std::string a, b;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool all_integer = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    auto fields = split_fields(line);
    if (fields.size() < 2) throw ParseError("expected two node ids", lineno);
    long long tmp;
    if (!parse_id(fields[0], tmp) || !parse_id(fields[1], tmp)) {
      if (mode == IdMode::Integer) throw ParseError("non-integer node id '" + fields[0] + "'", lineno);
      all_integer = false;
    }
    rows.push_back({std::move(fields[0]), std::move(fields[1]), lineno});
  }

  EdgeListData data;
  data.edges.reserve(rows.size());
  const bool intern = mode == IdMode::Intern || (mode == IdMode::Auto && !all_integer);
  if (!intern) {
    std::size_t n = 0;
    for (const auto& r : rows) {
      long long a = 0, b = 0;
      parse_id(r.a, a);
      parse_id(r.b, b);
      if (a > std::numeric_limits<node_t>::max() || b > std::numeric_limits<node_t>::max())
        throw ParseError("node id exceeds supported range", r.line);
      data.edges.push_back({static_cast<node_t>(a), static_cast<node_t>(b)});
      n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(a, b)) + 1);
    }
    data.node_count = n;
    return data;
  }
  std::unordered_map<std::string, node_t> ids;
  auto intern_id = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<node_t>(data.names.size()));
    if (inserted) data.names.push_back(token);
    return it->second;
  };
  for (const auto& r : rows) {
    node_t a = intern_id(r.a);
    node_t b = intern_id(r.b);
    data.edges.push_back({a, b});
  }
  data.node_count = data.names.size();
  return data;
}

EdgeListData read_edge_list(const std::filesystem::path& path, IdMode mode) {
  auto in = open_in(path);
  return parse_edge_list(in, mode);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

void write_heights(std::ostream& out, std::span<const int> heights) {
  for (std::size_t v = 0; v < heights.size(); ++v) out << v << ' ' << heights[v] << '\n';
}

void write_heights(std::ostream& out, std::span<const double> heights) {
  char buf[64];
  for (std::size_t v = 0; v < heights.size(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g", heights[v]);
    out << v << ' ' << buf << '\n';
  }
}

void write_heights(const std::filesystem::path& path, std::span<const int> heights) {
  auto out = open_out(path);
  write_heights(out, heights);
}

void write_heights(const std::filesystem::path& path, std::span<const double> heights) {
  auto out = open_out(path);
  write_heights(out, heights);
}

std::vector<int> read_heights(const std::filesystem::path& path, std::size_t n) {
  auto in = open_in(path);
  std::vector<int> h(n, -1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    long long v = 0, height = 0;
    if (fields.size() < 2 || !parse_id(fields[0], v) || !parse_id(fields[1], height))
      throw ParseError("expected 'node_id height'", lineno);
    if (static_cast<std::size_t>(v) >= n) throw ParseError("node id out of range", lineno);
    h[v] = static_cast<int>(height);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (h[v] < 0) throw MalformedInput("missing height for node " + std::to_string(v));
  return h;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace igam
