#include "output.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

#include "galsum/error.hpp"
#include "galsum/numeric.hpp"

namespace galsum::cli {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "pretty") return Format::pretty;
  throw ValidationError("--format must be csv, json or pretty");
}

Json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return v.str();
}

Json set_json(const nt::IntegerSet& M) {
  Json a = Json::array();
  for (const auto& m : M) a.push_back(big(m.value()));
  return a;
}

namespace {

bool is_table(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& r) { return r.is_object(); });
}

std::string scalar(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_float: return format_double(v.get<double>());
    case Json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case Json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case Json::value_t::string: return v.get<std::string>();
    case Json::value_t::array: {
      std::string s;
      for (const auto& x : v) {
        if (!s.empty()) s += ';';
        s += x.is_structured() ? x.dump() : scalar(x);
      }
      return s;
    }
    default: return v.dump();
  }
}

std::string csv_cell(const Json& v) {
  auto s = scalar(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> columns(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  return cols;
}

void csv_table(const Json& rows, std::ostream& os) {
  const auto cols = columns(rows);
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ',';
      if (r.contains(cols[c])) os << csv_cell(r[cols[c]]);
    }
    os << '\n';
  }
}

void pretty_table(const Json& rows, std::ostream& os, const std::string& indent) {
  const auto cols = columns(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> w(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) w[c] = cols[c].size();
  for (const auto& r : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(r.contains(cols[c]) ? scalar(r[cols[c]]) : "");
      w[c] = std::max(w[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    os << indent;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      os << line[c];
      if (c + 1 < cols.size()) os << std::string(w[c] - line[c].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

}  // namespace

void render(const Json& doc, Format f, std::ostream& os) {
  if (f == Format::json) {
    os << doc.dump(2) << '\n';
    return;
  }
  if (is_table(doc)) {
    f == Format::csv ? csv_table(doc, os) : pretty_table(doc, os, "");
    return;
  }
  if (!doc.is_object()) {
    os << scalar(doc) << '\n';
    return;
  }
  Json head = Json::array({Json::object()});
  std::vector<std::pair<std::string, const Json*>> subs;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (is_table(it.value()))
      subs.emplace_back(it.key(), &it.value());
    else if (it.value().is_object())
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) head[0][it.key() + "." + jt.key()] = jt.value();
    else
      head[0][it.key()] = it.value();
  }
  if (f == Format::csv) {
    csv_table(head, os);
    for (auto& [name, rows] : subs) {
      os << "\n# " << name << '\n';
      csv_table(*rows, os);
    }
    return;
  }
  std::size_t w = 0;
  for (auto it = head[0].begin(); it != head[0].end(); ++it) w = std::max(w, it.key().size());
  for (auto it = head[0].begin(); it != head[0].end(); ++it)
    os << it.key() << std::string(w - it.key().size() + 2, ' ') << scalar(it.value()) << '\n';
  for (auto& [name, rows] : subs) {
    os << '\n' << name << ":\n";
    pretty_table(*rows, os, "  ");
  }
}

}  // namespace galsum::cli
