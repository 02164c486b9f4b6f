#include "mtrans/io.hpp"

#include "mtrans/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mtrans {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) {
    throw ParseError(where + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ParseError("unknown key \"" + key + "\" in " + where);
    }
  }
}

std::vector<int> int_list(const json& value, const std::string& what) {
  if (!value.is_array()) {
    throw ParseError(what + " must be an array of integers");
  }
  std::vector<int> out;
  for (const auto& x : value) {
    if (!x.is_number_integer()) {
      throw ParseError(what + " must be an array of integers");
    }
    out.push_back(x.get<int>());
  }
  return out;
}

std::int64_t integer(const json& value, const std::string& what) {
  if (!value.is_number_integer()) {
    throw ParseError(what + " must be an integer");
  }
  return value.get<std::int64_t>();
}

std::string join(const std::vector<int>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, char sep, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("bad integer \"" + item + "\" in " + what);
    }
  }
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Fields of "key=value" tokens after a fixed prefix.
std::map<std::string, std::string> header_fields(const std::string& line, const std::string& prefix) {
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError("expected header starting with \"" + prefix + "\"");
  }
  std::map<std::string, std::string> out;
  std::istringstream in(line.substr(prefix.size()));
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw ParseError("header token \"" + token + "\" is not key=value");
    }
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

std::string field(const std::map<std::string, std::string>& fields, const std::string& key) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ParseError("header lacks \"" + key + "=\"");
  }
  return it->second;
}

struct CountedVectors {
  Dimensions dims;
  std::vector<std::pair<ProfileVector, std::int64_t>> rows;
};

std::string format_counted(const std::string& kind, const Dimensions& dims,
                           const std::vector<std::pair<ProfileVector, std::int64_t>>& rows) {
  std::string out = "# " + kind + " n=" + join(dims.sizes(), ',') + "\n";
  for (const auto& [v, c] : rows) {
    out += join(v.coords(), '\t');
    out += '\t';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

CountedVectors parse_counted(std::string_view text, const std::string& kind) {
  const auto lines = lines_of(text);
  if (lines.empty()) {
    throw ParseError("empty " + kind + " file");
  }
  const auto fields = header_fields(trim(lines.front()), "# " + kind);
  CountedVectors out;
  try {
    out.dims = Dimensions(parse_int_list(field(fields, "n"), ',', "n"));
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
  std::optional<ProfileVector> previous;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string line = trim(lines[l]);
    if (line.empty()) continue;
    auto values = parse_int_list(line, '\t', kind + " line " + std::to_string(l + 1));
    if (static_cast<int>(values.size()) != out.dims.parts() + 1) {
      throw ParseError(kind + " line " + std::to_string(l + 1) + " needs " + std::to_string(out.dims.parts() + 1) +
                       " tab-separated fields");
    }
    const std::int64_t count = values.back();
    values.pop_back();
    ProfileVector v(std::move(values));
    if (!out.dims.contains(v)) {
      throw ParseError(kind + " line " + std::to_string(l + 1) + " has a coordinate out of range");
    }
    if (count < 1) {
      throw ParseError(kind + " line " + std::to_string(l + 1) + " has a count below 1");
    }
    if (previous && !(*previous < v)) {
      throw ParseError(kind + " lines must be strictly increasing (line " + std::to_string(l + 1) + ")");
    }
    previous = v;
    out.rows.emplace_back(std::move(v), count);
  }
  return out;
}

}  // namespace

ParamFile parse_params(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, {"n", "k", "L", "m", "gamma"}, "parameter file");
  for (const char* key : {"n", "k", "L"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("parameter file lacks \"") + key + "\"");
    }
  }
  ParamFile out;
  try {
    Dimensions dims(int_list(doc["n"], "n"));
    const int k = static_cast<int>(integer(doc["k"], "k"));
    if (!doc["L"].is_array()) {
      throw ParseError("\"L\" must be an array");
    }
    std::map<Subset, std::int64_t> bounds;
    for (const auto& entry : doc["L"]) {
      require_keys(entry, {"P", "value"}, "an \"L\" entry");
      if (!entry.contains("P") || !entry.contains("value")) {
        throw ParseError("every \"L\" entry needs \"P\" and \"value\"");
      }
      Subset P = int_list(entry["P"], "P");
      std::sort(P.begin(), P.end());
      if (!bounds.emplace(P, integer(entry["value"], "value")).second) {
        throw ParseError("duplicate \"L\" entry for P = " + to_string(P));
      }
    }
    out.params = ParamSet(dims, k, std::move(bounds));
    if (doc.contains("m")) {
      auto m = int_list(doc["m"], "m");
      if (!(Dimensions::from_part_sizes(m) == dims)) {
        throw ParseError("\"m\" must equal \"n\" minus one in every part");
      }
      out.m = std::move(m);
    }
    if (doc.contains("gamma")) {
      if (!doc["gamma"].is_array()) {
        throw ParseError("\"gamma\" must be an array");
      }
      std::vector<GammaRow> rows;
      for (const auto& row : doc["gamma"]) {
        require_keys(row, {"A", "alpha"}, "a \"gamma\" row");
        if (!row.contains("A") || !row.contains("alpha") || !row["alpha"].is_array()) {
          throw ParseError("every \"gamma\" row needs \"A\" and an \"alpha\" array");
        }
        GammaRow parsed{integer(row["A"], "A"), {}};
        for (const auto& term : row["alpha"]) {
          require_keys(term, {"v", "c"}, "an \"alpha\" term");
          if (!term.contains("v") || !term.contains("c")) {
            throw ParseError("every \"alpha\" term needs \"v\" and \"c\"");
          }
          ProfileVector v(int_list(term["v"], "v"));
          if (!dims.contains(v)) {
            throw ParseError("gamma vector " + to_string(v) + " lies outside the box");
          }
          parsed.alpha[v] += integer(term["c"], "c");
        }
        rows.push_back(std::move(parsed));
      }
      out.gamma = GammaConstraint(std::move(rows));
    }
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  } catch (const RangeError& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string format_params(const ParamFile& file) {
  json doc;
  doc["n"] = file.params.dims().sizes();
  doc["k"] = file.params.k();
  json L = json::array();
  for (const auto& [P, value] : file.params.bounds()) L.push_back({{"P", P}, {"value", value}});
  doc["L"] = L;
  if (file.m) doc["m"] = *file.m;
  if (file.gamma) {
    json rows = json::array();
    for (const auto& row : file.gamma->rows()) {
      json alpha = json::array();
      for (const auto& [v, c] : row.alpha) alpha.push_back({{"v", v.coords()}, {"c", c}});
      rows.push_back({{"A", row.A}, {"alpha", alpha}});
    }
    doc["gamma"] = rows;
  }
  return doc.dump(2) + "\n";
}

std::string format_transversal(const MultiTransversal& t) {
  std::vector<std::pair<ProfileVector, std::int64_t>> rows(t.entries().begin(), t.entries().end());
  return format_counted("transversal", t.dims(), rows);
}

MultiTransversal parse_transversal(std::string_view text) {
  auto parsed = parse_counted(text, "transversal");
  MultiTransversal t(parsed.dims);
  for (const auto& [v, c] : parsed.rows) t.set(v, c);
  return t;
}

std::string format_profile(const ProfileMatrix& p) {
  std::vector<std::pair<ProfileVector, std::int64_t>> rows;
  for (std::size_t i = 0; i < p.counts().size(); ++i) {
    if (p.counts()[i] != 0) rows.emplace_back(p.dims().vector_at(i), p.counts()[i]);
  }
  return format_counted("profile", p.dims(), rows);
}

ProfileMatrix parse_profile(std::string_view text) {
  auto parsed = parse_counted(text, "profile");
  ProfileMatrix p(parsed.dims);
  for (const auto& [v, c] : parsed.rows) p.at(v) = c;
  return p;
}

std::string format_moa(const Moa& a) {
  std::string out = "MOA constraint=" + std::to_string(a.columns()) + " strength=" + std::to_string(a.strength) +
                    " levels=" + join(a.levels, ',') + " runs=" + std::to_string(a.rows.size()) + "\n";
  for (const auto& row : a.rows) out += join(row, ' ') + "\n";
  return out;
}

Moa parse_moa(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) {
    throw ParseError("empty MOA file");
  }
  const auto fields = header_fields(trim(lines.front()), "MOA");
  Moa a;
  const auto constraint = parse_int_list(field(fields, "constraint"), ',', "constraint");
  const auto strength = parse_int_list(field(fields, "strength"), ',', "strength");
  const auto runs = parse_int_list(field(fields, "runs"), ',', "runs");
  a.levels = parse_int_list(field(fields, "levels"), ',', "levels");
  if (constraint.size() != 1 || strength.size() != 1 || runs.size() != 1) {
    throw ParseError("constraint, strength and runs must be single integers");
  }
  if (constraint[0] != a.columns()) {
    throw ParseError("constraint does not match the number of levels");
  }
  for (const int n : a.levels) {
    if (n < 1) {
      throw ParseError("levels must be positive");
    }
  }
  a.strength = strength[0];
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string line = trim(lines[l]);
    if (line.empty()) continue;
    std::vector<int> row;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
      const auto value = parse_int_list(token, ',', "MOA row");
      row.push_back(value.at(0));
    }
    if (static_cast<int>(row.size()) != a.columns()) {
      throw ParseError("MOA line " + std::to_string(l + 1) + " has the wrong number of symbols");
    }
    for (int j = 0; j < a.columns(); ++j) {
      if (row[static_cast<std::size_t>(j)] < 0 || row[static_cast<std::size_t>(j)] >= a.levels[static_cast<std::size_t>(j)]) {
        throw ParseError("MOA line " + std::to_string(l + 1) + " has a symbol out of range");
      }
    }
    a.rows.push_back(std::move(row));
  }
  if (static_cast<int>(a.rows.size()) != runs[0]) {
    throw ParseError("MOA file declares " + std::to_string(runs[0]) + " runs but has " + std::to_string(a.rows.size()));
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << contents;
  if (!out) {
    throw Error("failed writing " + path);
  }
}

}  // namespace mtrans
