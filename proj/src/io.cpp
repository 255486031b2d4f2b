#include "infodist/io.hpp"

#include <fstream>
#include <sstream>

#include "infodist/error.hpp"

namespace infodist::io {

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& path, const std::string& what) {
  fail("FileFormat", source + ": " + (path.empty() ? std::string("<root>") : path) + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& source) {
  if (!j.is_object()) bad(source, "", "expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(source, name, "missing field");
  return *it;
}

int positive_int(const json& j, const char* name, const std::string& source) {
  const json& v = field(j, name, source);
  if (!v.is_number_integer() || v.get<long long>() <= 0) bad(source, name, "expected a positive integer");
  return v.get<int>();
}

// Flattens a nested array of the given shape into `out`, k outer.
void flatten(const json& j, const std::vector<int>& shape, std::size_t axis, const std::string& path,
             const std::string& source, std::vector<double>& out) {
  if (axis == shape.size()) {
    if (!j.is_number()) bad(source, path, "expected a number");
    out.push_back(j.get<double>());
    return;
  }
  if (!j.is_array()) bad(source, path, "expected an array");
  if (j.size() != static_cast<std::size_t>(shape[axis]))
    bad(source, path, "expected " + std::to_string(shape[axis]) + " entries, found " + std::to_string(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    flatten(j[i], shape, axis + 1, path + "[" + std::to_string(i) + "]", source, out);
}

std::vector<double> nested(const json& j, const char* name, const std::vector<int>& shape,
                           const std::string& source) {
  std::vector<double> out;
  flatten(field(j, name, source), shape, 0, name, source, out);
  return out;
}

json unflatten3(const std::vector<double>& v, int a, int b, int c) {
  json outer = json::array();
  for (int i = 0; i < a; ++i) {
    json mid = json::array();
    for (int k = 0; k < b; ++k) {
      json inner = json::array();
      for (int l = 0; l < c; ++l) inner.push_back(v[(static_cast<std::size_t>(i) * b + k) * c + l]);
      mid.push_back(std::move(inner));
    }
    outer.push_back(std::move(mid));
  }
  return outer;
}

// Re-tags domain errors raised by constructors with the source name.
template <class F>
auto wrap(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("FileFormat", source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileFormat", path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("FileFormat", path + ": cannot write file");
  out << j.dump(2) << "\n";
}

json to_json(const InformationStructure& u) {
  return json{{"states", u.state_labels()},
              {"signals1", u.signals1()},
              {"signals2", u.signals2()},
              {"probs", unflatten3(u.probs(), u.states(), u.signals1(), u.signals2())}};
}

json to_json(const Garbling& q) {
  json rows = json::array();
  for (int s = 0; s < q.source(); ++s) {
    json row = json::array();
    for (int t = 0; t < q.target(); ++t) row.push_back(q(s, t));
    rows.push_back(std::move(row));
  }
  return json{{"source", q.source()}, {"target", q.target()}, {"rows", rows}};
}

json to_json(const ZeroSumGame& g) {
  return json{{"states", g.states()},
              {"actions1", g.actions1()},
              {"actions2", g.actions2()},
              {"payoffs", unflatten3(g.payoffs(), g.states(), g.actions1(), g.actions2())}};
}

json to_json(const BimatrixGame& g) {
  const ZeroSumGame& a = g.g1;
  return json{{"states", a.states()},
              {"actions1", a.actions1()},
              {"actions2", a.actions2()},
              {"payoffs1", unflatten3(a.payoffs(), a.states(), a.actions1(), a.actions2())},
              {"payoffs2", unflatten3(g.g2.payoffs(), a.states(), a.actions1(), a.actions2())}};
}

InformationStructure structure_from_json(const json& j, const std::string& source) {
  const json& st = field(j, "states", source);
  if (!st.is_array() || st.empty()) bad(source, "states", "expected a non-empty array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (!st[i].is_string()) bad(source, "states[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(st[i].get<std::string>());
  }
  const int n1 = positive_int(j, "signals1", source);
  const int n2 = positive_int(j, "signals2", source);
  std::vector<double> p = nested(j, "probs", {static_cast<int>(labels.size()), n1, n2}, source);
  return wrap(source, [&] { return InformationStructure(std::move(labels), n1, n2, std::move(p)); });
}

Garbling garbling_from_json(const json& j, const std::string& source) {
  const int s = positive_int(j, "source", source);
  const int t = positive_int(j, "target", source);
  std::vector<double> rows;
  flatten(field(j, "rows", source), {s, t}, 0, "rows", source, rows);
  return wrap(source, [&] { return Garbling(s, t, std::move(rows)); });
}

ZeroSumGame game_from_json(const json& j, const std::string& source) {
  const int K = positive_int(j, "states", source);
  const int I = positive_int(j, "actions1", source);
  const int J = positive_int(j, "actions2", source);
  std::vector<double> g = nested(j, "payoffs", {K, I, J}, source);
  return wrap(source, [&] { return ZeroSumGame(K, I, J, std::move(g)); });
}

BimatrixGame bimatrix_from_json(const json& j, const std::string& source) {
  const int K = positive_int(j, "states", source);
  const int I = positive_int(j, "actions1", source);
  const int J = positive_int(j, "actions2", source);
  std::vector<double> g1 = nested(j, "payoffs1", {K, I, J}, source);
  std::vector<double> g2 = nested(j, "payoffs2", {K, I, J}, source);
  return wrap(source, [&] {
    return BimatrixGame(ZeroSumGame(K, I, J, std::move(g1)), ZeroSumGame(K, I, J, std::move(g2)));
  });
}

std::vector<double> distribution_from_json(const json& j, const std::string& source) {
  if (!j.is_array() || j.empty()) bad(source, "", "expected a non-empty array of probabilities");
  std::vector<double> p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(source, "[" + std::to_string(i) + "]", "expected a number");
    p.push_back(j[i].get<double>());
  }
  return p;
}

std::vector<ZeroSumGame> games_from_json(const json& j, const std::string& source) {
  std::vector<ZeroSumGame> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(game_from_json(j[i], source + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(game_from_json(j, source));
  }
  return out;
}

}  // namespace infodist::io
