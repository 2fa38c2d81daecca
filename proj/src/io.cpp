#include "wbds/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "wbds/error.hpp"

namespace wbds {

using Json = nlohmann::ordered_json;

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "json") return GraphFormat::json;
  if (name == "dot" || name == "dot_subset") return GraphFormat::dot_subset;
  if (name == "edge_list" || name == "edges" || name == "txt") return GraphFormat::edge_list;
  throw Error(ErrorCode::parse_error, "unknown graph format '" + std::string(name) + "'");
}

const char* to_string(GraphFormat f) noexcept {
  switch (f) {
    case GraphFormat::json: return "json";
    case GraphFormat::dot_subset: return "dot_subset";
    case GraphFormat::edge_list: return "edge_list";
  }
  return "unknown";
}

GraphFormat graph_format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".json")) return GraphFormat::json;
  if (ends_with(".dot") || ends_with(".gv")) return GraphFormat::dot_subset;
  return GraphFormat::edge_list;
}

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail(ErrorCode code, const std::string& what, Position at) {
  throw ParseError(code, what, at.line, at.column);
}

// Adds an edge, rethrowing graph errors with a source position.
void add_edge_at(WeightedDigraph& g, Vertex from, Vertex to, const Rational& w, Position at) {
  if (from == to) g.enable_self_loops();
  if (sgn(w) <= 0) fail(ErrorCode::bad_weight, "edge weight must be positive", at);
  try {
    g.add_edge(from, to, w);
  } catch (const Error& e) {
    fail(e.code(), e.what(), at);
  }
}

Rational weight_at(std::string_view text, Position at) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail(ErrorCode::bad_weight, e.what(), at);
  }
}

// ---- JSON ----

std::size_t json_index(const Json& value, const char* what, Position at) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(ErrorCode::parse_error, std::string(what) + " must be a nonnegative integer", at);
  }
  return value.get<std::size_t>();
}

Rational json_weight(const Json& value, Position at) {
  if (value.is_string()) return weight_at(value.get<std::string>(), at);
  if (value.is_number_integer()) return Rational(value.get<long>());
  fail(ErrorCode::bad_weight, "weight must be an integer or a \"p/q\" string", at);
}

WeightedDigraph parse_json_graph(std::string_view text, GraphMetadata* metadata) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::parse_error, e.what(), position_of(text, e.byte ? e.byte - 1 : 0));
  }
  const Position top;
  if (!doc.is_object()) fail(ErrorCode::parse_error, "graph document must be an object", top);
  if (doc.contains("version") && doc["version"] != "1") {
    fail(ErrorCode::parse_error, "unsupported version", top);
  }
  if (!doc.contains("n")) fail(ErrorCode::parse_error, "missing field 'n'", top);
  const std::size_t n = json_index(doc["n"], "n", top);
  WeightedDigraph g(n, doc.value("self_loops", false));
  if (metadata) {
    metadata->name = doc.value("name", "");
    metadata->description = doc.value("description", "");
  }
  const Json edges = doc.value("edges", Json::array());
  if (!edges.is_array()) fail(ErrorCode::parse_error, "'edges' must be an array", top);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Json& e = edges[k];
    const std::string where = "edge " + std::to_string(k) + ": ";
    Vertex from = 0, to = 0;
    Rational w = 1;
    if (e.is_array() && (e.size() == 2 || e.size() == 3)) {
      from = json_index(e[0], "from", top);
      to = json_index(e[1], "to", top);
      if (e.size() == 3) w = json_weight(e[2], top);
    } else if (e.is_object() && e.contains("from") && e.contains("to")) {
      from = json_index(e["from"], "from", top);
      to = json_index(e["to"], "to", top);
      if (e.contains("weight")) w = json_weight(e["weight"], top);
    } else {
      fail(ErrorCode::parse_error, where + "expected {from, to[, weight]} or [from, to[, weight]]",
           top);
    }
    if (from >= n || to >= n) fail(ErrorCode::parse_error, where + "vertex out of range", top);
    try {
      if (from == to && !g.allows_self_loops()) {
        fail(ErrorCode::parse_error, where + "self-loop requires \"self_loops\": true", top);
      }
      if (sgn(w) <= 0) fail(ErrorCode::bad_weight, where + "weight must be positive", top);
      g.add_edge(from, to, w);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      fail(err.code(), where + err.what(), top);
    }
  }
  return g;
}

Json json_graph(const WeightedDigraph& g, const GraphMetadata& metadata) {
  Json doc;
  doc["version"] = "1";
  if (!metadata.name.empty()) doc["name"] = metadata.name;
  if (!metadata.description.empty()) doc["description"] = metadata.description;
  doc["n"] = g.order();
  doc["self_loops"] = g.allows_self_loops();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", to_string(g.weight(e.from, e.to))}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

// ---- edge list ----

struct Token {
  std::string text;
  Position at;
};

std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view body = text.substr(start, end - start);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    std::vector<Token> tokens;
    std::size_t k = 0;
    while (k < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[k]))) {
        ++k;
        continue;
      }
      const std::size_t b = k;
      while (k < body.size() && !std::isspace(static_cast<unsigned char>(body[k]))) ++k;
      tokens.push_back({std::string(body.substr(b, k - b)), {line, b + 1}});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t token_index(const Token& t) {
  if (t.text.empty() || t.text.size() > 18 ||
      !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorCode::parse_error, "expected a vertex index, got '" + t.text + "'", t.at);
  }
  return std::stoull(t.text);
}

WeightedDigraph parse_edge_list(std::string_view text) {
  const auto lines = tokenize_lines(text);
  std::optional<std::size_t> declared;
  struct Row {
    Vertex from, to;
    Rational w;
    Position at;
  };
  std::vector<Row> rows;
  std::size_t n = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& t = lines[k];
    if (t[0].text == "n") {
      if (t.size() != 2 || declared || !rows.empty()) {
        fail(ErrorCode::parse_error, "header must be a single leading 'n N' line", t[0].at);
      }
      declared = token_index(t[1]);
      continue;
    }
    if (t.size() < 2 || t.size() > 3) {
      fail(ErrorCode::parse_error, "expected 'from to [weight]'", t[0].at);
    }
    Row row{token_index(t[0]), token_index(t[1]), 1, t[0].at};
    if (t.size() == 3) row.w = weight_at(t[2].text, t[2].at);
    if (declared && (row.from >= *declared || row.to >= *declared)) {
      fail(ErrorCode::parse_error, "vertex index out of range", t[0].at);
    }
    n = std::max({n, row.from + 1, row.to + 1});
    rows.push_back(std::move(row));
  }
  WeightedDigraph g(declared ? *declared : n);
  for (const auto& row : rows) add_edge_at(g, row.from, row.to, row.w, row.at);
  return g;
}

std::string edge_list_graph(const WeightedDigraph& g, const GraphMetadata& metadata) {
  std::ostringstream out;
  if (!metadata.name.empty()) out << "# " << metadata.name << '\n';
  out << "n " << g.order() << '\n';
  for (const auto& e : g.edges()) {
    out << e.from << ' ' << e.to;
    const Rational& w = g.weight(e.from, e.to);
    if (w != 1) out << ' ' << to_string(w);
    out << '\n';
  }
  return out.str();
}

// ---- DOT subset ----

class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : text_(text) {}

  enum class Kind { id, arrow, lbrace, rbrace, lbracket, rbracket, equals, separator, end };

  struct Lexeme {
    Kind kind = Kind::end;
    std::string text;
    Position at;
  };

  Lexeme next() {
    skip();
    Lexeme lx;
    lx.at = position_of(text_, pos_);
    if (pos_ >= text_.size()) return lx;
    const char c = text_[pos_];
    auto single = [&](Kind kind) {
      ++pos_;
      lx.kind = kind;
      lx.text = std::string(1, c);
      return lx;
    };
    switch (c) {
      case '{': return single(Kind::lbrace);
      case '}': return single(Kind::rbrace);
      case '[': return single(Kind::lbracket);
      case ']': return single(Kind::rbracket);
      case '=': return single(Kind::equals);
      case ';':
      case ',': return single(Kind::separator);
      default: break;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      lx.kind = Kind::arrow;
      lx.text = "->";
      return lx;
    }
    if (c == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        lx.text += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail(ErrorCode::parse_error, "unterminated string", lx.at);
      ++pos_;
      lx.kind = Kind::id;
      return lx;
    }
    auto id_char = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '/';
    };
    if (id_char(c) || c == '-') {
      lx.text += text_[pos_++];
      while (pos_ < text_.size() && id_char(text_[pos_])) lx.text += text_[pos_++];
      lx.kind = Kind::id;
      return lx;
    }
    fail(ErrorCode::parse_error, std::string("unexpected character '") + c + "'", lx.at);
  }

 private:
  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (text_.substr(pos_, 2) == "/*") {
        const auto close = text_.find("*/", pos_ + 2);
        pos_ = close == std::string_view::npos ? text_.size() : close + 2;
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class DotParser {
 public:
  explicit DotParser(std::string_view text) : lexer_(text) { advance(); }

  WeightedDigraph parse(GraphMetadata* metadata) {
    if (current_.kind != Kind::id || current_.text != "digraph") {
      fail(ErrorCode::parse_error, "expected 'digraph'", current_.at);
    }
    advance();
    if (current_.kind == Kind::id) {
      if (metadata) metadata->name = current_.text;
      advance();
    }
    expect(Kind::lbrace, "'{'");
    while (current_.kind != Kind::rbrace) {
      if (current_.kind == Kind::end) fail(ErrorCode::parse_error, "missing '}'", current_.at);
      if (current_.kind == Kind::separator) {
        advance();
        continue;
      }
      statement();
    }
    advance();
    if (current_.kind != Kind::end) fail(ErrorCode::parse_error, "trailing input", current_.at);

    WeightedDigraph g(names_.size());
    for (const auto& edge : edges_) add_edge_at(g, edge.from, edge.to, edge.weight, edge.at);
    return g;
  }

 private:
  using Kind = DotLexer::Kind;
  using Lexeme = DotLexer::Lexeme;

  struct PendingEdge {
    Vertex from, to;
    Rational weight;
    Position at;
  };

  void advance() { current_ = lexer_.next(); }

  void expect(Kind kind, const char* what) {
    if (current_.kind != kind) {
      fail(ErrorCode::parse_error, std::string("expected ") + what, current_.at);
    }
    advance();
  }

  Vertex vertex(const std::string& name) {
    const auto [it, inserted] = index_.emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  std::map<std::string, std::pair<std::string, Position>> attributes() {
    std::map<std::string, std::pair<std::string, Position>> attrs;
    if (current_.kind != Kind::lbracket) return attrs;
    advance();
    while (current_.kind != Kind::rbracket) {
      if (current_.kind == Kind::separator) {
        advance();
        continue;
      }
      if (current_.kind != Kind::id) fail(ErrorCode::parse_error, "expected attribute", current_.at);
      const std::string key = current_.text;
      advance();
      expect(Kind::equals, "'='");
      if (current_.kind != Kind::id) fail(ErrorCode::parse_error, "expected value", current_.at);
      attrs[key] = {current_.text, current_.at};
      advance();
    }
    advance();
    return attrs;
  }

  void statement() {
    if (current_.kind != Kind::id) fail(ErrorCode::parse_error, "expected a statement", current_.at);
    if (current_.text == "graph" || current_.text == "node" || current_.text == "edge") {
      advance();
      attributes();
      return;
    }
    const Lexeme head = current_;
    advance();
    if (current_.kind == Kind::equals) {  // graph attribute a=b
      advance();
      expect(Kind::id, "value");
      return;
    }
    std::vector<std::pair<Vertex, Position>> chain{{vertex(head.text), head.at}};
    while (current_.kind == Kind::arrow) {
      advance();
      if (current_.kind != Kind::id) fail(ErrorCode::parse_error, "expected vertex", current_.at);
      chain.emplace_back(vertex(current_.text), current_.at);
      advance();
    }
    const auto attrs = attributes();
    Rational w = 1;
    if (const auto it = attrs.find("weight"); it != attrs.end()) {
      w = weight_at(it->second.first, it->second.second);
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      edges_.push_back({chain[k].first, chain[k + 1].first, w, chain[k].second});
    }
  }

  DotLexer lexer_;
  DotLexer::Lexeme current_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::string> names_;
  std::vector<PendingEdge> edges_;
};

bool plain_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string dot_graph(const WeightedDigraph& g, const GraphMetadata& metadata) {
  std::ostringstream out;
  out << "digraph";
  if (plain_id(metadata.name)) out << ' ' << metadata.name;
  out << " {\n";
  for (Vertex v = 0; v < g.order(); ++v) out << "  " << v << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << e.from << " -> " << e.to;
    const Rational& w = g.weight(e.from, e.to);
    if (w != 1) out << " [weight=\"" << to_string(w) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

WeightedDigraph parse_graph(std::string_view text, GraphFormat format, GraphMetadata* metadata) {
  switch (format) {
    case GraphFormat::json: return parse_json_graph(text, metadata);
    case GraphFormat::dot_subset: return DotParser(text).parse(metadata);
    case GraphFormat::edge_list: return parse_edge_list(text);
  }
  throw Error(ErrorCode::parse_error, "unknown format");
}

std::string serialize_graph(const WeightedDigraph& g, GraphFormat format,
                            const GraphMetadata& metadata) {
  switch (format) {
    case GraphFormat::json: return json_graph(g, metadata).dump(2) + "\n";
    case GraphFormat::dot_subset: return dot_graph(g, metadata);
    case GraphFormat::edge_list: return edge_list_graph(g, metadata);
  }
  return {};
}

namespace {

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::string updates_cell(const std::vector<EdgeUpdate>& updates) {
  std::string cell;
  for (const auto& u : updates) {
    if (!cell.empty()) cell += ';';
    cell += std::to_string(u.edge.from) + "->" + std::to_string(u.edge.to) + ":" +
            to_string(u.old_weight) + "=>" + to_string(u.new_weight);
  }
  return cell;
}

}  // namespace

std::string serialize_trace(const RoundTrace& trace, TraceFormat format) {
  if (format == TraceFormat::csv) {
    std::string out = "round,V_wb,modified_edges\n";
    for (const auto& r : trace.records) {
      out += std::to_string(r.round) + "," + to_string(r.lyapunov) + "," + updates_cell(r.updates) +
             "\n";
    }
    return out;
  }
  Json doc;
  doc["algorithm"] = trace.algorithm;
  doc["policy"] = trace.policy;
  doc["verdict"] = trace.verdict;
  doc["converged"] = trace.converged;
  doc["rounds"] = trace.rounds();
  Json records = Json::array();
  for (const auto& r : trace.records) {
    Json rec;
    rec["round"] = r.round;
    rec["V_wb"] = to_string(r.lyapunov);
    rec["imbalance"] = rationals(r.imbalance);
    Json updates = Json::array();
    for (const auto& u : r.updates) {
      updates.push_back({{"from", u.edge.from},
                         {"to", u.edge.to},
                         {"old", to_string(u.old_weight)},
                         {"new", to_string(u.new_weight)}});
    }
    rec["modified_edges"] = std::move(updates);
    rec["actions"] = r.actions;
    if (!r.source_load.empty()) {
      rec["source_load"] = rationals(r.source_load);
      rec["target_load"] = rationals(r.target_load);
      rec["source_height"] = r.source_height;
      rec["target_height"] = r.target_height;
    }
    if (r.weights.order() > 0) rec["weights"] = json_graph(r.weights, {})["edges"];
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  doc["final_weights"] = json_graph(trace.final_weights, {});
  return doc.dump(2) + "\n";
}

ChoiceSchedule parse_choice_schedule(std::string_view text) {
  ChoiceSchedule schedule;
  for (const auto& t : tokenize_lines(text)) {
    if (t.size() != 3) fail(ErrorCode::parse_error, "expected 'round vertex target'", t[0].at);
    const std::size_t round = token_index(t[0]);
    if (round == 0) fail(ErrorCode::parse_error, "rounds start at 1", t[0].at);
    schedule.set(round, token_index(t[1]), token_index(t[2]));
  }
  return schedule;
}

CRegularSchedule parse_cregular_schedule(std::string_view text) {
  static const std::map<std::string, CRegularActionKind> kinds{
      {"forward", CRegularActionKind::push_forward},
      {"backward", CRegularActionKind::push_backward},
      {"raise-target", CRegularActionKind::raise_target},
      {"raise-source", CRegularActionKind::raise_source},
      {"declare", CRegularActionKind::declare},
  };
  CRegularSchedule schedule;
  for (const auto& t : tokenize_lines(text)) {
    if (t.size() < 3 || t.size() > 4) {
      fail(ErrorCode::parse_error, "expected 'step vertex action [neighbor]'", t[0].at);
    }
    const std::size_t step = token_index(t[0]);
    if (step == 0) fail(ErrorCode::parse_error, "steps start at 1", t[0].at);
    const auto kind = kinds.find(t[2].text);
    if (kind == kinds.end()) fail(ErrorCode::parse_error, "unknown action '" + t[2].text + "'", t[2].at);
    CRegularAction action{kind->second, token_index(t[1]), std::nullopt};
    const bool needs_neighbor = kind->second == CRegularActionKind::push_forward ||
                                kind->second == CRegularActionKind::push_backward;
    if (needs_neighbor != (t.size() == 4)) {
      fail(ErrorCode::parse_error,
           needs_neighbor ? "push needs a neighbor" : "action takes no neighbor", t[2].at);
    }
    if (needs_neighbor) action.neighbor = token_index(t[3]);
    schedule.steps[step].push_back(action);
  }
  return schedule;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
  out << content;
}

}  // namespace wbds
