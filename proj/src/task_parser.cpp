#include "symelim/task.hpp"

#include <fstream>
#include <sstream>

namespace symelim {

const char* mode_name(TaskMode m) { return m == TaskMode::CheckSat ? "CHECK_SAT" : "GENERATE_CONSTRAINTS"; }

namespace {

// Just enough YAML for task files: nested block mappings, flow lists of
// scalars, block lists, quoted scalars, '|' literal blocks and anchors
// (written "&name" or "& name"; anchors are ignored).
struct YNode {
  enum class Kind { Scalar, Map, List } kind = Kind::Scalar;
  std::string scalar;
  std::size_t line = 0;
  std::vector<std::pair<std::string, YNode>> map;
  std::vector<YNode> list;
  bool literal = false;

  const YNode* get(const std::string& key) const {
    for (const auto& [k, v] : map)
      if (k == key) return &v;
    return nullptr;
  }
};

struct RawLine {
  std::size_t indent;
  std::string text;  // without indentation
  std::size_t number;
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& message) { throw ParseError(SourceSpan{line, 1, 0}, message); }

std::string unquote(const std::string& s, std::size_t line) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'')) {
    if (s.back() != s.front()) fail(line, "unterminated quoted string");
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::string strip_comment(const std::string& s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#' && (i == 0 || s[i - 1] == ' ')) {
      return trim(s.substr(0, i));
    }
  }
  return s;
}

std::vector<YNode> flow_list(const std::string& s, std::size_t line) {
  if (s.back() != ']') fail(line, "unterminated flow list: missing ']'");
  std::vector<YNode> out;
  std::string inner = s.substr(1, s.size() - 2);
  std::string cur;
  int depth = 0;
  char quote = 0;
  auto flush = [&] {
    std::string item = trim(cur);
    if (!item.empty()) {
      YNode n;
      n.scalar = unquote(item, line);
      n.line = line;
      out.push_back(std::move(n));
    }
    cur.clear();
  };
  for (char c : inner) {
    if (quote) {
      if (c == quote) quote = 0;
      cur += c;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  if (quote) fail(line, "unterminated quoted string in flow list");
  flush();
  return out;
}

class YamlParser {
 public:
  explicit YamlParser(std::string_view text) {
    std::size_t number = 1, start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      std::size_t indent = 0;
      while (indent < raw.size() && raw[indent] == ' ') ++indent;
      if (indent < raw.size() && raw[indent] == '\t') fail(number, "tabs are not allowed for indentation");
      lines_.push_back(RawLine{indent, std::string(raw.substr(indent)), number});
      ++number;
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  YNode parse() {
    std::size_t i = skip(0);
    YNode root;
    root.kind = YNode::Kind::Map;
    if (i >= lines_.size()) return root;
    root = block(i, lines_[i].indent);
    if (i < lines_.size()) fail(lines_[i].number, "unexpected indentation");
    return root;
  }

 private:
  bool ignorable(const RawLine& l) const {
    return l.text.empty() || l.text[0] == '#' || l.text[0] == '%' || l.text == "---";
  }
  std::size_t skip(std::size_t i) const {
    while (i < lines_.size() && ignorable(lines_[i])) ++i;
    return i;
  }

  YNode block(std::size_t& i, std::size_t indent) {
    YNode node;
    node.line = lines_[i].number;
    bool is_list = lines_[i].text.rfind("- ", 0) == 0 || lines_[i].text == "-";
    node.kind = is_list ? YNode::Kind::List : YNode::Kind::Map;
    while (i < lines_.size() && lines_[i].indent == indent) {
      const RawLine& l = lines_[i];
      if (is_list) {
        if (!(l.text.rfind("- ", 0) == 0 || l.text == "-")) fail(l.number, "expected a list item '- '");
        YNode item;
        item.scalar = unquote(strip_comment(trim(l.text.substr(1))), l.number);
        item.line = l.number;
        node.list.push_back(std::move(item));
        i = skip(i + 1);
        continue;
      }
      std::size_t colon = find_key_colon(l.text);
      if (colon == std::string::npos) fail(l.number, "expected 'key: value'");
      std::string key = unquote(trim(l.text.substr(0, colon)), l.number);
      std::string rest = strip_comment(trim(l.text.substr(colon + 1)));
      if (!rest.empty() && rest[0] == '&') {
        std::size_t p = 1;
        while (p < rest.size() && rest[p] == ' ') ++p;
        while (p < rest.size() && rest[p] != ' ') ++p;
        rest = trim(rest.substr(p));
      }
      for (const auto& [k, v] : node.map)
        if (k == key) fail(l.number, "duplicate key '" + key + "'");
      YNode value;
      value.line = l.number;
      if (rest == "|" || rest == "|-" || rest == "|+") {
        value.literal = true;
        value.scalar = literal_block(i, indent, value.line);
      } else if (rest.empty()) {
        i = skip(i + 1);
        if (i < lines_.size() && lines_[i].indent > indent) {
          value = block(i, lines_[i].indent);
        } else {
          value.kind = YNode::Kind::Scalar;
        }
        node.map.emplace_back(key, std::move(value));
        continue;
      } else if (rest[0] == '[') {
        value.kind = YNode::Kind::List;
        value.list = flow_list(rest, l.number);
      } else {
        value.scalar = unquote(rest, l.number);
      }
      bool literal = value.literal;
      node.map.emplace_back(key, std::move(value));
      if (!literal) i = skip(i + 1);
    }
    if (i < lines_.size() && lines_[i].indent > indent) fail(lines_[i].number, "unexpected indentation");
    return node;
  }

  static std::size_t find_key_colon(const std::string& s) {
    char quote = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      char c = s[k];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == ':' && (k + 1 == s.size() || s[k + 1] == ' ')) {
        return k;
      }
    }
    return std::string::npos;
  }

  // Consumes the lines of a literal block belonging to the key at `indent`;
  // sets `first_line` to the line number of the first content line.
  std::string literal_block(std::size_t& i, std::size_t indent, std::size_t& first_line) {
    ++i;
    std::size_t begin = i;
    while (i < lines_.size() && (lines_[i].text.empty() || lines_[i].indent > indent)) ++i;
    std::size_t end = i;
    while (end > begin && lines_[end - 1].text.empty()) --end;
    std::size_t strip = std::string::npos;
    for (std::size_t k = begin; k < end; ++k)
      if (!lines_[k].text.empty()) strip = std::min(strip, lines_[k].indent);
    std::string out;
    first_line = begin < lines_.size() ? lines_[begin].number : 0;
    for (std::size_t k = begin; k < end; ++k) {
      if (!lines_[k].text.empty()) out += std::string(lines_[k].indent - strip, ' ') + lines_[k].text;
      out += '\n';
    }
    i = skip(i);
    return out;
  }

  std::vector<RawLine> lines_;
};

bool parse_bool(const YNode& n) {
  if (n.scalar == "true" || n.scalar == "True" || n.scalar == "yes") return true;
  if (n.scalar == "false" || n.scalar == "False" || n.scalar == "no") return false;
  fail(n.line, "expected true or false, found '" + n.scalar + "'");
}

std::vector<std::string> scalar_list(const YNode& n) {
  std::vector<std::string> out;
  if (n.kind == YNode::Kind::Scalar) {
    if (!n.scalar.empty()) out.push_back(n.scalar);
    return out;
  }
  if (n.kind != YNode::Kind::List) fail(n.line, "expected a list");
  for (const auto& item : n.list) out.push_back(item.scalar);
  return out;
}

ParseError relocate(const ParseError& e, std::size_t fallback_line) {
  auto ds = e.diagnostics();
  for (auto& d : ds)
    if (d.span.line == 0) d.span.line = fallback_line;
  return ParseError(std::move(ds));
}

Task parse_task(const std::string& name, const YNode& node, const std::filesystem::path& base_dir) {
  if (node.kind != YNode::Kind::Map) fail(node.line, "task '" + name + "' must be a mapping");
  Task t;
  t.name = name;
  const YNode* mode = node.get("mode");
  if (!mode) fail(node.line, "task '" + name + "' has no mode");
  if (mode->scalar == "CHECK_SAT")
    t.mode = TaskMode::CheckSat;
  else if (mode->scalar == "GENERATE_CONSTRAINTS")
    t.mode = TaskMode::GenerateConstraints;
  else
    fail(mode->line, "unknown mode '" + mode->scalar + "'");
  if (const YNode* s = node.get("solver")) t.solver = s->scalar;
  if (const YNode* s = node.get("specification_type")) t.specification_type = s->scalar;
  if (const YNode* s = node.get("specification_theory")) t.specification_theory = s->scalar;

  const YNode* spec = node.get("specification");
  if (!spec) fail(node.line, "task '" + name + "' has no specification");
  const YNode* file = spec->kind == YNode::Kind::Map ? spec->get("file") : nullptr;
  if (!file) fail(spec->line, "specification of task '" + name + "' has no 'file' entry");
  if (file->literal) {
    t.problem = parse_problem(file->scalar, file->line);
  } else {
    std::filesystem::path p = base_dir / file->scalar;
    std::ifstream in(p);
    if (!in) fail(file->line, "cannot read specification file '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      t.problem = parse_problem(ss.str());
    } catch (const ParseError& e) {
      std::vector<ParseDiagnostic> ds = e.diagnostics();
      for (auto& d : ds) d.message = p.filename().string() + ": " + d.message;
      throw ParseError(std::move(ds));
    }
  }

  if (const YNode* opts = node.get("options")) {
    if (opts->kind != YNode::Kind::Map && !(opts->kind == YNode::Kind::Scalar && opts->scalar.empty()))
      fail(opts->line, "options must be a mapping");
    if (const YNode* p = opts->get("parameter")) {
      t.parameters = scalar_list(*p);
      for (const auto& name_ : t.parameters)
        if (!t.problem.signature.declares(name_))
          fail(p->line, "parameter '" + name_ + "' is not declared in the problem");
    }
    if (const YNode* a = opts->get("assumptions")) {
      t.assumption_text = scalar_list(*a);
      for (const auto& text : t.assumption_text) {
        try {
          t.assumptions.push_back(parse_assumption(text, t.problem.signature));
        } catch (const ParseError& e) {
          fail(a->line, "malformed assumption '" + text + "': " + e.diagnostics().front().message);
        }
      }
    }
    if (const YNode* s = opts->get("slfq_query")) t.slfq_query = parse_bool(*s);
    if (const YNode* s = opts->get("assumptions_in_elimination")) t.assumptions_in_elimination = parse_bool(*s);
  }
  return t;
}

}  // namespace

Formula parse_assumption(std::string_view text, const Signature& signature) {
  FormulaParseOptions opts;
  opts.signature = &signature;
  if (text.find('?') != std::string_view::npos) {
    std::string var = "x";
    for (unsigned k = 1; signature.declares(var); ++k) var = "x" + std::to_string(k);
    opts.wildcard = var;
  }
  return parse_formula(text, opts);
}

std::vector<Task> parse_tasks(std::string_view text, const std::filesystem::path& base_dir) {
  YNode root = YamlParser(text).parse();
  std::vector<Task> tasks;
  if (root.map.empty()) return tasks;
  const YNode* list = root.get("tasks");
  if (!list) fail(root.line, "expected a top-level 'tasks' key");
  if (list->kind == YNode::Kind::Scalar) {
    if (!list->scalar.empty()) fail(list->line, "'tasks' must be a mapping");
    return tasks;
  }
  if (list->kind != YNode::Kind::Map) fail(list->line, "'tasks' must be a mapping");
  for (const auto& [name, node] : list->map) {
    try {
      tasks.push_back(parse_task(name, node, base_dir));
    } catch (const ParseError& e) {
      throw relocate(e, node.line);
    }
  }
  return tasks;
}

}  // namespace symelim
