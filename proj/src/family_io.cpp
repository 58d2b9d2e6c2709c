#include "dwise/family_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace dwise::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(std::string_view tok, int line, const char* what) {
  tok = trim(tok);
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  return v;
}

/// Shared member validation for both formats.
class Builder {
 public:
  Builder(int n, int k, int header_line) : n_(n), k_(k) {
    if (n < 1 || n > kMaxGround) throw ParseError(header_line, "n must lie in [1, " + std::to_string(kMaxGround) + "]");
    if (k < 0 || k > n) throw ParseError(header_line, "k must lie in [0, n]");
  }

  void add(const std::vector<int>& elems, int line) {
    if (static_cast<int>(elems.size()) != k_)
      throw ParseError(line, "set has " + std::to_string(elems.size()) + " elements, expected k=" + std::to_string(k_));
    ElementSet s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const int e = elems[i];
      if (e < 1 || e > n_) throw ParseError(line, "element " + std::to_string(e) + " outside [1, " + std::to_string(n_) + "]");
      if (i > 0 && elems[i - 1] >= e) throw ParseError(line, "elements must be strictly ascending");
      s.insert(e - 1);
    }
    if (!seen_.insert(s).second) throw ParseError(line, "duplicate set " + format_set(s));
    sets_.push_back(s);
  }

  Family finish() { return Family::from_sets(n_, k_, std::move(sets_)); }

 private:
  int n_;
  int k_;
  std::vector<ElementSet> sets_;
  std::unordered_set<ElementSet, ElementSetHash> seen_;
};

/// Line number of the opening bracket of every entry of the top-level
/// "sets" array, in order.
std::vector<int> set_lines(std::string_view text) {
  std::vector<int> lines;
  int line = 1;
  int depth = 0;
  bool in_string = false;
  bool escape = false;
  std::string last_key;
  std::string current;
  int sets_depth = -1;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escape) {
        escape = false;
      } else if (c == '\\') {
        escape = true;
      } else if (c == '"') {
        in_string = false;
        last_key = current;
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      current.clear();
    } else if (c == '[' || c == '{') {
      ++depth;
      if (c == '[' && sets_depth < 0 && depth == 2 && last_key == "sets") sets_depth = depth;
      else if (c == '[' && sets_depth > 0 && depth == sets_depth + 1) lines.push_back(line);
    } else if (c == ']' || c == '}') {
      if (depth == sets_depth) sets_depth = -2;
      --depth;
    }
  }
  return lines;
}

}  // namespace

Family parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<Builder> builder;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!builder) {
      int n = -1;
      int k = -1;
      std::istringstream hs{std::string(line)};
      std::string tok;
      while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "malformed header token '" + tok + "'");
        const auto key = tok.substr(0, eq);
        const auto val = std::string_view(tok).substr(eq + 1);
        if (key == "n") n = parse_int(val, line_no, "for n");
        else if (key == "k") k = parse_int(val, line_no, "for k");
        else throw ParseError(line_no, "unknown header key '" + key + "'");
      }
      if (n < 0 || k < 0) throw ParseError(line_no, "header must be 'n=<n> k=<k>'");
      builder.emplace(n, k, line_no);
      continue;
    }
    std::vector<int> elems;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      const auto tok = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      elems.push_back(parse_int(tok, line_no, "element"));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    builder->add(elems, line_no);
  }
  if (!builder) throw ParseError(0, "missing 'n=<n> k=<k>' header");
  return builder->finish();
}

Family parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
    throw ParseError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("k") || !doc.contains("sets"))
    throw ParseError(1, "JSON family needs keys n, k and sets");
  if (!doc["n"].is_number_integer() || !doc["k"].is_number_integer() || !doc["sets"].is_array())
    throw ParseError(1, "n and k must be integers and sets an array");
  const auto lines = set_lines(text);
  Builder builder(doc["n"].get<int>(), doc["k"].get<int>(), 1);
  std::size_t idx = 0;
  for (const auto& entry : doc["sets"]) {
    const int line = idx < lines.size() ? lines[idx] : 0;
    if (!entry.is_array()) throw ParseError(line, "set #" + std::to_string(idx + 1) + " is not an array");
    std::vector<int> elems;
    for (const auto& v : entry) {
      if (!v.is_number_integer()) throw ParseError(line, "set #" + std::to_string(idx + 1) + " holds a non-integer");
      elems.push_back(v.get<int>());
    }
    builder.add(elems, line);
    ++idx;
  }
  return builder.finish();
}

Family parse_any(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_json(text);
  return parse_text(text);
}

std::string to_text(const Family& f) {
  std::ostringstream os;
  os << "n=" << f.n() << " k=" << f.k() << '\n';
  for (const auto& s : f) {
    bool first = true;
    s.for_each([&](int e) {
      if (!first) os << ',';
      os << e + 1;
      first = false;
    });
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Family& f) {
  nlohmann::ordered_json doc;
  doc["n"] = f.n();
  doc["k"] = f.k();
  doc["sets"] = f.to_lists();
  return doc.dump();
}

Family read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_any(ss.str());
}

void write_file(const std::string& path, const Family& f, bool json) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << (json ? to_json(f) + "\n" : to_text(f));
}

}  // namespace dwise::io
