#include "robmatch/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace robmatch {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg, ErrorKind kind = ErrorKind::Parse) {
  throw Error(kind, "line " + std::to_string(line) + ": " + msg);
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const auto t = trim(raw);
    if (!t.empty() && t.front() != '#') out.push_back({number, t});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

}  // namespace

Profile parse_profile(std::string_view text, AcceptabilityPolicy policy) {
  const auto lines = content_lines(text);
  if (lines.empty() || tokens(lines[0].text) != std::vector<std::string>{"profile", "v1"})
    fail(lines.empty() ? 1 : lines[0].number, "expected header 'profile v1'");

  RawProfile raw;
  std::map<std::string, AgentId> ids;
  std::map<AgentId, int> definedAt;
  bool haveU = false, haveW = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, t] = lines[i];
    const auto colon = t.find(':');
    if (colon == std::string_view::npos) fail(number, "expected ':'");
    const auto head = tokens(t.substr(0, colon));
    const auto rest = tokens(t.substr(colon + 1));
    if (head.size() == 2 && head[0] == "side") {
      if (head[1] != "U" && head[1] != "W") fail(number, "side must be U or W");
      const Side s = head[1] == "U" ? Side::U : Side::W;
      bool& have = s == Side::U ? haveU : haveW;
      if (have) fail(number, "side " + head[1] + " declared twice");
      if (!definedAt.empty()) fail(number, "sides must be declared before preference lines");
      have = true;
      auto& names = s == Side::U ? raw.namesU : raw.namesW;
      for (const auto& n : rest) {
        if (!ids.emplace(n, AgentId{s, static_cast<int>(names.size())}).second)
          fail(number, "agent name '" + n + "' used twice", ErrorKind::DuplicateEntry);
        names.push_back(n);
      }
      continue;
    }
    if (!haveU || !haveW) fail(number, "preference line before both sides are declared");
    if (head.size() != 1) fail(number, "expected '<name>: <list>'");
    const auto it = ids.find(head[0]);
    if (it == ids.end()) fail(number, "unknown agent '" + head[0] + "'", ErrorKind::UnknownAgent);
    const AgentId owner = it->second;
    if (!definedAt.emplace(owner, number).second)
      fail(number, "second preference line for '" + head[0] + "'", ErrorKind::DuplicateEntry);
    auto& lists = owner.side == Side::U ? raw.listsU : raw.listsW;
    lists.resize(owner.side == Side::U ? raw.namesU.size() : raw.namesW.size());
    auto& list = lists[owner.index];
    for (const auto& n : rest) {
      const auto jt = ids.find(n);
      if (jt == ids.end()) fail(number, "unknown agent '" + n + "'", ErrorKind::UnknownAgent);
      if (jt->second.side == owner.side)
        fail(number, "'" + n + "' is on the same side as '" + head[0] + "'", ErrorKind::UnknownAgent);
      list.push_back(jt->second.index);
    }
  }
  if (!haveU || !haveW) fail(lines.back().number, "both sides must be declared");
  raw.listsU.resize(raw.namesU.size());
  raw.listsW.resize(raw.namesW.size());
  for (const auto& [name, id] : ids)
    if (!definedAt.contains(id)) throw Error(ErrorKind::Parse, "no preference line for '" + name + "'");

  auto report = validate_profile(raw, policy);
  if (!report.profile) {
    const auto& issue = report.issues.front();
    const auto at = definedAt.find(issue.agent);
    fail(at == definedAt.end() ? 0 : at->second, issue.message, issue.kind);
  }
  return std::move(*report.profile);
}

std::string serialize_profile(const Profile& p) {
  std::ostringstream out;
  out << "profile v1\n";
  for (Side s : {Side::U, Side::W}) {
    out << "side " << (s == Side::U ? "U" : "W") << ":";
    for (const auto& n : p.names(s)) out << ' ' << n;
    out << '\n';
  }
  for (Side s : {Side::U, Side::W})
    for (int x = 0; x < p.size(s); ++x) {
      const AgentId id{s, x};
      out << p.name(id) << ":";
      for (int y : p.list(id)) out << ' ' << p.name({opposite(s), y});
      out << '\n';
    }
  return out.str();
}

Matching parse_matching(std::string_view text, const Profile& p) {
  Matching m(p.size_u(), p.size_w());
  for (const auto& [number, t] : content_lines(text)) {
    const auto tok = tokens(t);
    if (tok.size() != 2) fail(number, "expected two agent names");
    auto a = p.find(tok[0]);
    auto b = p.find(tok[1]);
    if (!a) fail(number, "unknown agent '" + tok[0] + "'", ErrorKind::UnknownAgent);
    if (!b) fail(number, "unknown agent '" + tok[1] + "'", ErrorKind::UnknownAgent);
    if (a->side == b->side) fail(number, "both agents are on the same side", ErrorKind::InvalidMatching);
    if (a->side == Side::W) std::swap(a, b);
    if (m.matched(*a) || m.matched(*b)) fail(number, "agent appears in two pairs", ErrorKind::InvalidMatching);
    if (!p.acceptable(a->index, b->index))
      fail(number, "pair is not mutually acceptable", ErrorKind::InvalidMatching);
    m.add(a->index, b->index);
  }
  return m;
}

std::string serialize_matching(const Profile& p, const Matching& m) {
  std::ostringstream out;
  for (auto [u, w] : m.pairs()) out << p.name(AgentId::u(u)) << ' ' << p.name(AgentId::w(w)) << '\n';
  return out.str();
}

std::string rotation_label(const Profile& p, const Rotation& r) {
  std::string s;
  for (auto [u, w] : r.pairs) {
    if (!s.empty()) s += ' ';
    s += "(" + p.name(AgentId::u(u)) + "," + p.name(AgentId::w(w)) + ")";
  }
  return s;
}

std::string rotations_dot(const Profile& p, const RotationDigraph& g) {
  std::ostringstream out;
  out << "digraph rotations {\n";
  for (int i = 0; i < g.size(); ++i)
    out << "  r" << i << " [label=\"" << rotation_label(p, g.rotation(i)) << "\"];\n";
  for (auto [a, b] : g.arcs()) out << "  r" << a << " -> r" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Usage, "cannot write " + path);
  out << content;
}

}  // namespace robmatch
