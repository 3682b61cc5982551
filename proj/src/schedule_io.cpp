#include "coopcache/schedule_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "coopcache/error.hpp"

namespace coopcache {

namespace {

constexpr std::string_view kMagic = "coopcache-schedule 1";

void write_symbol_body(std::ostream& out, const TransmissionSymbol& sym) {
  for (const auto& c : sym.components) out << ' ' << c.to_string();
  out << " |";
  for (const auto& [user, id] : sym.recipients) out << ' ' << user << ':' << id.to_string();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  Schedule parse() {
    if (next() != kMagic) error("expected '" + std::string(kMagic) + "'");
    Schedule s;
    {
      auto tok = split_ws(next());
      if (tok.size() != 11 || tok[0] != "users" || tok[2] != "files" || tok[4] != "replication" ||
          tok[6] != "alpha" || tok[8] != "loads") {
        error("expected 'users K files N replication t alpha a loads L1 L2'");
      }
      s.users = to_int(tok[1]);
      s.files = to_int(tok[3]);
      s.replication = to_int(tok[5]);
      s.alpha = to_int(tok[7]);
      s.loads = {to_int(tok[9]), to_int(tok[10])};
    }
    {
      auto tok = split_ws(next());
      if (tok.empty() || tok[0] != "demands" || static_cast<int>(tok.size()) != s.users + 1) {
        error("expected 'demands' followed by K file indices");
      }
      for (std::size_t i = 1; i < tok.size(); ++i) s.demands.files.push_back(static_cast<int>(to_int(tok[i])));
    }
    std::int64_t expected_slot = 1;
    while (true) {
      std::string_view line = next();
      if (line == "end") break;
      auto tok = split_ws(line);
      if (tok.size() != 2 || tok[0] != "slot" || to_int(tok[1]) != expected_slot) {
        error("expected 'slot " + std::to_string(expected_slot) + "' or 'end'");
      }
      ++expected_slot;
      Slot slot;
      auto groups = split_ws(next());
      if (groups.empty() || groups[0] != "groups") error("expected 'groups'");
      for (std::size_t i = 1; i < groups.size(); ++i) slot.groups.push_back(parse_set(groups[i]));
      while (peek_symbol()) {
        auto parts = split_ws(next());
        if (parts[0] == "server") {
          if (slot.server_symbol || !slot.user_symbols.empty()) error("server symbol must come first, once");
          slot.server_symbol = parse_symbol(parts, 1, kServer);
        } else {
          if (parts.size() < 2) error("expected 'user <sender> ...'");
          const int sender = static_cast<int>(to_int(parts[1]));
          if (sender <= 0) error("user sender must be positive");
          slot.user_symbols.push_back(parse_symbol(parts, 2, sender));
        }
      }
      s.slots.push_back(std::move(slot));
    }
    while (index_ < lines_.size()) {
      if (!lines_[index_].empty()) {
        ++index_;
        error("trailing content after 'end'");
      }
      ++index_;
    }
    return s;
  }

 private:
  [[noreturn]] void error(const std::string& what) const { throw FormatError(static_cast<int>(index_), what); }

  std::string_view next() {
    if (index_ >= lines_.size()) {
      ++index_;
      error("unexpected end of input");
    }
    return lines_[index_++];
  }

  bool peek_symbol() const {
    if (index_ >= lines_.size()) return false;
    std::string_view l = lines_[index_];
    return l.starts_with("server ") || l.starts_with("user ");
  }

  std::int64_t to_int(std::string_view s) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) error("not an integer: '" + std::string(s) + "'");
    return v;
  }

  UserSet parse_set(std::string_view s) const {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') error("bad user set '" + std::string(s) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    UserSet set;
    while (!body.empty()) {
      std::size_t comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      const std::int64_t user = to_int(item);
      if (user < 1 || user > 32) error("user index out of range in '" + std::string(s) + "'");
      set = set.with(static_cast<int>(user));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      if (body.empty()) error("trailing comma in '" + std::string(s) + "'");
    }
    return set;
  }

  SubfileId parse_subfile(std::string_view s) const {
    // (n,l,{...})
    if (s.size() < 7 || s.front() != '(' || s.back() != ')') error("bad subfile '" + std::string(s) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    std::size_t c1 = body.find(',');
    std::size_t c2 = c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string_view::npos) error("bad subfile '" + std::string(s) + "'");
    SubfileId id;
    id.file = static_cast<int>(to_int(body.substr(0, c1)));
    id.layer = static_cast<int>(to_int(body.substr(c1 + 1, c2 - c1 - 1)));
    id.subset = parse_set(body.substr(c2 + 1));
    return id;
  }

  TransmissionSymbol parse_symbol(const std::vector<std::string_view>& parts, std::size_t first, int sender) const {
    TransmissionSymbol sym;
    sym.sender = sender;
    std::size_t i = first;
    for (; i < parts.size() && parts[i] != "|"; ++i) sym.components.push_back(parse_subfile(parts[i]));
    if (i == parts.size()) error("missing '|' between components and recipients");
    for (++i; i < parts.size(); ++i) {
      std::size_t colon = parts[i].find(':');
      if (colon == std::string_view::npos) error("bad recipient '" + std::string(parts[i]) + "'");
      sym.recipients.emplace_back(static_cast<int>(to_int(parts[i].substr(0, colon))),
                                  parse_subfile(parts[i].substr(colon + 1)));
    }
    return sym;
  }

  std::vector<std::string_view> lines_;
  std::size_t index_ = 0;
};

}  // namespace

void write_schedule(std::ostream& out, const Schedule& s) {
  out << kMagic << '\n';
  out << "users " << s.users << " files " << s.files << " replication " << s.replication << " alpha " << s.alpha
      << " loads " << s.loads.user_layers << ' ' << s.loads.server_layers << '\n';
  out << "demands";
  for (int d : s.demands.files) out << ' ' << d;
  out << '\n';
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    const Slot& slot = s.slots[i];
    out << "slot " << i + 1 << '\n';
    out << "groups";
    for (UserSet g : slot.groups) out << ' ' << g.to_string();
    out << '\n';
    if (slot.server_symbol) {
      out << "server";
      write_symbol_body(out, *slot.server_symbol);
      out << '\n';
    }
    for (const auto& sym : slot.user_symbols) {
      out << "user " << sym.sender;
      write_symbol_body(out, sym);
      out << '\n';
    }
  }
  out << "end\n";
}

std::string export_schedule(const Schedule& schedule) {
  std::ostringstream out;
  write_schedule(out, schedule);
  return out.str();
}

Schedule import_schedule(std::string_view text) { return Parser(text).parse(); }

Schedule read_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return import_schedule(buffer.str());
}

}  // namespace coopcache
