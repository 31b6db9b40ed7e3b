#include "fairaudit/requirements.hpp"

#include <algorithm>
#include <cctype>

#include "fairaudit/strings.hpp"

namespace fairaudit {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

// Raw name grammar: alnum, with "-", "_", "." allowed inside.
bool valid_raw_name(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalnum(static_cast<unsigned char>(s.front())) ||
      !std::isalnum(static_cast<unsigned char>(s.back()))) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), is_name_char);
}

// Strips a "#" comment when it starts the line or follows whitespace.
std::string_view strip_comment(std::string_view line) {
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
      return line.substr(0, i);
    }
  }
  return line;
}

struct LogicalLine {
  std::string text;
  int line_number;  // first physical line
};

std::vector<LogicalLine> logical_lines(std::string_view text) {
  std::vector<LogicalLine> out;
  int physical = 0;
  std::optional<LogicalLine> pending;
  for (auto& raw : split(text, '\n')) {
    ++physical;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool continued = line.ends_with("\\");
    if (continued) line.pop_back();
    if (pending) {
      pending->text += line;
    } else {
      pending = LogicalLine{line, physical};
    }
    if (!continued) {
      out.push_back(std::move(*pending));
      pending.reset();
    }
  }
  if (pending) out.push_back(std::move(*pending));
  return out;
}

std::optional<std::vector<std::string>> parse_extras(std::string_view inside) {
  std::vector<std::string> extras;
  for (auto& extra : split(inside, ',')) {
    auto name = trim_view(extra);
    if (!valid_raw_name(name)) return std::nullopt;
    extras.push_back(normalize_package_name(name));
  }
  std::sort(extras.begin(), extras.end());
  extras.erase(std::unique(extras.begin(), extras.end()), extras.end());
  return extras;
}

std::optional<Requirement> parse_requirement_line(std::string_view line) {
  Requirement req;

  auto semi = line.find(';');
  if (semi != std::string_view::npos) {
    auto marker = trim_view(line.substr(semi + 1));
    if (marker.empty()) return std::nullopt;
    req.marker = std::string(marker);
    line = line.substr(0, semi);
  }

  size_t name_end = 0;
  while (name_end < line.size() && is_name_char(line[name_end])) ++name_end;
  auto raw_name = line.substr(0, name_end);
  if (!valid_raw_name(raw_name)) return std::nullopt;
  req.name = normalize_package_name(raw_name);

  auto rest = std::string_view(line).substr(name_end);
  rest = trim_view(rest);
  if (!rest.empty() && rest.front() == '[') {
    auto close = rest.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    auto extras = parse_extras(rest.substr(1, close - 1));
    if (!extras) return std::nullopt;
    req.extras = std::move(*extras);
    rest = trim_view(rest.substr(close + 1));
  }

  auto constraints = parse_constraint_list(rest);
  if (!constraints) return std::nullopt;
  req.constraints = std::move(*constraints);
  return req;
}

}  // namespace

std::string normalize_package_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_sep = false;
  for (char c : name) {
    if (c == '-' || c == '_' || c == '.') {
      pending_sep = true;
      continue;
    }
    if (pending_sep && !out.empty()) out += '-';
    pending_sep = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_valid_utf8(std::string_view text) {
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    size_t extra;
    unsigned min_cp;
    if (c < 0x80) { i += 1; continue; }
    else if ((c & 0xE0) == 0xC0) { extra = 1; min_cp = 0x80; }
    else if ((c & 0xF0) == 0xE0) { extra = 2; min_cp = 0x800; }
    else if ((c & 0xF8) == 0xF0) { extra = 3; min_cp = 0x10000; }
    else return false;
    if (i + extra >= text.size()) return false;
    unsigned cp = c & (0x3F >> extra);
    for (size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

ParsedRequirements parse_requirements(std::string_view text, const std::string& filename) {
  ParsedRequirements out;
  if (!is_valid_utf8(text)) {
    out.findings.push_back(make_finding(codes::kEncodingInvalid, Severity::Blocker,
                                        "file is not valid UTF-8; parsing aborted",
                                        filename));
    return out;
  }
  for (auto& logical : logical_lines(text)) {
    auto line = trim_view(strip_comment(logical.text));
    if (line.empty()) continue;
    auto ref = filename + ":" + std::to_string(logical.line_number);
    if (line.front() == '-') {
      out.findings.push_back(make_finding(
          codes::kDirectiveSkipped, Severity::Warning,
          "directive line skipped: \"" + std::string(line) + "\"", ref));
      continue;
    }
    auto req = parse_requirement_line(line);
    if (!req) {
      out.findings.push_back(make_finding(
          codes::kUnparseableRequirement, Severity::Warning,
          "line does not match the supported requirement grammar: \"" +
              std::string(line) + "\"",
          ref));
      continue;
    }
    req->source_file = filename;
    req->source_line = logical.line_number;
    out.requirements.push_back(std::move(*req));
  }
  return out;
}

std::string render_requirement(const Requirement& req) {
  std::string out = req.name;
  if (!req.extras.empty()) {
    out += "[";
    for (size_t i = 0; i < req.extras.size(); ++i) {
      if (i > 0) out += ",";
      out += req.extras[i];
    }
    out += "]";
  }
  out += render(req.constraints);
  if (req.marker) out += "; " + *req.marker;
  return out;
}

}  // namespace fairaudit
