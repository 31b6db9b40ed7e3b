#include "fairaudit/uri.hpp"

#include <cctype>

#include "fairaudit/provider.hpp"
#include "fairaudit/strings.hpp"

namespace fairaudit {

std::string ParsedUri::origin() const {
  std::string out = scheme + "://" + host;
  if (port != 0) out += ":" + std::to_string(port);
  return out;
}

std::string ParsedUri::target() const {
  std::string out = path.empty() ? "/" : path;
  if (!query.empty()) out += "?" + query;
  return out;
}

std::optional<ParsedUri> parse_uri(std::string_view uri) {
  auto scheme_end = uri.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;
  ParsedUri out;
  out.scheme = to_lower(uri.substr(0, scheme_end));
  if (out.scheme != "http" && out.scheme != "https") return std::nullopt;

  auto rest = uri.substr(scheme_end + 3);
  auto frag = rest.find('#');
  if (frag != std::string_view::npos) rest = rest.substr(0, frag);

  auto path_start = rest.find_first_of("/?");
  std::string_view authority =
      path_start == std::string_view::npos ? rest : rest.substr(0, path_start);
  if (authority.empty()) return std::nullopt;
  // userinfo is accepted and dropped
  auto at = authority.rfind('@');
  if (at != std::string_view::npos) authority = authority.substr(at + 1);

  auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    auto port_sv = authority.substr(colon + 1);
    if (port_sv.empty()) return std::nullopt;
    int port = 0;
    for (char c : port_sv) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      port = port * 10 + (c - '0');
      if (port > 65535) return std::nullopt;
    }
    out.port = port;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) return std::nullopt;
  out.host = to_lower(authority);

  if (path_start == std::string_view::npos) {
    out.path = "/";
    return out;
  }
  auto tail = rest.substr(path_start);
  auto q = tail.find('?');
  if (q == std::string_view::npos) {
    out.path = std::string(tail);
  } else {
    out.path = std::string(tail.substr(0, q));
    out.query = std::string(tail.substr(q + 1));
  }
  if (out.path.empty()) out.path = "/";
  if (out.path[0] != '/') return std::nullopt;
  return out;
}

namespace {

// Collapses "." and ".." segments; keeps a trailing slash if present.
std::string merge_dot_segments(const std::string& path) {
  std::vector<std::string> stack;
  bool trailing_slash = !path.empty() && path.back() == '/';
  for (auto& seg : split(path, '/')) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") {
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    stack.push_back(seg);
  }
  std::string out = "/";
  for (size_t i = 0; i < stack.size(); ++i) {
    out += stack[i];
    if (i + 1 < stack.size()) out += "/";
  }
  if (trailing_slash && out.back() != '/') out += "/";
  return out;
}

}  // namespace

std::optional<std::string> resolve_reference(const std::string& base, const std::string& ref) {
  if (ref.empty()) return base;
  if (ref.find("://") != std::string::npos) {
    auto parsed = parse_uri(ref);
    if (!parsed) return std::nullopt;
    return parsed->to_string();
  }
  auto base_parsed = parse_uri(base);
  if (!base_parsed) return std::nullopt;
  if (ref.rfind("//", 0) == 0) {
    return resolve_reference(base, base_parsed->scheme + ":" + ref);
  }
  ParsedUri out = *base_parsed;
  out.query.clear();
  std::string path = ref;
  auto q = path.find('?');
  if (q != std::string::npos) {
    out.query = path.substr(q + 1);
    path = path.substr(0, q);
  }
  if (!path.empty() && path[0] == '/') {
    out.path = merge_dot_segments(path);
  } else if (!path.empty()) {
    auto slash = base_parsed->path.rfind('/');
    std::string dir = slash == std::string::npos ? "/" : base_parsed->path.substr(0, slash + 1);
    out.path = merge_dot_segments(dir + path);
  }
  return out.to_string();
}

std::optional<Location> make_location(std::string uri, std::string resolved_from) {
  auto parsed = parse_uri(uri);
  if (!parsed) return std::nullopt;
  Location loc;
  loc.uri = std::move(uri);
  loc.scheme = parsed->scheme == "https" ? UriScheme::https : UriScheme::http;
  loc.resolved_from = std::move(resolved_from);
  ProviderClassification cls = classify_provider(loc.uri);
  if (cls.kind != ProviderKind::generic) loc.provider_hint = cls.kind;
  return loc;
}

}  // namespace fairaudit
