#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fairaudit/core.hpp"

namespace fairaudit {

/// Decomposed http(s) URI. Only the two probe-able schemes are supported;
/// anything else fails to parse.
struct ParsedUri {
  std::string scheme;  // "http" or "https", lowercased
  std::string host;    // lowercased
  int port = 0;        // 0 = scheme default
  std::string path;    // always starts with "/"
  std::string query;   // without the leading "?", may be empty

  int effective_port() const { return port != 0 ? port : (scheme == "https" ? 443 : 80); }
  std::string origin() const;  // scheme://host[:port]
  std::string target() const;  // path[?query]
  std::string to_string() const { return origin() + target(); }
};

std::optional<ParsedUri> parse_uri(std::string_view uri);

/// RFC 3986-style reference resolution, restricted to what redirect targets
/// need: absolute URIs, scheme-relative ("//host/p"), absolute-path ("/p")
/// and relative ("p") forms.
std::optional<std::string> resolve_reference(const std::string& base, const std::string& ref);

/// Builds a validated Location, or nullopt when the URI is not an absolute
/// http(s) URI with a host.
std::optional<Location> make_location(std::string uri, std::string resolved_from);

}  // namespace fairaudit
