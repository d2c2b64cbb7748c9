#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shellsat/certificates.hpp"
#include "shellsat/collapse.hpp"
#include "shellsat/complex.hpp"
#include "shellsat/shelling.hpp"
#include "shellsat/wsat.hpp"

namespace shellsat::io {

// Text formats. Every format is line based: '#' starts a comment (except
// for the marker lines named below), faces are whitespace-separated labels
// matching [A-Za-z0-9_{}|.-]+. Errors are thrown as Error(Parse) or
// Error(MalformedCertificate) with a "source:line: " prefix.

struct ParsedComplex {
  Complex complex;
  /// One message per absorbed (non-maximal) input face.
  std::vector<std::string> warnings;
};

/// ".sc": one facet per nonempty non-comment line.
ParsedComplex read_complex(std::istream& in, std::string_view source);
ParsedComplex load_complex(const std::filesystem::path& path);
/// Facets sorted by id sequence, one per line, no header.
void write_complex(std::ostream& out, const Complex& k);

/// "# shelling of <fingerprint>" then one facet per line in shelling order.
void write_shelling(std::ostream& out, const Complex& k, const ShellingCertificate& cert);
ShellingCertificate read_shelling(std::istream& in, const Complex& k, std::string_view source);

/// "# removed: a b c, a b d" then "tau -> sigma" steps, then "# target:"
/// followed by the target's facets.
void write_collapse(std::ostream& out, const Complex& k, const CollapseCertificate& cert);
CollapseCertificate read_collapse(std::istream& in, const Complex& k, std::string_view source);

/// "# H: K3", "# start: a b, b c" then "e : J" lines in order.
void write_saturation(std::ostream& out, const Graph& host, const SaturationCertificate& cert);
SaturationCertificate read_saturation(std::istream& in, const Graph& host, std::string_view source);

enum class CertificateKind { Shelling, Saturation, Collapse };

/// Decides the kind from marker lines. Throws MalformedCertificate when no
/// marker is found.
CertificateKind detect_certificate_kind(std::string_view text);

/// Section-per-stage text report embedding each stage certificate.
void write_chain_report(std::ostream& out, const ChainReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace shellsat::io
