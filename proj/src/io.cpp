#include "shellsat/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "shellsat/error.hpp"

namespace shellsat::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '{' || c == '}' || c == '|' || c == '.' || c == '-';
  });
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::vector<std::string> tokens(std::string_view s, std::string_view source, std::size_t line,
                                ErrorKind kind) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) {
    if (!valid_label(t)) throw Error(kind, where(source, line) + "invalid label '" + t + "'", line);
    out.push_back(std::move(t));
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;  // trimmed
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    out.push_back({++number, trim(raw)});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Face resolve(const LabelTable& table, const std::vector<std::string>& labels,
             std::string_view source, std::size_t line) {
  std::vector<VertexId> ids;
  for (const auto& l : labels) {
    auto id = find_label(table, l);
    if (!id) {
      throw Error(ErrorKind::MalformedCertificate,
                  where(source, line) + "unknown vertex '" + l + "'", line);
    }
    ids.push_back(*id);
  }
  try {
    return Face(ids);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedCertificate, where(source, line) + e.what(), line);
  }
}

Face resolve_text(const LabelTable& table, std::string_view text, std::string_view source,
                  std::size_t line) {
  return resolve(table, tokens(text, source, line, ErrorKind::MalformedCertificate), source,
                 line);
}

// Comma separated face list, as in "# start: a b, b c".
std::vector<Face> resolve_list(const LabelTable& table, std::string_view text,
                               std::string_view source, std::size_t line) {
  std::vector<Face> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(resolve_text(table, trim(text.substr(0, comma)), source, line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void check_fingerprint(std::string_view line, std::string_view marker, const std::string& expected,
                       std::string_view source, std::size_t number) {
  const auto found = trim(line.substr(marker.size()));
  if (found != expected) {
    throw Error(ErrorKind::MalformedCertificate,
                where(source, number) + "certificate is for complex " + std::string(found) +
                    ", not " + expected,
                number);
  }
}

std::string join(const std::vector<Face>& faces, const LabelTable& table) {
  std::string out;
  for (const Face& f : faces) {
    if (!out.empty()) out += ", ";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ' ';
      out += table.at(f[i]);
    }
  }
  return out;
}

constexpr std::string_view kShellingMarker = "# shelling of ";
constexpr std::string_view kCollapseMarker = "# collapse of ";
constexpr std::string_view kRemovedMarker = "# removed:";
constexpr std::string_view kTargetMarker = "# target:";
constexpr std::string_view kSaturationMarker = "# saturation of ";
constexpr std::string_view kPatternMarker = "# H:";
constexpr std::string_view kStartMarker = "# start:";

std::string graph_fingerprint(const Graph& g) { return g.to_complex().fingerprint(); }

}  // namespace

ParsedComplex read_complex(std::istream& in, std::string_view source) {
  const std::string text = slurp(in);
  std::vector<std::vector<std::string>> faces;
  std::vector<std::size_t> lines;
  for (const Line& line : split_lines(text)) {
    // Labels never contain '#', so anything after it is a comment.
    const auto body = trim(line.text.substr(0, line.text.find('#')));
    if (body.empty()) continue;
    faces.push_back(tokens(body, source, line.number, ErrorKind::Parse));
    lines.push_back(line.number);
  }

  ParsedComplex out;
  std::vector<std::size_t> absorbed;
  try {
    out.complex = Complex::from_facets(faces, &absorbed);
  } catch (const Error& e) {
    if (!e.index()) throw Error(e.kind(), std::string(source) + ": " + e.what());
    const std::size_t line = lines.at(*e.index());
    throw Error(e.kind(), where(source, line) + e.what(), line);
  }
  for (std::size_t i : absorbed) {
    std::string face;
    for (const auto& l : faces[i]) face += (face.empty() ? "" : " ") + l;
    out.warnings.push_back(where(source, lines[i]) + "face {" + face +
                           "} lies in a larger face and was absorbed");
  }
  return out;
}

ParsedComplex load_complex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  return read_complex(in, path.string());
}

void write_complex(std::ostream& out, const Complex& k) {
  for (const Face& f : k.facets()) out << k.format(f) << '\n';
}

void write_shelling(std::ostream& out, const Complex& k, const ShellingCertificate& cert) {
  out << kShellingMarker << k.fingerprint() << '\n';
  for (const Face& f : cert.order) out << k.format(f) << '\n';
}

ShellingCertificate read_shelling(std::istream& in, const Complex& k, std::string_view source) {
  const std::string text = slurp(in);
  ShellingCertificate cert;
  for (const Line& line : split_lines(text)) {
    if (starts_with(line.text, kShellingMarker)) {
      check_fingerprint(line.text, kShellingMarker, k.fingerprint(), source, line.number);
      continue;
    }
    if (line.text.empty() || line.text.front() == '#') continue;
    cert.order.push_back(resolve_text(k.labels(), line.text, source, line.number));
  }
  return cert;
}

void write_collapse(std::ostream& out, const Complex& k, const CollapseCertificate& cert) {
  out << kCollapseMarker << k.fingerprint() << '\n';
  out << kRemovedMarker;
  if (!cert.removed_triangles.empty()) out << ' ' << join(cert.removed_triangles, k.labels());
  out << '\n';
  for (const auto& step : cert.steps) {
    out << k.format(step.free_face) << " -> " << k.format(step.facet) << '\n';
  }
  out << kTargetMarker << '\n';
  for (const Face& f : cert.target.facets()) {
    if (f.empty()) continue;
    out << k.format(f) << '\n';
  }
}

CollapseCertificate read_collapse(std::istream& in, const Complex& k, std::string_view source) {
  const std::string text = slurp(in);
  CollapseCertificate cert;
  std::vector<Face> target;
  bool in_target = false;
  for (const Line& line : split_lines(text)) {
    const auto s = line.text;
    if (starts_with(s, kCollapseMarker)) {
      check_fingerprint(s, kCollapseMarker, k.fingerprint(), source, line.number);
    } else if (starts_with(s, kRemovedMarker)) {
      auto removed = resolve_list(k.labels(), s.substr(kRemovedMarker.size()), source, line.number);
      cert.removed_triangles.insert(cert.removed_triangles.end(), removed.begin(), removed.end());
    } else if (starts_with(s, kTargetMarker)) {
      in_target = true;
    } else if (s.empty() || s.front() == '#') {
      continue;
    } else if (in_target) {
      target.push_back(resolve_text(k.labels(), s, source, line.number));
    } else {
      const auto arrow = s.find("->");
      if (arrow == std::string_view::npos) {
        throw Error(ErrorKind::MalformedCertificate,
                    where(source, line.number) + "expected 'face -> facet'", line.number);
      }
      cert.steps.push_back({resolve_text(k.labels(), trim(s.substr(0, arrow)), source, line.number),
                            resolve_text(k.labels(), trim(s.substr(arrow + 2)), source,
                                         line.number)});
    }
  }
  if (!in_target) {
    throw Error(ErrorKind::MalformedCertificate,
                std::string(source) + ": missing '# target:' section");
  }
  if (target.empty()) target.push_back(Face{});
  cert.target = Complex::from_generators(k.label_table(), std::move(target));
  return cert;
}

void write_saturation(std::ostream& out, const Graph& host, const SaturationCertificate& cert) {
  out << kSaturationMarker << graph_fingerprint(host) << '\n';
  out << kPatternMarker << ' ' << cert.pattern << '\n';
  out << kStartMarker;
  if (!cert.start.edges().empty()) out << ' ' << join(cert.start.edges(), host.labels());
  out << '\n';
  for (std::size_t i = 0; i < cert.order.size(); ++i) {
    out << host.format(cert.order[i]) << " : " << host.format(cert.witnesses[i]) << '\n';
  }
}

SaturationCertificate read_saturation(std::istream& in, const Graph& host,
                                      std::string_view source) {
  const std::string text = slurp(in);
  SaturationCertificate cert;
  std::vector<Face> start;
  bool have_start = false;
  for (const Line& line : split_lines(text)) {
    const auto s = line.text;
    if (starts_with(s, kSaturationMarker)) {
      check_fingerprint(s, kSaturationMarker, graph_fingerprint(host), source, line.number);
    } else if (starts_with(s, kPatternMarker)) {
      cert.pattern = std::string(trim(s.substr(kPatternMarker.size())));
      if (cert.pattern != "K3") {
        throw Error(ErrorKind::MalformedCertificate,
                    where(source, line.number) + "unsupported pattern '" + cert.pattern + "'",
                    line.number);
      }
    } else if (starts_with(s, kStartMarker)) {
      auto edges = resolve_list(host.labels(), s.substr(kStartMarker.size()), source, line.number);
      start.insert(start.end(), edges.begin(), edges.end());
      have_start = true;
    } else if (s.empty() || s.front() == '#') {
      continue;
    } else {
      const auto colon = s.find(':');
      if (colon == std::string_view::npos) {
        throw Error(ErrorKind::MalformedCertificate,
                    where(source, line.number) + "expected 'edge : triangle'", line.number);
      }
      cert.order.push_back(
          resolve_text(host.labels(), trim(s.substr(0, colon)), source, line.number));
      cert.witnesses.push_back(
          resolve_text(host.labels(), trim(s.substr(colon + 1)), source, line.number));
    }
  }
  if (!have_start) {
    throw Error(ErrorKind::MalformedCertificate,
                std::string(source) + ": missing '# start:' line");
  }
  std::sort(start.begin(), start.end());
  try {
    cert.start = Graph(host.label_table(), host.vertices(), std::move(start));
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedCertificate, std::string(source) + ": " + e.what());
  }
  return cert;
}

CertificateKind detect_certificate_kind(std::string_view text) {
  for (const Line& line : split_lines(text)) {
    const auto s = line.text;
    if (starts_with(s, kShellingMarker)) return CertificateKind::Shelling;
    if (starts_with(s, kSaturationMarker) || starts_with(s, kStartMarker)) {
      return CertificateKind::Saturation;
    }
    if (starts_with(s, kCollapseMarker) || starts_with(s, kRemovedMarker)) {
      return CertificateKind::Collapse;
    }
  }
  throw Error(ErrorKind::MalformedCertificate, "no certificate marker line found");
}

void write_chain_report(std::ostream& out, const ChainReport& report) {
  out << "# chain report\n";
  out << "input: " << report.input_fingerprint << '\n';
  out << "subdivision-depth: " << report.subdivision_depth << '\n';
  out << "subject: " << report.subject.fingerprint() << '\n';
  const FVector f = f_vector(report.subject);
  out << "f-vector:";
  for (std::size_t c : f.counts) out << ' ' << c;
  out << '\n';
  out << "reduced-euler-characteristic: " << report.chi << '\n';
  out << "status: " << to_string(report.status) << '\n';
  if (report.removed_count) out << "removed-count: " << *report.removed_count << '\n';
  if (report.wsat_tree) out << "wsat-tree: " << (*report.wsat_tree ? "yes" : "no") << '\n';

  for (const auto& stage : report.stages) {
    out << "\n[" << stage.stage << "] " << to_string(stage.status);
    if (!stage.detail.empty()) out << ": " << stage.detail;
    out << '\n';
    if (stage.status != StageStatus::Passed) continue;
    if (stage.stage == "shelling" && report.shelling) {
      write_shelling(out, report.subject, *report.shelling);
    } else if (stage.stage == "saturation" && report.saturation) {
      write_saturation(out, Graph::from_complex(report.subject), *report.saturation);
    } else if (stage.stage == "collapse" && report.collapse) {
      write_collapse(out, report.subject, *report.collapse);
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  return slurp(in);
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": cannot write file");
  out << contents;
}

}  // namespace shellsat::io
