#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "shellsat/certificates.hpp"
#include "shellsat/collapse.hpp"
#include "shellsat/complex.hpp"
#include "shellsat/error.hpp"
#include "shellsat/harness.hpp"
#include "shellsat/io.hpp"
#include "shellsat/shelling.hpp"
#include "shellsat/wsat.hpp"

namespace shellsat::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string in;
  std::string out;
  std::string cert;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  int depth = 1;
  std::optional<std::size_t> k;
  unsigned threads = 1;
  bool json = false;
  bool number = false;
  std::string mode = "random-pure-2";
  std::size_t vertices = 4;
  std::size_t triangles = 2;
  std::size_t count = 1;
};

struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;

  SearchOptions search() const { return {opt.budget, opt.threads}; }

  io::ParsedComplex input() const {
    if (opt.in.empty()) throw Error(ErrorKind::Parameter, "--in is required");
    auto parsed = io::load_complex(opt.in);
    for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
    return parsed;
  }

  // Text goes to --out when given, else to stdout.
  void emit(const std::string& text) const {
    if (opt.out.empty()) {
      out << text;
    } else {
      io::write_file(opt.out, text);
    }
  }

  void print_json(const ordered_json& j) const { out << j.dump(2) << '\n'; }
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

ordered_json f_vector_json(const Complex& k) {
  ordered_json arr = ordered_json::array();
  for (std::size_t c : f_vector(k).counts) arr.push_back(c);
  return arr;
}

std::string f_vector_text(const Complex& k) {
  std::string s;
  for (std::size_t c : f_vector(k).counts) s += (s.empty() ? "" : " ") + std::to_string(c);
  return s;
}

// Reports a decision: verdict word, optional certificate text, exit code.
int report(const Context& ctx, const char* command, const std::string& verdict, int code,
           const std::string& certificate = {}, const std::string& detail = {}) {
  if (!certificate.empty() && !ctx.opt.out.empty()) io::write_file(ctx.opt.out, certificate);
  if (ctx.opt.json) {
    ordered_json j;
    j["command"] = command;
    j["verdict"] = verdict;
    j["exit_code"] = code;
    j["detail"] = detail;
    j["certificate"] = certificate.empty() ? ordered_json(nullptr) : ordered_json(certificate);
    ctx.print_json(j);
    return code;
  }
  ctx.out << verdict;
  if (!detail.empty()) ctx.out << ": " << detail;
  ctx.out << '\n';
  if (!certificate.empty() && ctx.opt.out.empty()) ctx.out << certificate;
  return code;
}

std::string budget_detail(const BudgetExceeded& b) {
  return "gave up after " + std::to_string(b.nodes) + " nodes";
}

std::string verdict_detail(const Verdict& v) {
  std::string s = v.reason;
  if (v.index) s = "entry " + std::to_string(*v.index) + ": " + s;
  return s;
}

int cmd_info(const Context& ctx) {
  const Complex k = ctx.input().complex;
  const bool flag_defined = k.dimension() <= 2;
  if (ctx.opt.json) {
    ordered_json j;
    j["fingerprint"] = k.fingerprint();
    j["vertices"] = k.num_vertices();
    j["f_vector"] = f_vector_json(k);
    j["reduced_euler_characteristic"] = reduced_euler_characteristic(k);
    j["dimension"] = k.dimension();
    j["pure"] = is_pure(k);
    j["flag"] = flag_defined ? ordered_json(is_flag2(k)) : ordered_json(nullptr);
    j["connected"] = is_connected(k);
    ctx.print_json(j);
    return kHolds;
  }
  ctx.out << "fingerprint: " << k.fingerprint() << '\n'
          << "vertices: " << k.num_vertices() << '\n'
          << "f-vector: " << f_vector_text(k) << '\n'
          << "reduced-euler-characteristic: " << reduced_euler_characteristic(k) << '\n'
          << "dimension: " << k.dimension() << '\n'
          << "pure: " << yes_no(is_pure(k)) << '\n'
          << "flag: " << (flag_defined ? yes_no(is_flag2(k)) : "n/a") << '\n'
          << "connected: " << yes_no(is_connected(k)) << '\n';
  return kHolds;
}

int cmd_sd(const Context& ctx) {
  const Complex k = ctx.input().complex;
  std::ostringstream text;
  io::write_complex(text, barycentric_subdivision(k, ctx.opt.depth));
  ctx.emit(text.str());
  return kHolds;
}

int cmd_shell(const Context& ctx) {
  const Complex k = ctx.input().complex;
  if (!ctx.opt.cert.empty()) {
    std::ifstream in(ctx.opt.cert, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, ctx.opt.cert + ": cannot open file");
    const auto cert = io::read_shelling(in, k, ctx.opt.cert);
    const auto v = verify_shelling(k, cert);
    return report(ctx, "shell", v ? "valid" : "invalid", v ? kHolds : kRefuted, {},
                  verdict_detail(v));
  }
  auto result = find_shelling(k, ctx.search());
  if (auto* c = std::get_if<ShellingCertificate>(&result)) {
    std::ostringstream text;
    io::write_shelling(text, k, *c);
    return report(ctx, "shell", "shellable", kHolds, text.str());
  }
  if (auto* b = std::get_if<BudgetExceeded>(&result)) {
    return report(ctx, "shell", "budget-exceeded", kBudgetExceeded, {}, budget_detail(*b));
  }
  return report(ctx, "shell", "unshellable", kRefuted);
}

int cmd_collapse(const Context& ctx) {
  const Complex k = ctx.input().complex;
  if (!ctx.opt.cert.empty()) {
    std::ifstream in(ctx.opt.cert, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, ctx.opt.cert + ": cannot open file");
    const auto cert = io::read_collapse(in, k, ctx.opt.cert);
    auto v = verify_collapse(k, cert);
    if (v && ctx.opt.k && cert.removed_triangles.size() != *ctx.opt.k) {
      v = Verdict::fail("certificate removes " + std::to_string(cert.removed_triangles.size()) +
                        " triangles, expected " + std::to_string(*ctx.opt.k));
    }
    return report(ctx, "collapse", v ? "valid" : "invalid", v ? kHolds : kRefuted, {},
                  verdict_detail(v));
  }
  std::ostringstream text;
  if (!ctx.opt.k) {
    auto result = is_collapsible(k, ctx.search());
    if (auto* c = std::get_if<CollapseCertificate>(&result)) {
      io::write_collapse(text, k, *c);
      return report(ctx, "collapse", "collapsible", kHolds, text.str());
    }
    if (auto* b = std::get_if<BudgetExceeded>(&result)) {
      return report(ctx, "collapse", "budget-exceeded", kBudgetExceeded, {}, budget_detail(*b));
    }
    return report(ctx, "collapse", "not-collapsible", kRefuted);
  }
  auto result = collapsible_after_removing(k, *ctx.opt.k, ctx.search());
  if (auto* c = std::get_if<CollapseCertificate>(&result)) {
    io::write_collapse(text, k, *c);
    return report(ctx, "collapse", "collapsible", kHolds, text.str());
  }
  if (auto* b = std::get_if<BudgetExceeded>(&result)) {
    return report(ctx, "collapse", "budget-exceeded", kBudgetExceeded, {}, budget_detail(*b));
  }
  return report(ctx, "collapse", "impossible", kRefuted);
}

Graph input_graph(const Context& ctx) {
  const Complex k = ctx.input().complex;
  if (k.dimension() > 1) {
    throw Error(ErrorKind::Parse, ctx.opt.in + ": graph files hold only vertices and edges");
  }
  return Graph::from_complex(k);
}

int cmd_wsat(const Context& ctx) {
  const Graph host = input_graph(ctx);
  if (!ctx.opt.cert.empty()) {
    std::ifstream in(ctx.opt.cert, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, ctx.opt.cert + ": cannot open file");
    const auto cert = io::read_saturation(in, host, ctx.opt.cert);
    const auto v = verify_saturation(host, cert);
    return report(ctx, "wsat", v ? "valid" : "invalid", v ? kHolds : kRefuted, {},
                  verdict_detail(v));
  }
  if (ctx.opt.number) {
    auto result = wsat_number(host, ctx.search());
    if (auto* b = std::get_if<BudgetExceeded>(&result)) {
      return report(ctx, "wsat", "budget-exceeded", kBudgetExceeded, {}, budget_detail(*b));
    }
    const auto& w = std::get<WsatNumber>(result);
    auto cert = std::get<SaturationCertificate>(extract_saturation_order(host, w.witness));
    std::ostringstream text;
    io::write_saturation(text, host, cert);
    return report(ctx, "wsat", "wsat=" + std::to_string(w.value), kHolds, text.str());
  }
  auto result = decide_wsat_eq_treesize(host, ctx.search());
  if (auto* c = std::get_if<SaturationCertificate>(&result)) {
    std::ostringstream text;
    io::write_saturation(text, host, *c);
    return report(ctx, "wsat", "tree-saturates", kHolds, text.str());
  }
  if (auto* b = std::get_if<BudgetExceeded>(&result)) {
    return report(ctx, "wsat", "budget-exceeded", kBudgetExceeded, {}, budget_detail(*b));
  }
  return report(ctx, "wsat", "no-tree-saturates", kRefuted);
}

int cmd_convert(const Context& ctx) {
  const Complex k = ctx.input().complex;
  if (ctx.opt.cert.empty()) throw Error(ErrorKind::Parameter, "--cert is required");
  const std::string text = io::read_file(ctx.opt.cert);
  std::istringstream in(text);
  std::ostringstream result;
  switch (io::detect_certificate_kind(text)) {
    case io::CertificateKind::Shelling: {
      const auto cert = io::read_shelling(in, k, ctx.opt.cert);
      io::write_saturation(result, Graph::from_complex(k), shelling_to_saturated_tree(k, cert));
      return report(ctx, "convert", "saturation", kHolds, result.str());
    }
    case io::CertificateKind::Saturation: {
      const auto cert = io::read_saturation(in, Graph::from_complex(k), ctx.opt.cert);
      io::write_collapse(result, k, saturation_to_collapse(k, cert));
      return report(ctx, "convert", "collapse", kHolds, result.str());
    }
    case io::CertificateKind::Collapse:
      break;
  }
  throw Error(ErrorKind::Parameter, "collapse certificates are the end of the chain");
}

ordered_json chain_json(const ChainReport& r) {
  ordered_json j;
  j["input_fingerprint"] = r.input_fingerprint;
  j["subdivision_depth"] = r.subdivision_depth;
  j["subject_fingerprint"] = r.subject.fingerprint();
  j["f_vector"] = f_vector_json(r.subject);
  j["reduced_euler_characteristic"] = r.chi;
  j["status"] = std::string(to_string(r.status));
  j["removed_count"] = r.removed_count ? ordered_json(*r.removed_count) : ordered_json(nullptr);
  j["wsat_tree"] = r.wsat_tree ? ordered_json(*r.wsat_tree) : ordered_json(nullptr);
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    ordered_json st;
    st["stage"] = s.stage;
    st["status"] = std::string(to_string(s.status));
    st["detail"] = s.detail;
    std::ostringstream cert;
    if (s.status == StageStatus::Passed) {
      if (s.stage == "shelling" && r.shelling) io::write_shelling(cert, r.subject, *r.shelling);
      if (s.stage == "saturation" && r.saturation) {
        io::write_saturation(cert, Graph::from_complex(r.subject), *r.saturation);
      }
      if (s.stage == "collapse" && r.collapse) io::write_collapse(cert, r.subject, *r.collapse);
    }
    st["certificate"] = cert.str().empty() ? ordered_json(nullptr) : ordered_json(cert.str());
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  return j;
}

int cmd_chain(const Context& ctx) {
  const Complex k = ctx.input().complex;
  const ChainReport r = run_chain(k, ctx.search());
  std::ostringstream text;
  if (ctx.opt.json) {
    text << chain_json(r).dump(2) << '\n';
  } else {
    io::write_chain_report(text, r);
  }
  ctx.emit(text.str());
  switch (r.status) {
    case ChainStatus::Complete: return kHolds;
    case ChainStatus::BudgetExceeded: return kBudgetExceeded;
    case ChainStatus::Unshellable:
    case ChainStatus::Failed: return kRefuted;
  }
  return kRefuted;
}

int cmd_gen(const Context& ctx) {
  harness::GeneratorSpec spec;
  spec.seed = ctx.opt.seed;
  spec.mode = harness::parse_mode(ctx.opt.mode);
  spec.n_vertices = ctx.opt.vertices;
  spec.n_triangles = ctx.opt.triangles;
  spec.depth = ctx.opt.depth;
  spec.count = ctx.opt.count;
  if (!ctx.opt.out.empty()) {
    const auto instances = harness::write_corpus(ctx.opt.out, spec);
    ctx.out << "wrote " << instances.size() << " instances to " << ctx.opt.out << '\n';
    return kHolds;
  }
  const auto instances = harness::generate(spec);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    ctx.out << "# instance " << i << ' ' << instances[i].complex.fingerprint()
            << " retries=" << instances[i].retries << '\n';
    io::write_complex(ctx.out, instances[i].complex);
  }
  return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Shellability, collapsibility and weak K3-saturation toolkit", "shellsat"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_in) {
    auto* in = sub->add_option("--in", opt.in, "input complex (.sc)");
    if (needs_in) in->required();
    sub->add_option("--out", opt.out, "output file");
    sub->add_flag("--json", opt.json, "machine-readable report");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--budget", opt.budget, "search node budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", opt.seed, "random seed");
  };

  auto* info = app.add_subcommand("info", "f-vector, Euler characteristic and predicates");
  add_common(info, true);
  auto* sd = app.add_subcommand("sd", "barycentric subdivision");
  add_common(sd, true);
  sd->add_option("--depth", opt.depth, "number of subdivisions")->check(CLI::NonNegativeNumber);
  auto* shell = app.add_subcommand("shell", "find or verify a shelling");
  add_common(shell, true);
  add_search(shell);
  shell->add_option("--cert", opt.cert, "shelling certificate to verify");
  auto* collapse = app.add_subcommand("collapse", "find or verify a collapse to a point");
  add_common(collapse, true);
  add_search(collapse);
  collapse->add_option("--cert", opt.cert, "collapse certificate to verify");
  collapse->add_option("--k", opt.k, "number of triangles to remove first");
  auto* wsat = app.add_subcommand("wsat", "weak K3-saturation by a spanning tree");
  add_common(wsat, true);
  add_search(wsat);
  wsat->add_option("--cert", opt.cert, "saturation certificate to verify");
  wsat->add_flag("--number", opt.number, "compute the weak saturation number");
  auto* convert = app.add_subcommand("convert", "translate a certificate along the chain");
  add_common(convert, true);
  convert->add_option("--cert", opt.cert, "shelling or saturation certificate")->required();
  auto* chain = app.add_subcommand("chain", "run the full certificate chain");
  add_common(chain, true);
  add_search(chain);
  auto* gen = app.add_subcommand("gen", "generate an instance corpus");
  add_common(gen, false);
  gen->add_option("--seed", opt.seed, "random seed");
  gen->add_option("--mode", opt.mode, "random-pure-2 | enumerate-all | subdivide-depth-k");
  gen->add_option("--vertices", opt.vertices, "vertex count");
  gen->add_option("--triangles", opt.triangles, "triangle count (bound for enumerate-all)");
  gen->add_option("--count", opt.count, "instances for random modes");
  gen->add_option("--depth", opt.depth, "subdivision depth")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const Context ctx{opt, out, err};
  try {
    if (info->parsed()) return cmd_info(ctx);
    if (sd->parsed()) return cmd_sd(ctx);
    if (shell->parsed()) return cmd_shell(ctx);
    if (collapse->parsed()) return cmd_collapse(ctx);
    if (wsat->parsed()) return cmd_wsat(ctx);
    if (convert->parsed()) return cmd_convert(ctx);
    if (chain->parsed()) return cmd_chain(ctx);
    if (gen->parsed()) return cmd_gen(ctx);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace shellsat::cli
