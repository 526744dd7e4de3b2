// couplingkit: exact variational distance, couplings and their optimality
// certificates for finite distributions.
//
// Exit codes: 0 ok, 1 usage/internal, 2 parse, 3 alphabet mismatch,
// 4 invalid coupling, 5 epsilon inconsistency, 6 golden mismatch.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "couplingkit/coupling.hpp"
#include "couplingkit/errors.hpp"
#include "couplingkit/io.hpp"
#include "couplingkit/metrics.hpp"
#include "couplingkit/multidim.hpp"
#include "couplingkit/worked_examples.hpp"
#include "couplingkit/qkd_report.hpp"
#include "couplingkit/transport.hpp"

namespace fs = std::filesystem;
using namespace couplingkit;
using io::Json;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kAlphabet = 3,
  kInvalidCoupling = 4,
  kEpsilon = 5,
  kGolden = 6,
};

struct Config {
  std::string format = "table";
  int precision = 5;
  std::size_t subset_limit = kDefaultSubsetLimit;
  std::size_t vertex_limit = kDefaultVertexLimit;
  std::string out;
};

bool json_out(const Config& cfg) { return cfg.format == "json"; }

std::string show(const Rat& r, const Config& cfg) { return r.str() + " (" + r.decimal(cfg.precision) + ")"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Both inputs as one-dimensional Pmfs; two-dimensional inputs are flattened.
struct PmfPair {
  Pmf p;
  Pmf q;
  bool two_dim;
};

PmfPair load_pair(const std::string& p_file, const std::string& q_file) {
  auto p = io::load_distribution(p_file);
  auto q = io::load_distribution(q_file);
  if (p.index() != q.index()) {
    throw AlphabetMismatch("one input is one-dimensional and the other two-dimensional");
  }
  if (const auto* p2 = std::get_if<Pmf2>(&p)) {
    const auto& q2 = std::get<Pmf2>(q);
    require_same_alphabet(p2->alphabet(), q2.alphabet(), "inputs");
    return {p2->flatten(), q2.flatten(), true};
  }
  const auto& p1 = std::get<Pmf>(p);
  const auto& q1 = std::get<Pmf>(q);
  require_same_alphabet(p1.alphabet(), q1.alphabet(), "inputs");
  return {p1, q1, false};
}

std::pair<Pmf2, Pmf2> load_pair2(const std::string& p_file, const std::string& q_file) {
  auto p = io::load_distribution(p_file);
  auto q = io::load_distribution(q_file);
  const auto* p2 = std::get_if<Pmf2>(&p);
  const auto* q2 = std::get_if<Pmf2>(&q);
  if (!p2 || !q2) throw AlphabetMismatch("four-index coupling needs two-dimensional marginals");
  require_same_alphabet(p2->alphabet(), q2->alphabet(), "inputs");
  return {*p2, *q2};
}

void emit(const Config& cfg, const Json& doc, const std::string& text) {
  if (json_out(cfg)) {
    std::cout << io::dump(doc);
  } else {
    std::cout << text;
  }
}

int cmd_vdist(const Config& cfg, const std::string& p_file, const std::string& q_file, bool subsets) {
  const auto pair = load_pair(p_file, q_file);
  const Rat v = vdist_halfsum(pair.p, pair.q);

  Json doc;
  doc["v"] = io::rat_json(v);
  doc["decimal"] = v.decimal(cfg.precision);
  std::string text = show(v, cfg) + "\n";

  if (subsets) {
    const auto best = vdist_subset(pair.p, pair.q, cfg.subset_limit);
    if (best.value != v) {
      std::cerr << "internal error: subset maximum " << best.value << " differs from half-sum " << v << "\n";
      return kUsage;
    }
    Json members = Json::array();
    std::string set = "{";
    for (std::size_t k = 0; k < best.members.size(); ++k) {
      const auto& label = pair.p.alphabet()[best.members[k]];
      members.push_back(label);
      set += (k ? "," : "") + label;
    }
    set += "}";
    doc["attainedAt"] = std::move(members);
    text += "attained at S = " + set + "\n";
  }
  emit(cfg, doc, text);
  return kOk;
}

std::string audit_text(const LemmaAudit& a, const Config& cfg) {
  std::ostringstream s;
  s << "v        = " << show(a.v, cfg) << "\n"
    << "mismatch = " << show(a.mismatch, cfg) << "\n"
    << "gap      = " << show(a.gap, cfg) << "\n"
    << "v <= mismatch: " << yes_no(a.holds) << "\n"
    << "maximal: " << yes_no(a.maximal) << "\n";
  return s.str();
}

std::string components_text(const Rat& v, const MismatchComponents& m, const Config& cfg) {
  std::ostringstream s;
  s << "v             = " << show(v, cfg) << "\n"
    << "pair mismatch = " << show(m.pair, cfg) << "\n"
    << "x2 != y2      = " << show(m.coord, cfg) << "\n"
    << "maximal: " << yes_no(v == m.pair) << "\n";
  return s.str();
}

Json components_json(const Rat& v, const MismatchComponents& m) {
  Json doc = io::to_json(m);
  doc["v"] = io::rat_json(v);
  doc["maximal"] = v == m.pair;
  return doc;
}

int cmd_couple(const Config& cfg, const std::string& p_file, const std::string& q_file, const std::string& kind) {
  const auto probe = io::load_distribution(p_file);
  if (std::holds_alternative<Pmf2>(probe)) {
    const auto [p2, q2] = load_pair2(p_file, q_file);
    const Coupling4 c = kind == "maximal"       ? coupling4_maximal(p2, q2)
                        : kind == "independent" ? coupling4_independent(p2, q2)
                                                : coupling4_constrained(p2, q2);
    const Rat v = vdist2(p2, q2);
    const auto m = mismatch_components(c);
    if (!cfg.out.empty()) {
      io::write_text_file(cfg.out, io::dump(io::to_json(c)));
    } else if (!json_out(cfg)) {
      std::cout << io::format_coupling4(c, cfg.precision);
    }
    Json doc;
    if (cfg.out.empty()) doc["coupling"] = io::to_json(c);
    doc["audit"] = components_json(v, m);
    emit(cfg, doc, components_text(v, m, cfg));
    return kOk;
  }

  if (kind == "constrained") {
    std::cerr << "error: --kind constrained needs two-dimensional inputs\n";
    return kUsage;
  }
  const auto pair = load_pair(p_file, q_file);
  const Coupling c = kind == "maximal" ? coupling_maximal(pair.p, pair.q) : coupling_independent(pair.p, pair.q);
  const auto audit = lemma_audit(c);
  if (!cfg.out.empty()) {
    io::write_text_file(cfg.out, io::dump(io::to_json(c)));
  } else if (!json_out(cfg)) {
    std::cout << io::format_matrix(c.alphabet(), c.matrix(), cfg.precision);
  }
  Json doc;
  if (cfg.out.empty()) doc["coupling"] = io::to_json(c);
  doc["audit"] = io::to_json(audit);
  emit(cfg, doc, audit_text(audit, cfg));
  return kOk;
}

int cmd_verify(const Config& cfg, const std::string& c_file, const std::string& p_file, const std::string& q_file) {
  const auto file = io::load_coupling(c_file);
  if (file.four_index) {
    const auto [p2, q2] = load_pair2(p_file, q_file);
    require_same_alphabet(file.alphabet, p2.alphabet(), "coupling file vs marginals");
    const Coupling4 c = coupling4_validate(file.matrix, p2, q2);
    const Rat v = vdist2(p2, q2);
    Json doc = components_json(v, mismatch_components(c));
    doc["valid"] = true;
    emit(cfg, doc, "valid: yes\n" + components_text(v, mismatch_components(c), cfg));
    return kOk;
  }
  const auto pair = load_pair(p_file, q_file);
  if (pair.two_dim) throw AlphabetMismatch("two-index coupling file with two-dimensional marginals");
  require_same_alphabet(file.alphabet, pair.p.alphabet(), "coupling file vs marginals");
  const Coupling c = coupling_validate(file.matrix, pair.p, pair.q);
  const auto audit = lemma_audit(c);
  Json doc = io::to_json(audit);
  doc["valid"] = true;
  emit(cfg, doc, "valid: yes\n" + audit_text(audit, cfg));
  return kOk;
}

int cmd_oracle(const Config& cfg, const std::string& p_file, const std::string& q_file, const std::string& cert_file,
               bool vertices) {
  const auto pair = load_pair(p_file, q_file);
  const auto tp = TransportProblem::mismatch(pair.p, pair.q);
  const auto sol = solve_transport(tp);
  const Rat v = vdist_halfsum(pair.p, pair.q);
  const bool verified = certify(sol.coupling, sol.certificate, tp);
  const Coupling maximal = coupling_maximal(pair.p, pair.q);
  const bool maximal_optimal = certify(maximal, sol.certificate, tp);
  const bool agreement = verified && sol.certificate.objective == v;

  if (!cfg.out.empty()) io::write_text_file(cfg.out, io::dump(io::to_json(sol.coupling)));
  if (!cert_file.empty()) io::write_text_file(cert_file, io::dump(io::to_json(sol.certificate)));

  Json doc;
  doc["objective"] = io::rat_json(sol.certificate.objective);
  doc["v"] = io::rat_json(v);
  doc["agreement"] = agreement;
  doc["certificateVerified"] = verified;
  doc["maximalCouplingOptimal"] = maximal_optimal;
  doc["pivots"] = sol.pivots;
  std::ostringstream text;
  text << "objective = " << show(sol.certificate.objective, cfg) << "\n"
       << "v         = " << show(v, cfg) << "\n"
       << "agreement: " << yes_no(agreement) << "\n"
       << "certificate verified: " << yes_no(verified) << "\n"
       << "product-residual coupling optimal: " << yes_no(maximal_optimal) << "\n";

  if (vertices) {
    const auto all = vertex_enumerate(tp, cfg.vertex_limit);
    std::optional<Rat> best;
    for (const auto& c : all) {
      const Rat m = mismatch_prob(c);
      lemma_audit(c);
      if (!best || m < *best) best = m;
    }
    doc["vertices"] = all.size();
    doc["vertexMinMismatch"] = io::rat_json(*best);
    text << "vertices: " << all.size() << ", min mismatch " << show(*best, cfg) << "\n";
  }
  emit(cfg, doc, text.str());
  if (!cfg.out.empty() && !json_out(cfg)) std::cout << "wrote " << cfg.out << "\n";
  return agreement && maximal_optimal ? kOk : kUsage;
}

int cmd_audit(const Config& cfg, const std::string& pk_file, const std::string& epsilon) {
  auto dist = io::load_distribution(pk_file);
  Pmf pk = std::holds_alternative<Pmf>(dist) ? std::get<Pmf>(dist) : std::get<Pmf2>(dist).flatten();
  std::optional<Rat> eps;
  if (!epsilon.empty()) {
    eps = Rat::parse(epsilon);
    if (eps->sign() < 0 || *eps > Rat(1)) throw ParseError("--epsilon must lie in [0, 1]");
  }
  const auto report = epsilon_audit(EpsilonAuditInput(std::move(pk), eps));
  emit(cfg, io::to_json(report), io::format_report(report, cfg.precision));
  if (!report.epsilon_consistent) {
    std::cerr << "warning: epsilon " << report.epsilon->str() << " is below v = " << report.v.str()
              << "; inconsistent with the claimed bound\n";
    return kEpsilon;
  }
  return kOk;
}

fs::path fixtures_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("COUPLINGKIT_FIXTURES"); env && *env) return env;
  return "fixtures";
}

int cmd_tables(const Config& cfg, const std::string& dir_flag) {
  const fs::path dir = fixtures_dir(dir_flag);
  fs::create_directories(dir);
  if (!cfg.out.empty()) fs::create_directories(cfg.out);

  bool mismatch = false;
  Json doc = Json::array();
  for (const auto& fixture : fixtures::generate()) {
    const fs::path golden = dir / fixture.file_name;
    std::string status;
    std::vector<fixtures::CellDiff> diffs;
    if (!fs::exists(golden)) {
      io::write_text_file(golden, fixture.content);
      status = "created";
    } else {
      std::ifstream in(golden, std::ios::binary);
      const std::string committed((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      diffs = fixtures::diff(committed, fixture.content);
      status = diffs.empty() ? "ok" : "MISMATCH";
      mismatch = mismatch || !diffs.empty();
    }
    if (!cfg.out.empty()) io::write_text_file(fs::path(cfg.out) / fixture.file_name, fixture.content);

    Json entry;
    entry["file"] = fixture.file_name;
    entry["status"] = status;
    Json cells = Json::array();
    for (const auto& d : diffs) cells.push_back(Json{{"path", d.path}, {"golden", d.expected}, {"regenerated", d.actual}});
    entry["diff"] = std::move(cells);
    doc.push_back(std::move(entry));

    if (!json_out(cfg)) {
      std::cout << status << "  " << golden.string() << "\n";
      for (const auto& d : diffs) {
        std::cout << "    " << d.path << ": golden " << d.expected << ", regenerated " << d.actual << "\n";
      }
    }
  }
  if (json_out(cfg)) std::cout << io::dump(doc);
  return mismatch ? kGolden : kOk;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--precision", cfg.precision, "Decimal places in displayed values")->check(CLI::Range(1, 60));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact couplings, variational distance and LP optimality certificates"};
  app.require_subcommand(1);
  Config cfg;

  std::string p_file;
  std::string q_file;
  std::string c_file;
  std::string kind = "maximal";
  std::string cert_file;
  std::string epsilon;
  std::string fixtures_flag;
  bool subsets = false;
  bool vertices = false;

  auto* vdist = app.add_subcommand("vdist", "Variational distance between two distributions");
  vdist->add_option("P", p_file)->required();
  vdist->add_option("Q", q_file)->required();
  vdist->add_flag("--subsets", subsets, "Cross-check by subset enumeration and print the maximizing event");
  vdist->add_option("--subset-limit", cfg.subset_limit, "Largest alphabet for subset enumeration")
      ->check(CLI::PositiveNumber);
  add_common(vdist, cfg);

  auto* couple = app.add_subcommand("couple", "Construct a coupling and audit it");
  couple->add_option("P", p_file)->required();
  couple->add_option("Q", q_file)->required();
  couple->add_option("--kind", kind, "independent | maximal | constrained (two-dim only)")
      ->check(CLI::IsMember({"independent", "maximal", "constrained"}));
  couple->add_option("--out", cfg.out, "Write the coupling JSON here");
  add_common(couple, cfg);

  auto* verify = app.add_subcommand("verify", "Validate a coupling file against its marginals");
  verify->add_option("COUPLING", c_file)->required();
  verify->add_option("P", p_file)->required();
  verify->add_option("Q", q_file)->required();
  add_common(verify, cfg);

  auto* oracle = app.add_subcommand("oracle", "Certified minimum of Pr{x != y} by transportation simplex");
  oracle->add_option("P", p_file)->required();
  oracle->add_option("Q", q_file)->required();
  oracle->add_option("--out", cfg.out, "Write the optimal coupling JSON here");
  oracle->add_option("--certificate", cert_file, "Write the dual certificate JSON here");
  oracle->add_flag("--vertices", vertices, "Also enumerate all polytope vertices");
  oracle->add_option("--vertex-limit", cfg.vertex_limit, "Largest alphabet for vertex enumeration")
      ->check(CLI::PositiveNumber);
  add_common(oracle, cfg);

  auto* audit = app.add_subcommand("audit", "Epsilon-security audit of a key distribution");
  audit->add_option("PK", p_file)->required();
  audit->add_option("--epsilon", epsilon, "Claimed bound with v(P_K,P_U) <= epsilon");
  add_common(audit, cfg);

  auto* tables = app.add_subcommand("tables", "Regenerate the worked-example tables and compare with golden files");
  tables->add_option("--fixtures", fixtures_flag, "Golden directory (default $COUPLINGKIT_FIXTURES or ./fixtures)");
  tables->add_option("--out", cfg.out, "Also write regenerated tables to this directory");
  add_common(tables, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*vdist) return cmd_vdist(cfg, p_file, q_file, subsets);
    if (*couple) return cmd_couple(cfg, p_file, q_file, kind);
    if (*verify) return cmd_verify(cfg, c_file, p_file, q_file);
    if (*oracle) return cmd_oracle(cfg, p_file, q_file, cert_file, vertices);
    if (*audit) return cmd_audit(cfg, p_file, epsilon);
    if (*tables) return cmd_tables(cfg, fixtures_flag);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InvalidDistribution& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const AlphabetMismatch& e) {
    std::cerr << "alphabet mismatch: " << e.what() << "\n";
    return kAlphabet;
  } catch (const InvalidCoupling& e) {
    std::cerr << e.what() << "\n";
    return kInvalidCoupling;
  } catch (const ConstraintInfeasible& e) {
    std::cerr << e.what() << "\n";
    return kInvalidCoupling;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
