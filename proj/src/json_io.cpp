#include <fstream>
#include <iomanip>
#include <sstream>

#include "couplingkit/errors.hpp"
#include "couplingkit/io.hpp"

namespace couplingkit::io {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

namespace {

bool is_flat_array(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& x : j) {
    if (x.is_array() || x.is_object()) return false;
  }
  return true;
}

// Like dump(2), but arrays of scalars stay on one line so matrix rows read
// as rows.
void pretty(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (is_flat_array(j)) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += j[i].dump();
    }
    out += "]";
  } else if (j.is_array() && !j.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  out += "\n";
  return out;
}

Rat parse_rat(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
  return Rat::parse(j.get<std::string>());
}

Json rat_json(const Rat& r) { return r.str(); }

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> parse_labels(const Json& j) {
  if (!j.is_array()) throw ParseError("alphabet must be an array of strings");
  std::vector<std::string> labels;
  for (const auto& s : j) {
    if (!s.is_string()) throw ParseError("alphabet labels must be strings, got " + s.dump());
    labels.push_back(s.get<std::string>());
  }
  return labels;
}

Alphabet parse_alphabet(const Json& j) {
  try {
    return Alphabet(parse_labels(j));
  } catch (const InvalidDistribution& e) {
    throw ParseError(e.what());
  }
}

std::vector<Rat> parse_vector(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw ParseError(std::string(what) + " must be an array of " + std::to_string(n) + " rational strings");
  }
  std::vector<Rat> out;
  out.reserve(n);
  for (const auto& x : j) out.push_back(parse_rat(x));
  return out;
}

RatMatrix parse_matrix(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw ParseError("matrix must have " + std::to_string(n) + " rows");
  }
  RatMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = parse_vector(j[r], n, "matrix row");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = std::move(row[c]);
  }
  return m;
}

Json labels_json(const Alphabet& a) {
  Json out = Json::array();
  for (const auto& s : a.symbols()) out.push_back(s);
  return out;
}

Json matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Alphabet two_dim_alphabet(const Json& j) {
  const bool has_rows = j.contains("rows");
  const bool has_cols = j.contains("cols");
  if (has_rows != has_cols) throw ParseError("'rows' and 'cols' must be given together");
  if (has_rows) {
    auto rows = parse_labels(j["rows"]);
    if (rows != parse_labels(j["cols"])) throw ParseError("'rows' and 'cols' must list the same alphabet");
    if (j.contains("alphabet") && parse_labels(j["alphabet"]) != rows) {
      throw ParseError("'rows' disagrees with 'alphabet'");
    }
    return parse_alphabet(j["rows"]);
  }
  return parse_alphabet(field(j, "alphabet"));
}

}  // namespace

Distribution parse_distribution(const Json& j) {
  if (!j.is_object()) throw ParseError("distribution file must be a JSON object");
  if (j.contains("kind")) {
    const auto& kind = j["kind"];
    if (!kind.is_string() || (kind != "distribution" && kind != "distribution2")) {
      throw ParseError("not a distribution file (kind " + kind.dump() + ")");
    }
  }
  const bool one_dim = j.contains("p");
  const bool two_dim = j.contains("matrix");
  if (one_dim == two_dim) {
    throw ParseError(one_dim ? "ambiguous distribution: both 'p' and 'matrix' present"
                             : "distribution needs either 'p' or 'matrix'");
  }
  try {
    if (one_dim) {
      Alphabet alphabet = parse_alphabet(field(j, "alphabet"));
      auto probs = parse_vector(j["p"], alphabet.size(), "'p'");
      return Pmf(std::move(alphabet), std::move(probs));
    }
    Alphabet alphabet = two_dim_alphabet(j);
    RatMatrix m = parse_matrix(j["matrix"], alphabet.size());
    return Pmf2(std::move(alphabet), std::move(m));
  } catch (const InvalidDistribution& e) {
    throw ParseError(e.what());
  } catch (const AlphabetMismatch& e) {
    throw ParseError(e.what());
  }
}

Distribution load_distribution(const std::filesystem::path& path) {
  try {
    return parse_distribution(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const Pmf& p) {
  Json out;
  out["alphabet"] = labels_json(p.alphabet());
  Json probs = Json::array();
  for (const auto& x : p.probs()) probs.push_back(rat_json(x));
  out["p"] = std::move(probs);
  return out;
}

Json to_json(const Pmf2& p) {
  Json out;
  out["alphabet"] = labels_json(p.alphabet());
  out["matrix"] = matrix_json(p.matrix());
  return out;
}

CouplingFile parse_coupling(const Json& j) {
  if (!j.is_object()) throw ParseError("coupling file must be a JSON object");
  const bool has_matrix = j.contains("matrix");
  const bool has_blocks = j.contains("blocks");
  if (has_matrix == has_blocks) {
    throw ParseError("coupling file needs exactly one of 'matrix' or 'blocks'");
  }
  Alphabet alphabet = parse_alphabet(field(j, "alphabet"));
  const std::size_t n = alphabet.size();
  if (has_matrix) {
    if (j.contains("kind") && j["kind"] != "coupling") throw ParseError("unexpected kind " + j["kind"].dump());
    RatMatrix m = parse_matrix(j["matrix"], n);
    return CouplingFile{std::move(alphabet), std::move(m), false};
  }

  if (j.contains("kind") && j["kind"] != "coupling4") throw ParseError("unexpected kind " + j["kind"].dump());
  const auto& blocks = j["blocks"];
  if (!blocks.is_array() || blocks.size() != n * n) {
    throw ParseError("'blocks' must hold one entry per (x1,x2) pair (" + std::to_string(n * n) + ")");
  }
  RatMatrix flat(n * n, n * n);
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      const auto& block = blocks[x1 * n + x2];
      if (!block.is_object() || field(block, "x1") != alphabet[x1] || field(block, "x2") != alphabet[x2]) {
        throw ParseError("block " + std::to_string(x1 * n + x2) + " must be labeled x1=" + alphabet[x1] +
                         ", x2=" + alphabet[x2]);
      }
      RatMatrix cells = parse_matrix(field(block, "cells"), n);
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        for (std::size_t y2 = 0; y2 < n; ++y2) flat(x1 * n + x2, y1 * n + y2) = cells(y1, y2);
      }
    }
  }
  return CouplingFile{std::move(alphabet), std::move(flat), true};
}

CouplingFile load_coupling(const std::filesystem::path& path) {
  try {
    return parse_coupling(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const Coupling& c) {
  Json out;
  out["kind"] = "coupling";
  out["alphabet"] = labels_json(c.alphabet());
  out["matrix"] = matrix_json(c.matrix());
  return out;
}

Json to_json(const Coupling4& c) {
  const std::size_t n = c.size();
  const auto& alpha = c.alphabet();
  Json blocks = Json::array();
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      Json cells = Json::array();
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        Json row = Json::array();
        for (std::size_t y2 = 0; y2 < n; ++y2) row.push_back(rat_json(c(x1, x2, y1, y2)));
        cells.push_back(std::move(row));
      }
      Json block;
      block["x1"] = alpha[x1];
      block["x2"] = alpha[x2];
      block["cells"] = std::move(cells);
      blocks.push_back(std::move(block));
    }
  }
  Json out;
  out["kind"] = "coupling4";
  out["alphabet"] = labels_json(alpha);
  out["blocks"] = std::move(blocks);
  return out;
}

Json to_json(const LemmaAudit& a) {
  Json out;
  out["v"] = rat_json(a.v);
  out["mismatch"] = rat_json(a.mismatch);
  out["holds"] = a.holds;
  out["maximal"] = a.maximal;
  out["gap"] = rat_json(a.gap);
  return out;
}

Json to_json(const MismatchComponents& m) {
  Json out;
  out["pairMismatch"] = rat_json(m.pair);
  out["coordMismatch"] = rat_json(m.coord);
  return out;
}

Json to_json(const DualCertificate& cert) {
  Json out;
  Json u = Json::array();
  Json v = Json::array();
  for (const auto& x : cert.u) u.push_back(rat_json(x));
  for (const auto& x : cert.v) v.push_back(rat_json(x));
  out["u"] = std::move(u);
  out["v"] = std::move(v);
  out["objective"] = rat_json(cert.objective);
  return out;
}

Json to_json(const EpsilonAuditReport& r) {
  Json out;
  out["n"] = r.n;
  out["v"] = rat_json(r.v);
  out["independentMismatch"] = rat_json(r.independent_mismatch);
  out["maximalMismatch"] = rat_json(r.maximal_mismatch);
  out["oracleMinMismatch"] = rat_json(r.oracle_min_mismatch);
  out["certificateVerified"] = r.certificate_verified;
  out["hypothesisHolds"] = r.hypothesis_holds;
  out["strictGapHolds"] = r.strict_gap_holds;
  out["degenerateKey"] = r.degenerate_key;
  Json facts;
  facts["correlationRequired"] = r.correlation_required;
  facts["lowerBoundOverAllCouplings"] = r.lower_bound_all;
  facts["strictWhenIndependent"] = r.strict_when_independent;
  out["facts"] = std::move(facts);
  out["epsilon"] = r.epsilon ? Json(rat_json(*r.epsilon)) : Json(nullptr);
  out["epsilonConsistent"] = r.epsilon_consistent;
  return out;
}

}  // namespace couplingkit::io
