#include "couplingkit/worked_examples.hpp"

#include <array>
#include <sstream>

#include "couplingkit/coupling.hpp"
#include "couplingkit/io.hpp"
#include "couplingkit/metrics.hpp"
#include "couplingkit/multidim.hpp"

namespace couplingkit::fixtures {

namespace {

using io::Json;

RatMatrix parse_rows(const std::vector<std::vector<const char*>>& rows) {
  RatMatrix m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = Rat::parse(rows[r][c]);
  }
  return m;
}

Json coupling_fixture(const char* description, const Coupling& c) {
  Json j = io::to_json(c);
  j["description"] = description;
  j["audit"] = io::to_json(lemma_audit(c));
  return j;
}

Json coupling4_fixture(const char* description, const Coupling4& c) {
  Json j = io::to_json(c);
  j["description"] = description;
  j["v"] = io::rat_json(vdist2(c.left(), c.right()));
  j["mismatch"] = io::to_json(mismatch_components(c));
  return j;
}

void walk(const Json& expected, const Json& actual, const std::string& path, std::vector<CellDiff>& out) {
  if (expected.type() != actual.type()) {
    out.push_back({path.empty() ? "/" : path, expected.dump(), actual.dump()});
    return;
  }
  if (expected.is_object()) {
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      const std::string sub = path + "/" + it.key();
      if (!actual.contains(it.key())) {
        out.push_back({sub, it.value().dump(), "<missing>"});
      } else {
        walk(it.value(), actual[it.key()], sub, out);
      }
    }
    for (auto it = actual.begin(); it != actual.end(); ++it) {
      if (!expected.contains(it.key())) out.push_back({path + "/" + it.key(), "<missing>", it.value().dump()});
    }
    return;
  }
  if (expected.is_array()) {
    const std::size_t common = std::min(expected.size(), actual.size());
    for (std::size_t i = 0; i < common; ++i) walk(expected[i], actual[i], path + "/" + std::to_string(i), out);
    if (expected.size() != actual.size()) {
      out.push_back({path + "/length", std::to_string(expected.size()), std::to_string(actual.size())});
    }
    return;
  }
  if (expected != actual) out.push_back({path.empty() ? "/" : path, expected.dump(), actual.dump()});
}

}  // namespace

Pmf single_px() {
  return Pmf(Alphabet::numbered(4),
             {Rat::parse("0.10000"), Rat::parse("0.20000"), Rat::parse("0.30000"), Rat::parse("0.40000")});
}

Pmf single_py() { return Pmf::uniform(Alphabet::numbered(4)); }

RatMatrix single_alternate() {
  return parse_rows({{"0.06250", "0.01250", "0.01250", "0.01250"},
                     {"0.02500", "0.12500", "0.02500", "0.02500"},
                     {"0.05625", "0.04375", "0.16250", "0.03750"},
                     {"0.10625", "0.06875", "0.05000", "0.17500"}});
}

Pmf2 pairs_px() {
  return Pmf2(Alphabet::numbered(3), parse_rows({{"1/3", "0", "0"}, {"0", "1/3", "0"}, {"0", "0", "1/3"}}));
}

Pmf2 pairs_py() {
  return Pmf2(Alphabet::numbered(3), parse_rows({{"1/9", "2/9", "0"}, {"1/9", "1/9", "1/9"}, {"0", "1/9", "2/9"}}));
}

std::vector<Fixture> generate() {
  const Pmf px = single_px();
  const Pmf py = single_py();
  const Pmf2 px2 = pairs_px();
  const Pmf2 py2 = pairs_py();

  std::vector<Fixture> out;
  out.push_back({"single_independent.json",
                 io::dump(coupling_fixture("X and Y independent", coupling_independent(px, py)))});
  out.push_back({"single_maximal.json",
                 io::dump(coupling_fixture("product-residual maximal coupling", coupling_maximal(px, py)))});
  out.push_back({"single_alternate.json",
                 io::dump(coupling_fixture("neither independent nor maximal",
                                           coupling_validate(single_alternate(), px, py)))});
  out.push_back({"pairs_maximal.json",
                 io::dump(coupling4_fixture("product-residual maximal coupling on pairs",
                                            coupling4_maximal(px2, py2)))});
  out.push_back({"pairs_constrained.json",
                 io::dump(coupling4_fixture("coupling under X1=X2=Y1", coupling4_constrained(px2, py2)))});
  out.push_back({"pairs_independent.json",
                 io::dump(coupling4_fixture("(X1,X2) and (Y1,Y2) independent", coupling4_independent(px2, py2)))});
  return out;
}

std::vector<CellDiff> diff(const std::string& expected, const std::string& actual) {
  if (expected == actual) return {};
  std::vector<CellDiff> out;
  Json e;
  Json a;
  try {
    e = Json::parse(expected);
    a = Json::parse(actual);
  } catch (const nlohmann::json::exception&) {
    std::istringstream es(expected);
    std::istringstream as(actual);
    std::string el;
    std::string al;
    for (std::size_t line = 1;; ++line) {
      const bool ge = static_cast<bool>(std::getline(es, el));
      const bool ga = static_cast<bool>(std::getline(as, al));
      if (!ge && !ga) break;
      if (!ge || !ga || el != al) {
        out.push_back({"line " + std::to_string(line), ge ? el : "<eof>", ga ? al : "<eof>"});
        break;
      }
    }
    if (out.empty()) out.push_back({"<formatting>", "canonical layout", "same lines, different bytes"});
    return out;
  }
  walk(e, a, "", out);
  if (out.empty()) out.push_back({"<formatting>", "canonical layout", "same values, different bytes"});
  return out;
}

}  // namespace couplingkit::fixtures
