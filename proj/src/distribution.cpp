#include "couplingkit/distribution.hpp"

#include <unordered_set>

#include "couplingkit/errors.hpp"

namespace couplingkit {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidDistribution("alphabet must contain at least one symbol");
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) throw InvalidDistribution("duplicate alphabet symbol '" + s + "'");
  }
}

Alphabet Alphabet::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

Alphabet Alphabet::product() const {
  std::vector<std::string> labels;
  labels.reserve(size() * size());
  for (const auto& a : symbols_) {
    for (const auto& b : symbols_) labels.push_back("(" + a + "," + b + ")");
  }
  return Alphabet(std::move(labels));
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what) {
  if (!(a == b)) {
    throw AlphabetMismatch(std::string(what) + ": operands are over different alphabets");
  }
}

Rat RatMatrix::sum() const {
  Rat s;
  for (const auto& x : data_) s += x;
  return s;
}

std::vector<Rat> RatMatrix::row_sums() const {
  std::vector<Rat> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
  }
  return out;
}

std::vector<Rat> RatMatrix::col_sums() const {
  std::vector<Rat> out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
  }
  return out;
}

void require_probability_mass(std::span<const Rat> values, const std::string& where) {
  Rat total;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() < 0) {
      throw InvalidDistribution(where + ": negative entry " + values[i].str() + " at index " +
                                std::to_string(i));
    }
    total += values[i];
  }
  if (total != Rat(1)) throw InvalidDistribution(where + ": entries sum to " + total.str() + ", not 1");
}

Pmf::Pmf(Alphabet alphabet, std::vector<Rat> probs) : alphabet_(std::move(alphabet)), p_(std::move(probs)) {
  if (p_.size() != alphabet_.size()) {
    throw AlphabetMismatch("pmf: " + std::to_string(p_.size()) + " probabilities for an alphabet of size " +
                           std::to_string(alphabet_.size()));
  }
  require_probability_mass(p_, "pmf");
}

Pmf Pmf::uniform(Alphabet alphabet) {
  const auto n = static_cast<std::int64_t>(alphabet.size());
  std::vector<Rat> probs(alphabet.size(), Rat(1, n));
  return Pmf(std::move(alphabet), std::move(probs));
}

Pmf2::Pmf2(Alphabet alphabet, RatMatrix p) : alphabet_(std::move(alphabet)), p_(std::move(p)) {
  if (p_.rows() != alphabet_.size() || p_.cols() != alphabet_.size()) {
    throw AlphabetMismatch("pmf2: matrix shape does not match alphabet size " + std::to_string(alphabet_.size()));
  }
  require_probability_mass(p_.values(), "pmf2");
}

Pmf Pmf2::flatten() const {
  auto values = p_.values();
  return Pmf(alphabet_.product(), std::vector<Rat>(values.begin(), values.end()));
}

Pmf pmf_uniform(const Alphabet& alphabet) { return Pmf::uniform(alphabet); }

Pmf pmf2_flatten(const Pmf2& p2) { return p2.flatten(); }

}  // namespace couplingkit
