#include <algorithm>
#include <sstream>

#include "couplingkit/io.hpp"

namespace couplingkit::io {

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string format_matrix(const Alphabet& alphabet, const RatMatrix& m, int places) {
  const std::size_t n = alphabet.size();
  std::size_t width = static_cast<std::size_t>(places) + 3;
  std::size_t label_width = 1;
  for (const auto& s : alphabet.symbols()) {
    width = std::max(width, s.size());
    label_width = std::max(label_width, s.size());
  }
  std::ostringstream out;
  out << std::string(label_width + 2, ' ');
  for (std::size_t c = 0; c < n; ++c) out << ' ' << pad_left(alphabet[c], width);
  out << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    out << pad_left(alphabet[r], label_width) << " |";
    for (std::size_t c = 0; c < n; ++c) out << ' ' << pad_left(m(r, c).decimal(places), width);
    out << '\n';
  }
  return out.str();
}

std::string format_coupling4(const Coupling4& c, int places) {
  const std::size_t n = c.size();
  const auto& alpha = c.alphabet();
  std::size_t width = static_cast<std::size_t>(places) + 3;
  for (const auto& s : alpha.symbols()) width = std::max(width, s.size() + 3);

  std::ostringstream out;
  const std::string row_head = "X1,X2";
  std::size_t head_width = row_head.size();
  for (const auto& a : alpha.symbols()) {
    for (const auto& b : alpha.symbols()) head_width = std::max(head_width, a.size() + b.size() + 1);
  }
  out << pad_left("", head_width) << " |";
  for (std::size_t y1 = 0; y1 < n; ++y1) {
    std::string title = "Y1=" + alpha[y1];
    out << ' ' << pad_left(title, n * (width + 1) - 1) << " |";
  }
  out << '\n' << pad_left(row_head, head_width) << " |";
  for (std::size_t y1 = 0; y1 < n; ++y1) {
    for (std::size_t y2 = 0; y2 < n; ++y2) out << ' ' << pad_left("Y2=" + alpha[y2], width);
    out << " |";
  }
  out << '\n';
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      out << pad_left(alpha[x1] + "," + alpha[x2], head_width) << " |";
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        for (std::size_t y2 = 0; y2 < n; ++y2) out << ' ' << pad_left(c(x1, x2, y1, y2).decimal(places), width);
        out << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string format_report(const EpsilonAuditReport& r, int places) {
  auto line = [places](const char* label, const Rat& x) {
    std::ostringstream s;
    s << "  " << label << pad_left(x.str(), 14) << "  (" << x.decimal(places) << ")\n";
    return s.str();
  };
  auto flag = [](bool b) { return b ? "yes" : "no"; };

  std::ostringstream out;
  out << "epsilon-security audit, N = " << r.n << " (ideal key uniform)\n";
  out << line("v(P_K,P_U)            ", r.v);
  out << line("Pr{k!=u} independent  ", r.independent_mismatch);
  out << line("Pr{k!=u} maximal      ", r.maximal_mismatch);
  out << line("Pr{k!=u} LP minimum   ", r.oracle_min_mismatch);
  out << "  LP certificate verified:          " << flag(r.certificate_verified) << '\n';
  out << "  some key with 0<P_K<1, 0<P_U<1:   " << flag(r.hypothesis_holds) << '\n';
  out << "  strict gap under independence:    " << flag(r.strict_gap_holds) << '\n';
  out << "facts\n";
  out << "  1) maximal coupling needs real/ideal correlation: " << flag(r.correlation_required) << '\n';
  out << "  2) v <= Pr{k!=u} for every coupling:              " << flag(r.lower_bound_all) << '\n';
  out << "  3) v <  Pr{k!=u} for independent keys:            " << flag(r.strict_when_independent) << '\n';
  if (r.epsilon) {
    out << line("epsilon               ", *r.epsilon);
    out << "  v <= epsilon:                     " << flag(r.epsilon_consistent) << '\n';
  }
  out << "verdict\n";
  out << "  v is a lower bound of Pr{k!=u} over all couplings, not the probability\n"
         "  that the real key differs from the ideal key; epsilon bounds v only.\n";
  if (r.correlation_required) {
    out << "  The bound is attained only by couplings that correlate real and ideal keys.\n";
  }
  if (r.degenerate_key) {
    out << "  note: some key has probability 0 or 1; such a key distribution does not\n"
           "  work as a one-time-pad secret key.\n";
  }
  if (!r.epsilon_consistent) {
    out << "  WARNING: epsilon " << r.epsilon->str() << " < v = " << r.v.str()
        << "; the claimed bound is inconsistent with P_K.\n";
  }
  return out.str();
}

}  // namespace couplingkit::io
