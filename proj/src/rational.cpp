#include "couplingkit/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "couplingkit/errors.hpp"

namespace couplingkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional sign followed by at least one digit.
mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rat::Rat(std::int64_t n) : q_(mpz_class(std::to_string(n), 10)) {}

Rat::Rat(std::int64_t num, std::int64_t den)
    : q_(mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10)) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = false;
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) {
      neg = head.front() == '-';
      head.remove_prefix(1);
    }
    if (head.empty() && frac.empty()) throw ParseError("malformed rational '" + std::string(text) + "'");
    if ((!head.empty() && !all_digits(head)) || (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    std::string digits = std::string(head) + std::string(frac);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    if (neg) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
  }

  return Rat(mpq_class(parse_integer(text, text)));
}

std::string Rat::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rat::decimal(int places) const {
  if (places < 0) throw std::invalid_argument("Rat::decimal: negative precision");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));

  // |q| * 10^places, rounded half away from zero.
  mpz_class num = ::abs(q_.get_num()) * scale * 2 + q_.get_den();
  mpz_class den = q_.get_den() * 2;
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  std::string digits = scaled.get_str();
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string out;
  if (sgn(q_) < 0 && scaled != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

Rat& Rat::operator+=(const Rat& o) {
  q_ += o.q_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  q_ -= o.q_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  q_ *= o.q_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace couplingkit
