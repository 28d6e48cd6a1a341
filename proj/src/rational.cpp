#include "inclab/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace inclab {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Int parse_int(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Int(std::string(s), 10);
}

}  // namespace

Rat::Rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const Int den = parse_int(den_text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rat(num, den);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long double Rat::to_long_double() const {
  // mpq_get_d only gives 53 bits; split num/den to keep the extended mantissa
  // for moderate sizes.
  const Int& n = v_.get_num();
  const Int& d = v_.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    return static_cast<long double>(n.get_si()) / static_cast<long double>(d.get_si());
  }
  long ne = 0;
  long de = 0;
  const double nm = mpz_get_d_2exp(&ne, n.get_mpz_t());
  const double dm = mpz_get_d_2exp(&de, d.get_mpz_t());
  return std::ldexp(static_cast<long double>(nm) / static_cast<long double>(dm),
                    static_cast<int>(ne - de));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Int floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

bool is_square(const Rat& r) {
  if (r.sign() < 0) return false;
  return mpz_perfect_square_p(r.raw().get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(r.raw().get_den_mpz_t()) != 0;
}

int sign_sqrt_expr(const Rat& a, const Rat& b, const Rat& u) {
  if (u.sign() < 0) throw std::domain_error("sqrt of negative rational");
  const int sa = a.sign();
  const int sb = u.is_zero() ? 0 : b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int cmp_sq = (a * a <=> b * b * u) < 0 ? -1 : ((a * a == b * b * u) ? 0 : 1);
  if (cmp_sq > 0) return sa;
  if (cmp_sq < 0) return sb;
  return 0;
}

int sign_sqrt_expr(const Rat& a, const Rat& b, const Rat& u, const Rat& c, const Rat& v,
                   const Rat& d) {
  if (v.sign() < 0) throw std::domain_error("sqrt of negative rational");
  // (a + b sqrt u) + sqrt v (c + d sqrt u)
  const int sx = sign_sqrt_expr(a, b, u);
  const int sy = v.is_zero() ? 0 : sign_sqrt_expr(c, d, u);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // X^2 - v Y^2 = (a^2 + b^2 u - v(c^2 + d^2 u)) + 2(ab - v c d) sqrt u
  const Rat rational_part = a * a + b * b * u - v * (c * c + d * d * u);
  const Rat root_part = Rat(2) * (a * b - v * c * d);
  const int s = sign_sqrt_expr(rational_part, root_part, u);
  if (s > 0) return sx;
  if (s < 0) return sy;
  return 0;
}

std::size_t hash_value(const Rat& r) {
  const std::size_t hn = mpz_get_ui(r.raw().get_num_mpz_t()) * 0x9E3779B97F4A7C15ULL;
  const std::size_t hd = mpz_get_ui(r.raw().get_den_mpz_t());
  return hn ^ (hd + 0x7F4A7C15ULL + (hn << 6) + (hn >> 2)) ^
         static_cast<std::size_t>(r.sign() + 1);
}

}  // namespace inclab
