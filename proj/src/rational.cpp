#include "fockweight/rational.hpp"

#include <stdexcept>

namespace fockweight {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw std::domain_error("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
    return false;
  mpz_class n = sqrt(q.get_num()), d = sqrt(q.get_den());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational n2 = o.norm2();
  if (sgn(n2) == 0) throw std::domain_error("Gaussian division by zero");
  *this *= o.conj();
  re /= n2;
  im /= n2;
  return *this;
}

std::string to_string(const Gaussian& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  return "(" + to_string(z.re) + "," + to_string(z.im) + ")";
}

std::complex<double> to_complex(const Gaussian& z) { return {z.re.get_d(), z.im.get_d()}; }

}  // namespace fockweight
