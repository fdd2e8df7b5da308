#include "fleetmatch/bignum.hpp"

#include <stdexcept>

namespace fleetmatch {

std::size_t bit_length(const Bignum& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

Bignum powmod(const Bignum& base, const Bignum& exp, const Bignum& m) {
  if (m <= 0) throw std::invalid_argument("powmod: modulus must be positive");
  if (exp < 0) throw std::invalid_argument("powmod: negative exponent");
  Bignum r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Bignum invmod(const Bignum& x, const Bignum& m) {
  Bignum r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::invalid_argument("invmod: argument not invertible");
  return r;
}

Bignum gcd(const Bignum& a, const Bignum& b) {
  Bignum r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Bignum lcm(const Bignum& a, const Bignum& b) {
  Bignum r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool is_probable_prime(const Bignum& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

BezoutResult bezout(const Bignum& a, const Bignum& b) {
  if (a < 0 || b < 0) throw std::invalid_argument("bezout: arguments must be naturals");
  if (a == 0 && b == 0) throw std::invalid_argument("bezout: both arguments zero");
  BezoutResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  if (a != 0 && b != 0) {
    // Shift x into (-m/2, m/2] with m = b/g; y follows from a*x + b*y = g.
    Bignum m = b / r.g;
    Bignum x = r.x % m;
    if (2 * x > m) x -= m;
    if (2 * x <= -m) x += m;
    r.y = (r.g - a * x) / b;
    r.x = x;
  }
  return r;
}

std::string to_hex(const Bignum& x) {
  if (x < 0) throw std::invalid_argument("to_hex: negative value");
  return x.get_str(16);
}

Bignum from_hex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("from_hex: empty string");
  Bignum r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 16) != 0 || r < 0)
    throw std::invalid_argument("from_hex: malformed hex string: " + s);
  return r;
}

void append_fixed_bytes(std::vector<std::uint8_t>& out, const Bignum& x,
                        std::size_t width) {
  if (x < 0) throw std::invalid_argument("append_fixed_bytes: negative value");
  const std::size_t need = (bit_length(x) + 7) / 8;
  if (need > width)
    throw std::invalid_argument("append_fixed_bytes: value does not fit field width");
  const std::size_t start = out.size();
  out.resize(start + width, 0);
  if (x != 0) {
    std::size_t written = 0;
    mpz_export(out.data() + start + (width - need), &written, 1, 1, 1, 0,
               x.get_mpz_t());
  }
}

Bignum read_be_bytes(const std::uint8_t* data, std::size_t len) {
  Bignum r = 0;
  if (len > 0) mpz_import(r.get_mpz_t(), len, 1, 1, 1, 0, data);
  return r;
}

}  // namespace fleetmatch
