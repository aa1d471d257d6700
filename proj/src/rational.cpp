#include "tmac/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>

namespace tmac {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("Rat: zero denominator");
  normalize();
}

void Rat::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

std::optional<Rat> Rat::parse(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  std::string_view head = text;
  std::string_view tail;
  char sep = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '/' || text[i] == '.') {
      sep = text[i];
      head = text.substr(0, i);
      tail = text.substr(i + 1);
      break;
    }
  }

  if (sep == 0) {
    if (!all_digits(head)) return std::nullopt;
    Rat r;
    r.num_ = BigInt(std::string(head));
    if (neg) r.num_ = -r.num_;
    return r;
  }
  if (!all_digits(head) || !all_digits(tail)) return std::nullopt;
  if (sep == '/') {
    BigInt den{std::string(tail)};
    if (den == 0) return std::nullopt;
    BigInt num{std::string(head)};
    if (neg) num = -num;
    return Rat(std::move(num), std::move(den));
  }
  // decimal: digits after the point scale the denominator
  BigInt num{std::string(head)};
  BigInt den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  num = num * den + BigInt(std::string(tail));
  if (neg) num = -num;
  return Rat(std::move(num), std::move(den));
}

BigInt Rat::floor() const {
  BigInt q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

BigInt Rat::ceil() const {
  BigInt q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) ++q;
  return q;
}

std::string Rat::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = -r.num_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.num_ == 0) throw std::invalid_argument("Rat: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

}  // namespace tmac
