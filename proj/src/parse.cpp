#include <cctype>

#include "qsym/error.hpp"
#include "qsym/poly.hpp"

namespace qsym {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const RingPtr& ring) : s_(s), ring_(ring) {}

  MultiPoly run() {
    MultiPoly f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    skip();
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    MultiPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        std::size_t at = pos_;
        MultiPoly f = factor();
        try {
          acc *= f;
        } catch (const DomainError& e) {
          throw ParseError(e.what(), at);
        }
      } else if (accept('/')) {
        skip();
        std::size_t at = pos_;
        mpz_class d = uint_literal();
        Scalar ds = Scalar::from_mpz(ring_->field, d);
        if (ds.is_zero()) throw ParseError("division by a literal that is zero in " + ring_->field.to_string(), at);
        acc *= ds.inverse();
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      mpz_class e = uint_literal();
      if (e > kMaxExponent) throw ParseError("exponent overflow (>255)", at);
      try {
        b = b.pow(static_cast<unsigned>(e.get_ui()));
      } catch (const DomainError& err) {
        throw ParseError("exponent overflow (>255)", at);
      }
    }
    return b;
  }

  mpz_class uint_literal() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  MultiPoly base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = uint_literal();
      return MultiPoly::constant(ring_, Scalar::from_mpz(ring_->field, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int idx = ring_->index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
      return MultiPoly::variable(ring_, static_cast<std::size_t>(idx));
    }
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace qsym
