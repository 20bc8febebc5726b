#include "hopfkit/expr.hpp"

#include <cctype>
#include <optional>

namespace hopfkit {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Tensor, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.compare(i, 3, "(x)") == 0) {
      out.push_back({Tok::Tensor, "(x)", i});
      i += 3;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw ConfigError("unexpected character '" + std::string(1, c) + "' at " + std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

struct Value {
  int order = 0;  // 0 = scalar
  Scalar s;
  Tensor t;
};

class Parser {
 public:
  Parser(const Field& f, HopfPtr h, const std::string& text) : f_(f), h_(std::move(h)), toks_(tokenize(text)) {}

  Value parse() {
    Value v = sum();
    if (peek().kind != Tok::End) fail("trailing input");
    return v;
  }

  Tensor promote(const Value& v, int order) {
    if (v.order == order) return v.t;
    if (v.order == 0) return Tensor::scalar(need_hopf(), order, v.s);
    fail("expected a tensor of order " + std::to_string(order) + ", got order " + std::to_string(v.order));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("parse error at " + std::to_string(peek().pos) + ": " + msg);
  }
  const HopfPtr& need_hopf() const {
    if (!h_) fail("generators are not allowed in a scalar");
    return h_;
  }

  Value add(Value a, Value b, bool minus) {
    if (a.order == 0 && b.order == 0) {
      a.s = minus ? a.s - b.s : a.s + b.s;
      return a;
    }
    int k = std::max(a.order, b.order);
    Tensor x = promote(a, k), y = promote(b, k);
    return {k, Scalar(), minus ? x - y : x + y};
  }

  Value mul(Value a, Value b) {
    if (a.order == 0 && b.order == 0) return {0, a.s * b.s, Tensor()};
    if (a.order == 0) return {b.order, Scalar(), a.s * b.t};
    if (b.order == 0) return {a.order, Scalar(), b.s * a.t};
    if (a.order != b.order) fail("cannot multiply tensors of different orders");
    return {a.order, Scalar(), a.t * b.t};
  }

  Value sum() {
    Value v = tensor();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      v = add(v, tensor(), minus);
    }
    return v;
  }

  Value tensor() {
    Value v = prod();
    while (peek().kind == Tok::Tensor) {
      next();
      Value w = prod();
      Tensor a = promote(v, std::max(v.order, 1));
      Tensor b = promote(w, std::max(w.order, 1));
      if (a.order() + b.order() > 4) fail("tensor order exceeds 4");
      v = {a.order() + b.order(), Scalar(), outer(a, b)};
    }
    return v;
  }

  Value prod() {
    Value v = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      bool div = next().kind == Tok::Slash;
      Value w = unary();
      if (div) {
        if (w.order != 0) fail("division by a non-scalar");
        if (w.s.is_zero()) fail("division by zero");
        w.s = w.s.inv();
      }
      v = mul(v, w);
    }
    return v;
  }

  Value unary() {
    if (peek().kind == Tok::Minus) {
      next();
      Value v = unary();
      if (v.order == 0) {
        v.s = -v.s;
      } else {
        v.t = -v.t;
      }
      return v;
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  long integer() {
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Int) fail("expected an integer exponent");
    long v = std::stol(next().text);
    return neg ? -v : v;
  }

  Value power() {
    Value v = atom();
    if (peek().kind == Tok::Caret) {
      next();
      long e = integer();
      if (v.order == 0) {
        if (e < 0 && v.s.is_zero()) fail("zero to a negative power");
        v.s = v.s.pow(e);
      } else {
        if (e < 0) fail("negative power of a tensor");
        Tensor r = Tensor::one(v.t.hopf(), v.order);
        for (long i = 0; i < e; ++i) r = r * v.t;
        v.t = r;
      }
    }
    return v;
  }

  Value atom() {
    const Token t = peek();
    if (t.kind == Tok::Int) {
      next();
      mpz_class z(t.text);
      return {0, f_.from_rational(mpq_class(z)), Tensor()};
    }
    if (t.kind == Tok::LParen) {
      next();
      Value v = sum();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      next();
      return v;
    }
    if (t.kind == Tok::Ident) {
      next();
      if (h_) {
        if (auto g = h_->find_generator(t.text)) return {1, Scalar(), Tensor::basis(h_, 1, h_->gen_index[*g])};
      }
      if (t.text.size() > 1 && t.text[0] == 'z' &&
          t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
        unsigned m = static_cast<unsigned>(std::stoul(t.text.substr(1)));
        if (!f_.has_root(m)) fail("root of unity z" + std::to_string(m) + " not available in " + f_.name());
        return {0, f_.root(m), Tensor()};
      }
      fail("unknown generator '" + t.text + "'");
    }
    fail("unexpected token '" + t.text + "'");
  }

  const Field& f_;
  HopfPtr h_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Tensor parse_tensor(const HopfPtr& h, const std::string& text, int expect_order) {
  Parser p(*h->field, h, text);
  Value v = p.parse();
  if (expect_order > 0) return p.promote(v, expect_order);
  if (v.order == 0) return Tensor::scalar(h, 1, v.s);
  return v.t;
}

Scalar parse_scalar(const Field& f, const std::string& text) {
  Parser p(f, nullptr, text);
  Value v = p.parse();
  return v.s;
}

std::string format_tensor(const Tensor& t) {
  if (t.is_zero()) return "0";
  const HopfData& h = t.data();
  const std::string z = "z" + std::to_string(h.field->order());
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : t.coeffs().entries()) {
    auto parts = split_index(idx, h.dim, t.order());
    std::string words;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k) words += " (x) ";
      std::string w = h.word_text(parts[k]);
      words += w;
    }
    for (const auto& [q, e] : c.terms()) {
      bool neg = q < 0;
      mpq_class a = abs(q);
      std::string coef;
      if (a != 1) coef = a.get_str();
      if (e > 0) {
        std::string zk = e == 1 ? z : z + "^" + std::to_string(e);
        coef = coef.empty() ? zk : coef + "*" + zk;
      }
      std::string term;
      const std::string w0 = h.word_text(parts[0]);
      if (coef.empty()) {
        term = words;
      } else if (w0 == "1") {
        term = coef + words.substr(1);
      } else {
        term = coef + "*" + words;
      }
      if (first) {
        out += neg ? "-" + term : term;
      } else {
        out += neg ? " - " + term : " + " + term;
      }
      first = false;
    }
  }
  return out;
}

}  // namespace hopfkit
