#pragma once

// Sparse exact multivariate polynomials over the rationals in variables
// x1..xd. Canonical form: no zero coefficients, monomials kept in descending
// graded lexicographic order (total degree first, then lexicographic on the
// exponent vector), so the leading term is always the first entry and equal
// polynomials have identical representations.
//
// Monomials are packed into a single 128-bit key: the top byte holds the
// total degree and the following bytes hold the exponents of x1, x2, ... in
// order.  Descending graded lex then coincides with descending numeric order
// on the keys, comparisons are integer compares, and multiplying monomials is
// integer addition.  The packing supports rings of dimension at most 15 with
// total degree at most 255; both bounds are checked so results stay exact.

#include <gerbeforms/rational.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace gerbeforms {

using Expo = std::vector<int>;

inline int expo_degree(const Expo& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// Descending graded lex: larger total degree first; ties broken so the
// lexicographically larger exponent vector comes first.
struct GradedLexDesc {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

class Poly {
 public:
  using Terms = std::vector<std::pair<Expo, Rat>>;

  static constexpr int kMaxDim = 15;
  static constexpr int kMaxDegree = 255;

  Poly() : dim_(0) {}
  explicit Poly(int dim) : dim_(dim) {
    if (dim < 0) throw gf_error("polynomial ring with negative dimension");
    if (dim > kMaxDim)
      throw gf_error("polynomial ring dimension above " +
                     std::to_string(kMaxDim) + " is not supported");
  }

  static Poly zero(int dim) { return Poly(dim); }

  static Poly constant(int dim, const Rat& c) {
    Poly p(dim);
    if (!rat_is_zero(c)) p.terms_.emplace_back(Key(0), c);
    return p;
  }

  // 1-based variable index.
  static Poly variable(int dim, int i) {
    if (i < 1 || i > dim) throw gf_error("variable index out of range");
    Poly p(dim);
    p.terms_.emplace_back(degree_unit() + var_unit(i), Rat(1));
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }

  // Unpacked (exponent vector, coefficient) pairs in canonical order.
  Terms terms() const {
    Terms out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(unpack(k), c);
    return out;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
  }

  // The zero monomial's key is 0 and sorts last.
  Rat constant_term() const {
    if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
    return Rat(0);
  }

  int degree() const {  // -1 for the zero polynomial
    if (terms_.empty()) return -1;
    return key_degree(terms_.front().first);
  }

  void add_term(const Expo& e, const Rat& c) {
    if (static_cast<int>(e.size()) != dim_) throw gf_error("exponent arity mismatch");
    if (rat_is_zero(c)) return;
    Key k = pack(e);
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), k,
        [](const std::pair<Key, Rat>& t, Key key) { return t.first > key; });
    if (it != terms_.end() && it->first == k) {
      it->second += c;
      if (rat_is_zero(it->second)) terms_.erase(it);
    } else {
      terms_.insert(it, {k, c});
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merged(a, b, 1); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merged(a, b, -1); }

  friend Poly operator-(const Poly& a) {
    Poly r(a.dim_);
    r.terms_.reserve(a.terms_.size());
    for (const auto& [k, c] : a.terms_) r.terms_.emplace_back(k, -c);
    return r;
  }

  // General products emit term pairs in canonical order and fold equal
  // monomials as they arrive, so coefficients are produced once, directly
  // into the result, and nothing rational is ever moved afterwards.  Small
  // products run a heap merge over one stream per monomial of the smaller
  // factor (each stream yields that monomial times the other factor in
  // order); past a size threshold, sorting the plain (key, index, index)
  // expansion is cheaper than per-term heap maintenance.
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_dims(a, b);
    Poly r(a.dim_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.degree() + b.degree() > kMaxDegree)
      throw gf_error("product degree exceeds the supported bound of " +
                     std::to_string(kMaxDegree));
    if (b.terms_.size() == 1) return monomial_product(a, b.terms_.front());
    if (a.terms_.size() == 1) return monomial_product(b, a.terms_.front());
    const auto& small = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
    const auto& large = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;

    struct Entry {
      Key key;       // small[si].key + large[li].key
      unsigned si, li;
    };
    auto emit = [&](Key key, unsigned si, unsigned li) {
      if (!r.terms_.empty() && r.terms_.back().first == key)
        r.terms_.back().second += small[si].second * large[li].second;
      else
        r.terms_.emplace_back(key, Rat(small[si].second * large[li].second));
    };

    const size_t nm = small.size() * large.size();
    if (nm <= 4096) {
      auto later = [](const Entry& x, const Entry& y) { return x.key < y.key; };
      std::vector<Entry> heap;
      heap.reserve(small.size());
      for (unsigned si = 0; si < small.size(); ++si)
        heap.push_back({small[si].first + large[0].first, si, 0});
      std::make_heap(heap.begin(), heap.end(), later);
      r.terms_.reserve(small.size() + large.size());
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), later);
        Entry s = heap.back();
        heap.pop_back();
        emit(s.key, s.si, s.li);
        if (s.li + 1 < large.size()) {
          heap.push_back(
              {small[s.si].first + large[s.li + 1].first, s.si, s.li + 1});
          std::push_heap(heap.begin(), heap.end(), later);
        }
      }
    } else {
      std::vector<Entry> prod;
      prod.reserve(nm);
      for (unsigned si = 0; si < small.size(); ++si)
        for (unsigned li = 0; li < large.size(); ++li)
          prod.push_back({small[si].first + large[li].first, si, li});
      std::sort(prod.begin(), prod.end(),
                [](const Entry& x, const Entry& y) { return x.key > y.key; });
      r.terms_.reserve(small.size() + large.size());
      for (const Entry& s : prod) emit(s.key, s.si, s.li);
    }
    r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(),
                                  [](const std::pair<Key, Rat>& t) {
                                    return rat_is_zero(t.second);
                                  }),
                   r.terms_.end());
    return r;
  }

  friend Poly operator*(const Rat& c, const Poly& a) {
    Poly r(a.dim_);
    if (rat_is_zero(c)) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& [k, x] : a.terms_) r.terms_.emplace_back(k, c * x);
    return r;
  }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Partial derivative with respect to x_a (1-based).  Dropping a unit from
  // the same coordinate of every key preserves the descending order, so the
  // result can be assembled directly.
  Poly derivative(int a) const {
    if (a < 1 || a > dim_) throw gf_error("derivative index out of range");
    Poly r(dim_);
    r.terms_.reserve(terms_.size());
    const Key unit = degree_unit() + var_unit(a);
    for (const auto& [k, c] : terms_) {
      int exp = key_exponent(k, a);
      if (exp == 0) continue;
      r.terms_.emplace_back(k - unit, Rat(exp) * c);
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != dim_)
      throw gf_error("evaluation point arity mismatch");
    Rat total(0);
    for (const auto& [k, c] : terms_) {
      Rat m = c;
      for (int i = 1; i <= dim_; ++i)
        for (int e = key_exponent(k, i); e > 0; --e) m *= point[static_cast<size_t>(i - 1)];
      total += m;
    }
    return total;
  }

  // Leading monomial as text, e.g. "-2*x1^2*x2"; "0" for the zero polynomial.
  std::string leading_term() const {
    if (terms_.empty()) return "0";
    const auto& [k, c] = terms_.front();
    return term_to_string(k, c);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (first) {
        out += term_to_string(k, c);
        first = false;
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
        out += term_to_string(k, abs(c));
      }
    }
    return out;
  }

 private:
  // Top byte: total degree.  Byte 15 - i: exponent of x_i (so x1 occupies the
  // most significant exponent byte and numeric order matches lex order).
  using Key = unsigned __int128;

  static constexpr int key_shift(int i) { return 8 * (15 - i); }
  static constexpr Key degree_unit() { return Key(1) << 120; }
  static constexpr Key var_unit(int i) { return Key(1) << key_shift(i); }

  static int key_degree(Key k) { return static_cast<int>(k >> 120); }
  static int key_exponent(Key k, int i) {
    return static_cast<int>((k >> key_shift(i)) & 0xFF);
  }

  Key pack(const Expo& e) const {
    int deg = 0;
    Key k = 0;
    for (int i = 0; i < dim_; ++i) {
      int v = e[static_cast<size_t>(i)];
      if (v < 0) throw gf_error("negative exponent in monomial");
      if (v > kMaxDegree)
        throw gf_error("exponent exceeds the supported bound of " +
                       std::to_string(kMaxDegree));
      deg += v;
      k += Key(static_cast<unsigned>(v)) << key_shift(i + 1);
    }
    if (deg > kMaxDegree)
      throw gf_error("monomial degree exceeds the supported bound of " +
                     std::to_string(kMaxDegree));
    return k + (Key(static_cast<unsigned>(deg)) << 120);
  }

  Expo unpack(Key k) const {
    Expo e(static_cast<size_t>(dim_));
    for (int i = 1; i <= dim_; ++i) e[static_cast<size_t>(i - 1)] = key_exponent(k, i);
    return e;
  }

  static void check_dims(const Poly& a, const Poly& b) {
    if (a.dim_ != b.dim_) throw gf_error("polynomial ring dimension mismatch");
  }

  // Linear merge of the two sorted term lists; sign scales b's coefficients.
  static Poly merged(const Poly& a, const Poly& b, int sign) {
    check_dims(a, b);
    Poly r(a.dim_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
      if (ia->first > ib->first) {
        r.terms_.push_back(*ia++);
      } else if (ib->first > ia->first) {
        r.terms_.emplace_back(ib->first, sign < 0 ? -ib->second : ib->second);
        ++ib;
      } else {
        Rat c = ia->second;
        if (sign < 0)
          c -= ib->second;
        else
          c += ib->second;
        if (!rat_is_zero(c)) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    for (; ia != a.terms_.end(); ++ia) r.terms_.push_back(*ia);
    for (; ib != b.terms_.end(); ++ib)
      r.terms_.emplace_back(ib->first, sign < 0 ? -ib->second : ib->second);
    return r;
  }

  // Adding a fixed key to every monomial preserves the term order, so the
  // shifted copy is already canonical.
  static Poly monomial_product(const Poly& a, const std::pair<Key, Rat>& m) {
    Poly r(a.dim_);
    r.terms_.reserve(a.terms_.size());
    for (const auto& [ka, ca] : a.terms_)
      r.terms_.emplace_back(ka + m.first, ca * m.second);
    return r;
  }

  // The caller passes the signed coefficient for the leading term and the
  // magnitude for the rest (the joiner supplies " + " / " - ").
  std::string term_to_string(Key k, const Rat& c) const {
    std::string vars;
    for (int i = 1; i <= dim_; ++i) {
      int e = key_exponent(k, i);
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(i);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    std::string coef = rat_to_string(c);
    if (vars.empty()) return coef;
    if (coef == "1") return vars;
    if (coef == "-1") return "-" + vars;
    return coef + "*" + vars;
  }

  int dim_;
  std::vector<std::pair<Key, Rat>> terms_;
};

// --- Polynomial literals -----------------------------------------------------
//
// Grammar (whitespace-insensitive):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer ['/' integer] | var ['^' integer]
//   var    := 'x' integer            (1-based index, bounded by the ring dim)
//
// Printing and parsing round-trip exactly.

class PolyParser {
 public:
  PolyParser(const std::string& text, int dim) : text_(text), dim_(dim) {}

  Poly parse() {
    Poly p = parse_poly();
    skip_ws();
    if (pos_ != text_.size())
      throw gf_error("trailing characters in polynomial literal at offset " +
                     std::to_string(pos_) + ": '" + text_ + "'");
    return p;
  }

 private:
  Poly parse_poly() {
    Poly total(dim_);
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (get() == '-') sign = -1;
    }
    total += parse_term(sign);
    skip_ws();
    while (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1 : 1;
      total += parse_term(sign);
      skip_ws();
    }
    return total;
  }

  Poly parse_term(int sign) {
    Rat coef(sign);
    Expo e(dim_, 0);
    bool first = true;
    while (true) {
      skip_ws();
      char c = peek();
      if (c == 'x') {
        get();
        int idx = parse_int();
        if (idx < 1 || idx > dim_)
          throw gf_error("variable x" + std::to_string(idx) +
                         " outside ring of dimension " + std::to_string(dim_));
        int exp = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          exp = parse_int();
          if (exp < 0) throw gf_error("negative exponent in polynomial literal");
        }
        e[idx - 1] += exp;
      } else if (c >= '0' && c <= '9') {
        long num = parse_int();
        skip_ws();
        if (peek() == '/') {
          get();
          long den = parse_int();
          coef *= rat_from_long(num, den);
        } else {
          coef *= Rat(static_cast<long>(num));
        }
      } else if (first) {
        throw gf_error("expected polynomial term at offset " + std::to_string(pos_) +
                       ": '" + text_ + "'");
      } else {
        break;
      }
      first = false;
      skip_ws();
      if (peek() == '*') {
        get();
        continue;
      }
      break;
    }
    Poly p(dim_);
    p.add_term(e, coef);
    return p;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_)
      throw gf_error("expected integer at offset " + std::to_string(start) + ": '" +
                     text_ + "'");
    return std::stol(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }

  const std::string& text_;
  int dim_;
  size_t pos_ = 0;
};

inline Poly parse_poly(const std::string& text, int dim) {
  return PolyParser(text, dim).parse();
}

}  // namespace gerbeforms
