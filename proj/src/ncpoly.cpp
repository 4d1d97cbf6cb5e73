#include "frokaweil/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace frokaweil {

namespace {
constexpr double kZeroMagnitude = 1e-300; // below this a coefficient is a true zero
}

FreePolynomial FreePolynomial::constant(int d, Complex c) {
    FreePolynomial p(d);
    p.add_term(Word{}, c);
    return p;
}

FreePolynomial FreePolynomial::letter(int d, int j) {
    if (j < 1 || j > d) throw std::invalid_argument("FreePolynomial::letter: index out of range");
    FreePolynomial p(d);
    p.add_term(Word({static_cast<std::uint32_t>(j)}), Complex(1.0, 0.0));
    return p;
}

void FreePolynomial::add_term(const Word& w, Complex c) {
    for (auto l : w.letters)
        if (l < 1 || static_cast<int>(l) > d_)
            throw std::invalid_argument("FreePolynomial: letter index out of range");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (std::abs(c) >= kZeroMagnitude) terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) < kZeroMagnitude) terms_.erase(it);
}

double FreePolynomial::coeff_norm() const {
    double s = 0.0;
    for (const auto& [w, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

FreePolynomial& FreePolynomial::operator+=(const FreePolynomial& q) {
    if (d_ != q.d_) throw std::invalid_argument("poly_add: alphabet mismatch");
    for (const auto& [w, c] : q.terms_) add_term(w, c);
    return *this;
}

FreePolynomial& FreePolynomial::operator-=(const FreePolynomial& q) {
    if (d_ != q.d_) throw std::invalid_argument("poly_add: alphabet mismatch");
    for (const auto& [w, c] : q.terms_) add_term(w, -c);
    return *this;
}

FreePolynomial operator*(const FreePolynomial& p, const FreePolynomial& q) {
    if (p.d_ != q.d_) throw std::invalid_argument("poly_mul: alphabet mismatch");
    FreePolynomial out(p.d_);
    for (const auto& [wp, cp] : p.terms_)
        for (const auto& [wq, cq] : q.terms_) out.add_term(wp.concat(wq), cp * cq);
    return out;
}

FreePolynomial& FreePolynomial::operator*=(const FreePolynomial& q) {
    *this = *this * q;
    return *this;
}

FreePolynomial& FreePolynomial::operator*=(Complex c) {
    if (std::abs(c) < kZeroMagnitude) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    // scaling by a nonzero keeps every coefficient nonzero unless it underflows
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kZeroMagnitude ? terms_.erase(it) : std::next(it);
    return *this;
}

FreePolynomial poly_add(const FreePolynomial& p, const FreePolynomial& q) { return p + q; }
FreePolynomial poly_mul(const FreePolynomial& p, const FreePolynomial& q) { return p * q; }
FreePolynomial poly_scale(Complex c, const FreePolynomial& p) { return c * p; }

// ---------------------------------------------------------------------------
// parsing

namespace {

class Cursor {
  public:
    Cursor(const std::string& text, int d) : s_(text), d_(d) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' in " + what);
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    std::size_t pos() const { return pos_; }

    double parse_float() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        double value = 0.0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) {
            pos_ = start;
            fail("expected a number");
        }
        if (!std::isfinite(value)) {
            pos_ = start;
            fail("non-finite literal");
        }
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return neg ? -value : value;
    }

    unsigned parse_uint(const char* what) {
        skip_ws();
        unsigned value = 0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) fail(std::string("expected an integer for ") + what);
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return value;
    }

    // coeff := float | float 'i' | '(' float ('+'|'-') float 'i' ')'
    Complex parse_coeff() {
        skip_ws();
        if (peek() == '(') {
            accept('(');
            const double re = parse_float();
            skip_ws();
            double im;
            if (accept('+'))
                im = parse_float();
            else if (accept('-'))
                im = -parse_float();
            else
                fail("expected '+' or '-' in complex literal");
            expect('i', "complex literal");
            expect(')', "complex literal");
            return {re, im};
        }
        const double a = parse_float();
        if (accept('i')) return {0.0, a};
        return {a, 0.0};
    }

    // factor := 'x' uint ('^' uint)?
    void parse_factor(Word& w) {
        skip_ws();
        std::size_t at = pos_;
        if (!accept('x')) fail("expected a variable");
        const unsigned idx = parse_uint("variable index");
        if (idx < 1 || static_cast<int>(idx) > d_) {
            pos_ = at;
            fail("variable index out of range (d = " + std::to_string(d_) + ")");
        }
        unsigned exp = 1;
        if (accept('^')) exp = parse_uint("exponent");
        for (unsigned e = 0; e < exp; ++e) w.letters.push_back(idx);
    }

    // term := coeff ('*' factor)* | factor ('*' factor)*
    void parse_term(FreePolynomial& out, bool negate) {
        Complex c(1.0, 0.0);
        Word w;
        skip_ws();
        if (peek() == 'x') {
            parse_factor(w);
        } else {
            c = parse_coeff();
        }
        while (accept('*')) parse_factor(w);
        if (negate) c = -c;
        out.add_term(w, c);
    }

    FreePolynomial parse_poly() {
        FreePolynomial out(d_);
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        parse_term(out, neg);
        for (;;) {
            skip_ws();
            if (accept('+'))
                parse_term(out, false);
            else if (accept('-'))
                parse_term(out, true);
            else
                break;
        }
        if (!at_end()) fail("unexpected trailing input");
        return out;
    }

  private:
    const std::string& s_;
    int d_;
    std::size_t pos_ = 0;
};

} // namespace

FreePolynomial parse_poly(const std::string& text, int d) {
    Cursor cur(text, d);
    return cur.parse_poly();
}

// ---------------------------------------------------------------------------
// printing

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_complex(Complex c) {
    const double re = c.real() == 0.0 ? 0.0 : c.real();
    const double im = c.imag() == 0.0 ? 0.0 : c.imag();
    if (std::signbit(im) && im != 0.0)
        return "(" + format_double(re) + "-" + format_double(-im) + "i)";
    return "(" + format_double(re) + "+" + format_double(im) + "i)";
}

namespace {

std::string format_word(const Word& w) {
    std::string out;
    std::size_t i = 0;
    while (i < w.letters.size()) {
        std::size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(w.letters[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

} // namespace

std::string to_string(const FreePolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += format_complex(c);
        if (!w.empty()) out += "*" + format_word(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// word enumeration

std::size_t count_words_up_to(int d, int max_degree) {
    if (d < 1 || max_degree < 0) throw std::invalid_argument("count_words_up_to: bad arguments");
    std::size_t total = 0, level = 1;
    for (int len = 0; len <= max_degree; ++len) {
        if (total > SIZE_MAX - level) return SIZE_MAX;
        total += level;
        if (len < max_degree) {
            if (level > SIZE_MAX / static_cast<std::size_t>(d)) return SIZE_MAX;
            level *= static_cast<std::size_t>(d);
        }
    }
    return total;
}

std::vector<Word> words_up_to(int d, int max_degree, std::size_t cap) {
    const std::size_t count = count_words_up_to(d, max_degree);
    if (count > cap)
        throw std::length_error("words_up_to: " + std::to_string(count) +
                                " words exceeds cap " + std::to_string(cap));
    std::vector<Word> out;
    out.reserve(count);
    out.emplace_back();
    std::size_t level_begin = 0, level_end = 1;
    for (int len = 1; len <= max_degree; ++len) {
        for (std::size_t t = level_begin; t < level_end; ++t)
            for (int l = 1; l <= d; ++l) {
                Word w = out[t];
                w.letters.push_back(static_cast<std::uint32_t>(l));
                out.push_back(std::move(w));
            }
        level_begin = level_end;
        level_end = out.size();
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

using TermRef = std::pair<const Word*, Complex>;

// terms in [lo, hi) share a common prefix of length `depth` whose product is
// `prefix`; recurse grouping on the next letter
void eval_walk(const std::vector<TermRef>& ts, std::size_t lo, std::size_t hi, std::size_t depth,
               const Matrix& prefix, const MatrixTuple& z, Matrix& acc) {
    if (lo >= hi) return;
    if (ts[lo].first->letters.size() == depth) {
        acc += ts[lo].second * prefix;
        ++lo;
    }
    while (lo < hi) {
        const std::uint32_t letter = ts[lo].first->letters[depth];
        std::size_t next = lo;
        while (next < hi && ts[next].first->letters.size() > depth &&
               ts[next].first->letters[depth] == letter)
            ++next;
        const Matrix extended = prefix * z.mats[letter - 1];
        eval_walk(ts, lo, next, depth + 1, extended, z, acc);
        lo = next;
    }
}

} // namespace

Matrix eval_poly(const FreePolynomial& p, const MatrixTuple& z) {
    if (p.alphabet() != z.d) throw std::invalid_argument("eval_poly: alphabet mismatch");
    const int n = z.level;
    Matrix acc = Matrix::Zero(n, n);
    if (p.is_zero()) return acc;
    std::vector<TermRef> ts;
    ts.reserve(p.term_count());
    for (const auto& [w, c] : p.terms()) ts.emplace_back(&w, c);
    std::sort(ts.begin(), ts.end(), [](const TermRef& a, const TermRef& b) {
        return a.first->letters < b.first->letters;
    });
    eval_walk(ts, 0, ts.size(), 0, Matrix::Identity(n, n), z, acc);
    return acc;
}

Matrix eval_word(const Word& w, const MatrixTuple& z) {
    Matrix out = Matrix::Identity(z.level, z.level);
    for (auto l : w.letters) {
        if (l < 1 || static_cast<int>(l) > z.d)
            throw std::invalid_argument("eval_word: letter index out of range");
        out = out * z.mats[l - 1];
    }
    return out;
}

} // namespace frokaweil
