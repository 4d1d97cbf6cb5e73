#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frokaweil/mattuple.hpp"

namespace frokaweil {

/// A word in noncommuting letters x1..xd; letter indices are 1-based and the
/// empty word is the unit. Alphabet size is owned by the polynomial that the
/// word belongs to.
struct Word {
    std::vector<std::uint32_t> letters;

    Word() = default;
    explicit Word(std::vector<std::uint32_t> ls) : letters(std::move(ls)) {}

    int degree() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    Word concat(const Word& other) const {
        Word w(letters);
        w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
        return w;
    }

    bool operator==(const Word& o) const { return letters == o.letters; }
};

// length first, then lexicographic
struct GradedLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }
};

inline constexpr std::size_t kDefaultWordCap = 200000;
inline constexpr int kDefaultDegreeCap = 8;

/// Element of the free polynomial algebra in d letters: a finite map from
/// words to nonzero complex coefficients. Canonical form never stores a
/// coefficient of magnitude below 1e-300 (true zeros only; everything else is
/// honest data).
class FreePolynomial {
  public:
    using TermMap = std::map<Word, Complex, GradedLexLess>;

    explicit FreePolynomial(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("FreePolynomial: alphabet size must be >= 1");
    }

    static FreePolynomial zero(int d) { return FreePolynomial(d); }
    static FreePolynomial constant(int d, Complex c);
    static FreePolynomial unit(int d) { return constant(d, Complex(1.0, 0.0)); }
    static FreePolynomial letter(int d, int j); // x_j, 1-based

    int alphabet() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // absent for the zero polynomial
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first.degree();
    }

    Complex coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
    }

    // accumulate c on word w, keeping canonical form
    void add_term(const Word& w, Complex c);

    // l2 norm of the coefficient vector
    double coeff_norm() const;

    FreePolynomial& operator+=(const FreePolynomial& q);
    FreePolynomial& operator-=(const FreePolynomial& q);
    FreePolynomial& operator*=(const FreePolynomial& q);
    FreePolynomial& operator*=(Complex c);

    friend FreePolynomial operator+(FreePolynomial p, const FreePolynomial& q) { return p += q; }
    friend FreePolynomial operator-(FreePolynomial p, const FreePolynomial& q) { return p -= q; }
    friend FreePolynomial operator*(const FreePolynomial& p, const FreePolynomial& q);
    friend FreePolynomial operator*(Complex c, FreePolynomial p) { return p *= c; }

    bool operator==(const FreePolynomial& o) const { return d_ == o.d_ && terms_ == o.terms_; }

  private:
    int d_;
    TermMap terms_;
};

FreePolynomial poly_add(const FreePolynomial& p, const FreePolynomial& q);
FreePolynomial poly_mul(const FreePolynomial& p, const FreePolynomial& q);
FreePolynomial poly_scale(Complex c, const FreePolynomial& p);

/// Thrown on malformed polynomial text; `position` is the 0-based offset into
/// the input where the problem was detected.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Grammar:
//   poly   := term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := var ('^' uint)?
//   var    := 'x' uint            (1-based)
//   coeff  := "a" | "ai" | "(a+bi)" | "(a-bi)"   a,b decimal floats
// Whitespace is insignificant. A leading '-' or '+' before the first term is
// also accepted.
FreePolynomial parse_poly(const std::string& text, int d);

// shortest round-trip formatting for a double (to_chars)
std::string format_double(double v);

// "(a+bi)" / "(a-bi)", negative zero normalized away
std::string format_complex(Complex c);

// Canonical print: graded-lex term order, "(a+bi)" coefficients, consecutive
// equal letters collapsed to powers. The zero polynomial prints "0".
// parse_poly(to_string(p), p.alphabet()) == p exactly.
std::string to_string(const FreePolynomial& p);

// All words of length <= max_degree in graded length-then-lex order. Throws
// std::length_error when the count would exceed `cap`.
std::vector<Word> words_up_to(int d, int max_degree, std::size_t cap = kDefaultWordCap);

// Count of words of length <= max_degree, saturating at SIZE_MAX on overflow.
std::size_t count_words_up_to(int d, int max_degree);

// Sum over terms of coeff * z_{i1} ... z_{il}; the empty word contributes
// coeff * I. Shared prefixes are multiplied once (lex-ordered trie walk).
Matrix eval_poly(const FreePolynomial& p, const MatrixTuple& z);

// Evaluation of a single word.
Matrix eval_word(const Word& w, const MatrixTuple& z);

} // namespace frokaweil
