#pragma once

#include <map>
#include <string>
#include <vector>

#include "cech/rational.hpp"

namespace cech {

/// Sparse multivariate polynomial over Q. Variables are positional; names
/// live with the caller and are only needed for parsing/printing.
class Polynomial {
  public:
    using Exps = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rat& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(std::size_t nvars, const Exps& e, const Rat& c);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exps, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial, else total degree.
    int degree() const;
    bool is_homogeneous() const;
    /// Terms of the given total degree.
    Polynomial homogeneous_part(int d) const;

    void add_term(const Exps& e, const Rat& c);
    Rat coeff(const Exps& e) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rat& c) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& rhs) const = default;

    /// Substitute variable i by images[i] (all same nvars as images' target).
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    Rat evaluate(const std::vector<Rat>& point) const;

    /// Canonical text form; deterministic (graded lex term order).
    std::string to_string(const std::vector<std::string>& names) const;

    /// Parses sums of products of rationals and powers of named variables,
    /// with parentheses; e.g. "-x^2 - y*z", "4*(u1+v1)".
    static Polynomial parse(const std::string& text, const std::vector<std::string>& names);

  private:
    std::size_t nvars_ = 0;
    std::map<Exps, Rat> terms_;
};

}  // namespace cech
