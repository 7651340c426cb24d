#include "cech/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace cech {

Polynomial Polynomial::constant(std::size_t nvars, const Rat& c) {
    Polynomial p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, const Exps& e, const Rat& c) {
    Polynomial p(nvars);
    p.add_term(e, c);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

bool Polynomial::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int td = std::accumulate(e.begin(), e.end(), 0);
        if (d == -1)
            d = td;
        else if (td != d)
            return false;
    }
    return true;
}

Polynomial Polynomial::homogeneous_part(int d) const {
    Polynomial p(nvars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == d) p.add_term(e, c);
    return p;
}

void Polynomial::add_term(const Exps& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat Polynomial::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial p = *this;
    for (const auto& [e, c] : rhs.terms_) p.add_term(e, c);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial p = *this;
    for (const auto& [e, c] : rhs.terms_) p.add_term(e, -c);
    return p;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    Polynomial p(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_) {
            Exps e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            p.add_term(e, c1 * c2);
        }
    return p;
}

Polynomial Polynomial::operator*(const Rat& c) const {
    Polynomial p(nvars_);
    if (c == 0) return p;
    for (const auto& [e, k] : terms_) p.add_term(e, k * c);
    return p;
}

Polynomial Polynomial::operator-() const { return *this * Rat(-1); }

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars_) throw DimensionMismatch("substitute: wrong image count");
    std::size_t target_vars = images.empty() ? nvars_ : images[0].nvars();
    Polynomial result(target_vars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(target_vars, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * images[i];
        result = result + term;
    }
    return result;
}

Rat Polynomial::evaluate(const std::vector<Rat>& point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluate: wrong point size");
    Rat r(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        r += t;
    }
    return r;
}

namespace {

// Graded lex: lower total degree first, then lex on exponents.
bool graded_lex_less(const Polynomial::Exps& a, const Polynomial::Exps& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (names.size() != nvars_) throw DimensionMismatch("to_string: wrong name count");
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Exps, Rat>*> sorted;
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return graded_lex_less(a->first, b->first); });
    std::ostringstream out;
    bool first = true;
    for (auto* t : sorted) {
        Rat c = t->second;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t->first[i] == 0) continue;
            if (t->first[i] == 1)
                factors.push_back(names[i]);
            else
                factors.push_back(names[i] + "^" + std::to_string(t->first[i]));
        }
        if (factors.empty()) {
            out << c.get_str();
        } else {
            if (c != 1) out << c.get_str() << "*";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out << "*";
                out << factors[i];
            }
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const std::vector<std::string>& names;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }

    Polynomial parse_sum() {
        Polynomial acc = parse_product();
        while (true) {
            skip_ws();
            if (eat('+')) {
                acc = acc + parse_product();
            } else if (eat('-')) {
                acc = acc - parse_product();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_product() {
        Polynomial acc = parse_power();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_power();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_power() {
        Polynomial base = parse_atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("expected integer exponent");
            int e = std::stoi(s.substr(start, pos - start));
            Polynomial acc = Polynomial::constant(names.size(), Rat(1));
            for (int i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    Polynomial parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Polynomial inner = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos;
            return -parse_power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
                ++pos;
            return Polynomial::constant(names.size(), parse_rat(s.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == name) return Polynomial::variable(names.size(), i);
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& names) {
    Parser parser{text, 0, names};
    Polynomial p = parser.parse_sum();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return p;
}

}  // namespace cech
