#include "seqper/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace seqper {

i128 IntPoly::eval(u64 x) const {
    i128 acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (__builtin_mul_overflow(acc, i128(x), &acc) ||
            __builtin_add_overflow(acc, i128(coeffs[i]), &acc))
            throw usage_error("polynomial evaluation overflows 128 bits");
    }
    return acc;
}

bool IntPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](i64 c) { return c == 0; });
}

std::string IntPoly::to_string() const {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        i64 c = coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        i64 mag = c < 0 ? -c : c;
        if (i == 0 || mag != 1) out += std::to_string(mag);
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

namespace {

struct Scanner {
    const std::string& s;
    std::size_t pos = 0;

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
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    u64 number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw usage_error("polynomial parse: expected digit at position " + std::to_string(pos));
        u64 v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + u64(s[pos] - '0');
            if (v > (u64(1) << 62)) throw usage_error("polynomial parse: number too large");
            ++pos;
        }
        return v;
    }
};

} // namespace

IntPoly IntPoly::parse(const std::string& s) {
    Scanner sc{s};
    IntPoly p;
    auto bump = [&p](std::size_t deg, i64 c) {
        if (p.coeffs.size() <= deg) p.coeffs.resize(deg + 1, 0);
        p.coeffs[deg] += c;
    };
    bool first = true;
    while (!sc.done()) {
        i64 sign = 1;
        if (sc.eat('-')) sign = -1;
        else if (sc.eat('+')) sign = 1;
        else if (!first)
            throw usage_error("polynomial parse: expected +/- in \"" + s + "\"");
        first = false;
        i64 coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            coeff = i64(sc.number());
            saw_coeff = true;
        }
        sc.eat('*');
        std::size_t deg = 0;
        if (sc.peek() == 'x') {
            ++sc.pos;
            deg = 1;
            if (sc.eat('^')) deg = std::size_t(sc.number());
        } else if (!saw_coeff) {
            throw usage_error("polynomial parse: expected coefficient or x in \"" + s + "\"");
        }
        bump(deg, sign * coeff);
    }
    if (p.coeffs.empty()) throw usage_error("polynomial parse: empty input");
    return p;
}

unsigned MultiPoly::num_variables() const {
    unsigned n = 0;
    for (const auto& [exps, c] : terms) n = std::max<unsigned>(n, unsigned(exps.size()));
    return n;
}

void MultiPoly::add_term(std::vector<unsigned> exps, const Rational& c) {
    while (!exps.empty() && exps.back() == 0) exps.pop_back();
    auto [it, inserted] = terms.emplace(std::move(exps), c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    } else if (c.is_zero()) {
        terms.erase(it);
    }
}

u64 MultiPoly::eval_mod_p(const std::vector<u64>& values, u64 p) const {
    u64 acc = 0;
    for (const auto& [exps, c] : terms) {
        if (u128(c.den) % p == 0)
            throw exceptional_prime("p divides a coefficient denominator of the census polynomial");
        i128 n = c.num % i128(p);
        if (n < 0) n += p;
        u128 term = mulmod(u128(n), invmod(u128(c.den) % p, p), p);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (i >= values.size()) throw usage_error("census polynomial variable without a value");
            term = mulmod(term, powmod(values[i] % p, exps[i], p), p);
        }
        acc = u64((term + acc) % p);
    }
    return acc;
}

std::string MultiPoly::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [exps, c] : terms) {
        if (!out.empty()) out += " + ";
        out += c.to_string();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            out += "*x" + std::to_string(i + 1);
            if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
        }
    }
    return out;
}

namespace {

// poly := term (('+'|'-') term)* ; term := factor ('*' factor)*
// factor := rational | x<k> ['^' n] | '(' poly ')'
struct MPParser {
    Scanner sc;

    MultiPoly parse_poly() {
        MultiPoly acc = parse_term(sc.eat('-') ? -1 : (sc.eat('+'), 1));
        while (!sc.done()) {
            char c = sc.peek();
            if (c == '+') {
                sc.eat('+');
                acc = add(acc, parse_term(1));
            } else if (c == '-') {
                sc.eat('-');
                acc = add(acc, parse_term(-1));
            } else {
                break;
            }
        }
        return acc;
    }

    static MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }

    static MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<unsigned> e(std::max(ea.size(), eb.size()), 0);
                for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }

    MultiPoly parse_term(int sign) {
        MultiPoly acc = parse_factor();
        while (sc.eat('*')) acc = mul(acc, parse_factor());
        if (sign < 0) {
            MultiPoly neg;
            for (const auto& [e, c] : acc.terms) neg.add_term(e, -c);
            return neg;
        }
        return acc;
    }

    MultiPoly parse_factor() {
        MultiPoly f;
        if (sc.eat('(')) {
            f = parse_poly();
            if (!sc.eat(')')) throw usage_error("census polynomial: missing ')'");
        } else if (sc.peek() == 'x') {
            ++sc.pos;
            u64 idx = sc.number();
            if (idx == 0 || idx > 64) throw usage_error("census polynomial: variable index out of range");
            std::vector<unsigned> e(idx, 0);
            e[idx - 1] = 1;
            f.add_term(std::move(e), Rational(1));
        } else if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            u64 num = sc.number();
            u64 den = 1;
            if (sc.eat('/')) den = sc.number();
            f.add_term({}, Rational(i128(num), i128(den)));
        } else {
            throw usage_error("census polynomial: unexpected character at position " +
                              std::to_string(sc.pos));
        }
        if (sc.eat('^')) {
            u64 e = sc.number();
            if (e > 32) throw usage_error("census polynomial: exponent too large");
            MultiPoly acc;
            acc.add_term({}, Rational(1));
            for (u64 i = 0; i < e; ++i) acc = mul(acc, f);
            return acc;
        }
        return f;
    }
};

} // namespace

MultiPoly MultiPoly::parse(const std::string& s) {
    MPParser p{Scanner{s}};
    MultiPoly r = p.parse_poly();
    if (!p.sc.done()) throw usage_error("census polynomial: trailing characters in \"" + s + "\"");
    return r;
}

} // namespace seqper
