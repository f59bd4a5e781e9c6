#include "seqper/composition.hpp"

#include <algorithm>

namespace seqper {

Composition::Composition(std::vector<unsigned> p) : parts(std::move(p)) {
    for (unsigned x : parts)
        if (x == 0) throw usage_error("composition parts must be positive");
}

unsigned Composition::weight() const {
    unsigned w = 0;
    for (unsigned x : parts) w += x;
    return w;
}

Composition Composition::reversed() const {
    Composition r = *this;
    std::reverse(r.parts.begin(), r.parts.end());
    return r;
}

std::string Composition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s;
}

Composition Composition::parse(const std::string& s) {
    Composition c;
    if (s.empty()) return c;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
            throw usage_error("malformed composition \"" + s + "\" (expected comma-separated positive integers)");
        unsigned long v = std::stoul(piece);
        if (v == 0 || v > 64) throw usage_error("composition part out of range in \"" + s + "\"");
        c.parts.push_back(unsigned(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos == s.size()) throw usage_error("malformed composition \"" + s + "\" (trailing comma)");
    }
    return c;
}

namespace {

void add_term(CompositionSum& acc, const Composition& c, i64 coeff) {
    auto [it, inserted] = acc.emplace(c, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) acc.erase(it);
    }
}

Composition prepend(unsigned head, const Composition& tail) {
    Composition c;
    c.parts.reserve(tail.parts.size() + 1);
    c.parts.push_back(head);
    c.parts.insert(c.parts.end(), tail.parts.begin(), tail.parts.end());
    return c;
}

Composition drop_head(const Composition& c) {
    Composition t;
    t.parts.assign(c.parts.begin() + 1, c.parts.end());
    return t;
}

} // namespace

CompositionSum stuffle_expand(const Composition& s, const Composition& t) {
    CompositionSum acc;
    if (s.empty()) {
        add_term(acc, t, 1);
        return acc;
    }
    if (t.empty()) {
        add_term(acc, s, 1);
        return acc;
    }
    const unsigned a = s.parts.front();
    const unsigned b = t.parts.front();
    const Composition s_tail = drop_head(s);
    const Composition t_tail = drop_head(t);
    // n1 > n2 interleavings, n1 < n2 interleavings, and the n1 = n2 diagonal.
    for (const auto& [c, k] : stuffle_expand(s_tail, t)) add_term(acc, prepend(a, c), k);
    for (const auto& [c, k] : stuffle_expand(s, t_tail)) add_term(acc, prepend(b, c), k);
    for (const auto& [c, k] : stuffle_expand(s_tail, t_tail)) add_term(acc, prepend(a + b, c), k);
    return acc;
}

std::vector<Composition> compositions_of_weight(unsigned w) {
    std::vector<Composition> out;
    if (w == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned rem) -> void {
        if (rem == 0) {
            out.emplace_back(Composition{cur});
            return;
        }
        for (unsigned first = 1; first <= rem; ++first) {
            cur.push_back(first);
            self(self, rem - first);
            cur.pop_back();
        }
    };
    rec(rec, w);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace seqper
