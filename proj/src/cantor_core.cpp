#include "cantor/cantor_core.hpp"

namespace cantor {

CantorParams::CantorParams(Rational ratio) : r(std::move(ratio)) {
    if (r.sign() <= 0 || r >= Rational(1, 2))
        throw std::invalid_argument("CantorParams: r must lie in (0, 1/2)");
    alpha = Rational(1) / (Rational(1) - Rational(2) * r);
    lambda = Rational(1) / r - Rational(2);
}

CantorParams CantorParams::from_alpha(const Rational& alpha) {
    if (alpha <= Rational(1)) throw std::invalid_argument("CantorParams: alpha must exceed 1");
    return CantorParams((Rational(1) - Rational(1) / alpha) / Rational(2));
}

SymbolWord SymbolWord::parse(const std::string& s) {
    std::vector<bool> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') bits.push_back(false);
        else if (c == '1') bits.push_back(true);
        else throw std::invalid_argument("SymbolWord: expected only '0'/'1'");
    }
    return SymbolWord(std::move(bits));
}

SymbolWord SymbolWord::prepend_zeros(std::size_t l) const {
    std::vector<bool> bits(l, false);
    bits.insert(bits.end(), bits_.begin(), bits_.end());
    return SymbolWord(std::move(bits));
}

SymbolWord SymbolWord::pad_to(std::size_t len) const {
    if (bits_.size() >= len) return *this;
    std::vector<bool> bits = bits_;
    bits.resize(len, false);
    return SymbolWord(std::move(bits));
}

std::string SymbolWord::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

Rational eval_prefix(const CantorParams& params, const SymbolWord& word) {
    // Horner from the innermost map out: u_i = bit*(1-r) + r*u_{i+1}.
    Rational u(0);
    Rational one_minus_r = Rational(1) - params.r;
    for (std::size_t i = word.size(); i-- > 0;) {
        u = params.r * u;
        if (word.bit(i)) u += one_minus_r;
    }
    return u;
}

Rational eval_periodic(const CantorParams& params, const SymbolWord& prefix,
                       const SymbolWord& block) {
    if (block.size() == 0) throw std::invalid_argument("eval_periodic: empty block");
    Rational blk = eval_prefix(params, block);
    Rational tail = blk / (Rational(1) - params.r_pow(static_cast<long>(block.size())));
    return eval_prefix(params, prefix) + params.r_pow(static_cast<long>(prefix.size())) * tail;
}

std::vector<Rational> left_endpoints(const CantorParams& params, std::size_t n,
                                     std::size_t depth_cap) {
    if (n > depth_cap)
        throw DepthCapExceeded("left_endpoints: depth " + std::to_string(n) + " exceeds cap");
    std::vector<Rational> cur{Rational(0)};
    Rational shift = Rational(1) - params.r;
    for (std::size_t level = 0; level < n; ++level) {
        std::vector<Rational> next;
        next.reserve(cur.size() * 2);
        for (const Rational& u : cur) next.push_back(params.r * u);
        for (const Rational& u : cur) next.push_back(shift + params.r * u);
        cur = std::move(next);  // r*L_n < 1-r <= 1-r + r*L_n keeps ascending order
    }
    return cur;
}

std::vector<LevelInterval> truncation_cover(const CantorParams& params, std::size_t n,
                                            std::size_t depth_cap) {
    if (n > depth_cap)
        throw DepthCapExceeded("truncation_cover: depth " + std::to_string(n) + " exceeds cap");
    struct Item {
        SymbolWord w;
        Rational u;
    };
    // Bit i carries weight (1-r) r^i, so lexicographic word order is ascending
    // value order; expanding children in 0,1 order keeps the list sorted.
    std::vector<Item> cur{{SymbolWord{}, Rational(0)}};
    Rational shift = Rational(1) - params.r;
    for (std::size_t level = 0; level < n; ++level) {
        Rational step = shift * params.r_pow(static_cast<long>(level));
        std::vector<Item> next;
        next.reserve(cur.size() * 2);
        for (const Item& it : cur) {
            SymbolWord w0 = it.w;
            w0.push_back(false);
            next.push_back({std::move(w0), it.u});
            SymbolWord w1 = it.w;
            w1.push_back(true);
            next.push_back({std::move(w1), it.u + step});
        }
        cur = std::move(next);
    }
    Rational width = params.r_pow(static_cast<long>(n));
    std::vector<LevelInterval> out;
    out.reserve(cur.size());
    for (Item& it : cur) out.push_back({std::move(it.w), it.u, it.u + width});
    return out;
}

}  // namespace cantor
