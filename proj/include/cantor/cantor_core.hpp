#ifndef CANTOR_CORE_HPP
#define CANTOR_CORE_HPP

#include "cantor/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace cantor {

struct DepthCapExceeded : std::runtime_error {
    explicit DepthCapExceeded(const std::string& m) : std::runtime_error(m) {}
};

/// Parameters of the middle-1/alpha Cantor set: the two maps x -> r x and
/// x -> 1-r + r x with contraction ratio r in (0, 1/2).
struct CantorParams {
    Rational r;
    Rational alpha;   // 1 / (1 - 2r)
    Rational lambda;  // 1/r - 2

    explicit CantorParams(Rational ratio);
    static CantorParams from_alpha(const Rational& alpha);

    Rational r_pow(long n) const { return r.pow(n); }
};

/// Binary address word over {0,1}; bit i selects the right map at level i+1.
/// The empty word addresses [0,1].
class SymbolWord {
public:
    SymbolWord() = default;
    explicit SymbolWord(std::vector<bool> bits) : bits_(std::move(bits)) {}
    /// From a string of '0'/'1'.
    static SymbolWord parse(const std::string& s);

    std::size_t size() const { return bits_.size(); }
    bool bit(std::size_t i) const { return bits_[i]; }
    void push_back(bool b) { bits_.push_back(b); }

    SymbolWord prepend_zeros(std::size_t l) const;
    SymbolWord pad_to(std::size_t len) const;  // append zeros (value unchanged)

    std::string str() const;
    bool operator==(const SymbolWord& o) const { return bits_ == o.bits_; }

private:
    std::vector<bool> bits_;
};

/// Left endpoint g_w(0) = sum over set bits of (1-r) r^(i-1); exact.
Rational eval_prefix(const CantorParams& params, const SymbolWord& word);

/// Exact value of the eventually periodic point prefix . block block ... via
/// the geometric series. A nonempty block is required.
Rational eval_periodic(const CantorParams& params, const SymbolWord& prefix,
                       const SymbolWord& block);

/// One level-n construction interval [u, u + r^n].
struct LevelInterval {
    SymbolWord word;
    Rational lo;
    Rational hi;
};

inline constexpr std::size_t kDefaultDepthCap = 20;

/// L_n, the 2^n left endpoints at depth n, ascending.
std::vector<Rational> left_endpoints(const CantorParams& params, std::size_t n,
                                     std::size_t depth_cap = kDefaultDepthCap);

/// The 2^n intervals of F_n in ascending order.
std::vector<LevelInterval> truncation_cover(const CantorParams& params, std::size_t n,
                                            std::size_t depth_cap = kDefaultDepthCap);

}  // namespace cantor

#endif
