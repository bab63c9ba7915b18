#include "cantor/powersum.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace cantor {

namespace {

RefineObserver g_observer = nullptr;

// x^(m-1) with the usual convention x^0 = 1 (also at x = 0).
Rational pow_m1(const Rational& x, long m) {
    return m == 1 ? Rational(1) : x.pow(m - 1);
}

SymbolWord ones_word() { return SymbolWord::parse("1"); }

SymbolWord seed_word(long level) {
    SymbolWord w = ones_word();
    return w.pad_to(static_cast<std::size_t>(level));
}

}  // namespace

void set_refine_observer(RefineObserver obs) { g_observer = obs; }

std::size_t Box::active_count() const {
    std::size_t n = 0;
    for (const auto& c : coords)
        if (!c.frozen) ++n;
    return n;
}

BoxImage box_image(const Box& box, long m) {
    Rational lo(0), hi(0);
    Rational width = box.params.r_pow(box.depth);
    for (const auto& c : box.coords) {
        lo += c.value.pow(m);
        hi += (c.frozen ? c.value : c.value + width).pow(m);
    }
    return {lo, hi};
}

bool subdivision_ok(const Box& box, long m, bool strong) {
    if (box.coords.size() < 2) throw std::invalid_argument("subdivision_ok: k must be >= 2");
    std::size_t max_idx = box.coords.size();
    for (std::size_t i = 0; i < box.coords.size(); ++i) {
        const auto& c = box.coords[i];
        if (c.frozen) continue;
        if (max_idx == box.coords.size() || c.value > box.coords[max_idx].value) max_idx = i;
    }
    if (max_idx == box.coords.size())
        throw std::invalid_argument("subdivision_ok: no non-frozen coordinate");

    Rational lhs(0);
    for (std::size_t i = 0; i < box.coords.size(); ++i)
        if (i != max_idx) lhs += pow_m1(box.coords[i].value, m);

    Rational rn = box.params.r_pow(box.depth);
    Rational top = box.coords[max_idx].value + rn;
    if (!strong) top -= box.params.r_pow(box.depth + 1);
    return lhs >= box.params.lambda * pow_m1(top, m);
}

namespace {

// Child selection for wide boxes. Coordinates with equal left endpoints are
// interchangeable, so only the count of 1-children per value class matters;
// the counts are chosen greedily smallest-first, and the overlap inequality
// behind the subdivision criterion keeps every greedy step feasible.
Box refine_target_grouped(const Box& box, long m, const Rational& target,
                          const std::vector<std::size_t>& act) {
    const long n = box.depth;
    Rational step = (Rational(1) - box.params.r) * box.params.r_pow(n);
    Rational cw = box.params.r_pow(n + 1);

    struct Group {
        Rational u;
        std::vector<std::size_t> idxs;
        Rational l0, l1, h0, h1;
    };
    std::map<std::string, Group> by_value;
    for (std::size_t i : act) {
        const Rational& u = box.coords[i].value;
        auto [it, fresh] = by_value.try_emplace(u.str());
        if (fresh) {
            it->second.u = u;
            it->second.l0 = u.pow(m);
            it->second.l1 = (u + step).pow(m);
            it->second.h0 = (u + cw).pow(m);
            it->second.h1 = (u + step + cw).pow(m);
        }
        it->second.idxs.push_back(i);
    }
    std::vector<Group> groups;
    groups.reserve(by_value.size());
    for (auto& [_, g] : by_value) groups.push_back(std::move(g));

    Rational frozen_sum(0);
    for (const auto& c : box.coords)
        if (c.frozen) frozen_sum += c.value.pow(m);

    std::vector<Rational> suf_lo(groups.size() + 1, Rational(0));
    std::vector<Rational> suf_hi(groups.size() + 1, Rational(0));
    for (std::size_t g = groups.size(); g-- > 0;) {
        Rational cnt(static_cast<long>(groups[g].idxs.size()));
        suf_lo[g] = suf_lo[g + 1] + cnt * groups[g].l0;
        suf_hi[g] = suf_hi[g + 1] + cnt * groups[g].h1;
    }

    Box child = box;
    child.depth = n + 1;
    Rational cur_lo = frozen_sum, cur_hi = frozen_sum;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const Group& grp = groups[g];
        long cnt = static_cast<long>(grp.idxs.size());
        // smallest c with cur_hi + cnt*h0 + c*(h1-h0) + suf_hi >= target
        Rational slack = target - cur_hi - Rational(cnt) * grp.h0 - suf_hi[g + 1];
        long c = 0;
        if (slack.sign() > 0) {
            c = static_cast<long>(Rational(slack / (grp.h1 - grp.h0)).ceil().get_si());
            if (c > cnt) throw SearchFailure("refine_target: group count exceeded its size");
        }
        Rational glo = Rational(cnt - c) * grp.l0 + Rational(c) * grp.l1;
        Rational ghi = Rational(cnt - c) * grp.h0 + Rational(c) * grp.h1;
        if (cur_lo + glo + suf_lo[g + 1] > target)
            throw SearchFailure("refine_target: greedy group selection infeasible");
        cur_lo += glo;
        cur_hi += ghi;
        // 1-children go to the tail of the group: 0s stay in front
        for (long i = 0; i < cnt; ++i) {
            auto& coord = child.coords[grp.idxs[static_cast<std::size_t>(i)]];
            bool one = i >= cnt - c;
            coord.word.push_back(one);
            if (one) coord.value += step;
        }
    }
    if (!(cur_lo <= target && target <= cur_hi))
        throw SearchFailure("refine_target: grouped child misses the target");
    return child;
}

}  // namespace

Box refine_target(const Box& box, long m, const Rational& target) {
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < box.coords.size(); ++i)
        if (!box.coords[i].frozen) act.push_back(i);
    if (act.empty()) throw std::invalid_argument("refine_target: no non-frozen coordinate");
    if (act.size() > 12) return refine_target_grouped(box, m, target, act);

    const long n = box.depth;
    Rational step = (Rational(1) - box.params.r) * box.params.r_pow(n);
    Rational cw = box.params.r_pow(n + 1);

    // Per-coordinate child endpoints: value powers for choice 0 / choice 1.
    std::size_t A = act.size();
    std::vector<Rational> lo0(A), lo1(A), hi0(A), hi1(A);
    Rational frozen_sum(0);
    for (const auto& c : box.coords)
        if (c.frozen) frozen_sum += c.value.pow(m);
    for (std::size_t a = 0; a < A; ++a) {
        const Rational& u = box.coords[act[a]].value;
        lo0[a] = u.pow(m);
        lo1[a] = (u + step).pow(m);
        hi0[a] = (u + cw).pow(m);
        hi1[a] = (u + step + cw).pow(m);
    }
    // Suffix bounds for the undecided coordinates.
    std::vector<Rational> suf_lo(A + 1, Rational(0)), suf_hi(A + 1, Rational(0));
    for (std::size_t a = A; a-- > 0;) {
        suf_lo[a] = suf_lo[a + 1] + lo0[a];
        suf_hi[a] = suf_hi[a + 1] + hi1[a];
    }

    // Best-first search over partial choice vectors, keyed by the least image
    // left endpoint reachable in the subtree; completed children therefore
    // come out in left-endpoint order, 0-branches first on ties.
    struct NodeRec {
        std::size_t parent;
        std::size_t idx;  // coordinates decided
        bool choice;
        Rational lo_acc, hi_acc;
    };
    std::vector<NodeRec> arena;
    arena.push_back({0, 0, false, frozen_sum, frozen_sum});
    using QKey = std::tuple<Rational, unsigned long>;
    struct QCmp {
        bool operator()(const std::pair<QKey, std::size_t>& x,
                        const std::pair<QKey, std::size_t>& y) const {
            return y.first < x.first;  // min-heap
        }
    };
    std::priority_queue<std::pair<QKey, std::size_t>, std::vector<std::pair<QKey, std::size_t>>, QCmp> pq;
    unsigned long serial = 0;
    pq.push({{frozen_sum + suf_lo[0], serial++}, 0});

    constexpr std::size_t kNodeGuard = 1u << 22;
    while (!pq.empty()) {
        auto [key, id] = pq.top();
        pq.pop();
        NodeRec rec = arena[id];
        if (rec.idx == A) {
            // Reconstruct the choice vector.
            std::vector<bool> choice(A);
            std::size_t cur = id;
            for (std::size_t a = A; a-- > 0;) {
                choice[a] = arena[cur].choice;
                cur = arena[cur].parent;
            }
            Box child = box;
            child.depth = n + 1;
            for (std::size_t a = 0; a < A; ++a) {
                auto& c = child.coords[act[a]];
                c.word.push_back(choice[a]);
                if (choice[a]) c.value += step;
            }
            return child;
        }
        for (int bit = 0; bit <= 1; ++bit) {
            Rational nlo = rec.lo_acc + (bit ? lo1[rec.idx] : lo0[rec.idx]);
            Rational nhi = rec.hi_acc + (bit ? hi1[rec.idx] : hi0[rec.idx]);
            Rational bound_lo = nlo + suf_lo[rec.idx + 1];
            Rational bound_hi = nhi + suf_hi[rec.idx + 1];
            if (target < bound_lo || target > bound_hi) continue;
            arena.push_back({id, rec.idx + 1, bit != 0, nlo, nhi});
            if (arena.size() > kNodeGuard)
                throw SearchFailure("refine_target: child search exceeded node guard");
            pq.push({{bound_lo, serial++}, arena.size() - 1});
        }
    }
    throw SearchFailure("refine_target: no child contains the target (criterion violated?)");
}

Rational DecompositionCertificate::replay_sum() const {
    Rational s(0);
    for (const auto& w : words) s += eval_prefix(problem.params, w).pow(problem.m);
    return s;
}

bool DecompositionCertificate::verify() const {
    if (static_cast<long>(words.size()) != problem.k) return false;
    Rational diff = (replay_sum() - target).abs();
    return diff <= residual_bound;
}

Rational residual_bound_from_words(const PowerSumProblem& problem,
                                   const std::vector<SymbolWord>& words) {
    Rational s(0);
    for (const auto& w : words) {
        Rational u = eval_prefix(problem.params, w);
        Rational h = problem.params.r_pow(static_cast<long>(w.size()));
        s += (u + h).pow(problem.m) - u.pow(problem.m);
    }
    return s;
}

namespace {

// Shared state of one decomposition run.
struct Driver {
    const PowerSumProblem& prob;
    const CantorParams& P;
    long m;
    long digits;
    BoundsProfile prof;
    ConditionReport rep;
    Rational omr;    // 1 - r
    Rational omr_m;  // (1-r)^m
    Rational rm;     // r^m

    Driver(const PowerSumProblem& pr, long dig)
        : prob(pr), P(pr.params), m(pr.m), digits(dig), prof(profile(pr.params, pr.m)),
          omr(Rational(1) - pr.params.r), omr_m((Rational(1) - pr.params.r).pow(pr.m)),
          rm(pr.params.r_pow(pr.m)) {}

    std::vector<SymbolWord> refine_loop(Box box, const Rational& target) const {
        BoxImage img = box_image(box, m);
        if (!(img.lo <= target && target <= img.hi))
            throw SearchFailure("refine_loop: target outside seed box image");
        while (box.depth < digits) {
            box = refine_target(box, m, target);
            if (box.active_count() >= 2 || box.coords.size() >= 2) {
                if (!subdivision_ok(box, m, true))
                    throw SearchFailure("refine_loop: strong criterion lost under refinement");
            }
            if (g_observer) g_observer(box, m);
        }
        std::vector<SymbolWord> out;
        for (auto& c : box.coords) out.push_back(std::move(c.word));
        return out;
    }

    // Leftmost finite word prefixed 1 0^(L-1) whose value's m-th power lands
    // in [wlo, whi]. Checks each node before its subtrees, so the first hit
    // is the least admissible left endpoint.
    std::pair<SymbolWord, Rational> slice_search(long L, const Rational& wlo,
                                                 const Rational& whi) const {
        if (wlo > whi) throw SearchFailure("slice_search: empty window");
        long cap = std::max(digits, L) + 96;
        struct Frame {
            SymbolWord w;
            Rational v;
            long level;
        };
        std::vector<Frame> stack;
        stack.push_back({seed_word(L), omr, L});
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            Rational vm = f.v.pow(m);
            if (wlo <= vm && vm <= whi) return {std::move(f.w), std::move(f.v)};
            Rational top = (f.v + P.r_pow(f.level)).pow(m);
            if (top < wlo || vm > whi) continue;  // subtree misses the window
            if (f.level >= cap) continue;
            Rational step = omr * P.r_pow(f.level);
            SymbolWord w1 = f.w;
            w1.push_back(true);
            SymbolWord w0 = std::move(f.w);
            w0.push_back(false);
            // LIFO: push the 1-child first so the 0-child is explored first.
            stack.push_back({std::move(w1), f.v + step, f.level + 1});
            stack.push_back({std::move(w0), std::move(f.v), f.level + 1});
        }
        throw SearchFailure("slice_search: no admissible seed box found at depth cap");
    }

    // Lemma 3.5 window [a, K]: shift zone handled by the level-n* seed box
    // plus coordinates pinned at 1-r; the top zone by the level-1 box on all
    // K coordinates.
    std::vector<SymbolWord> route35(const Rational& q, long K) const {
        Rational box_hi = Rational(prof.k_star) * (omr + P.r_pow(prof.n_star)).pow(m);
        Rational delta = box_hi - prof.a;
        if (delta < omr_m) throw SearchFailure("route35: seed box narrower than the shift step");
        Rational rshift = box_hi + Rational(K - prof.k_star) * omr_m;
        std::vector<SymbolWord> words;
        if (q <= rshift) {
            Rational jq = (q - prof.a) / omr_m;
            long j = static_cast<long>(jq.floor().get_si());
            if (j > K - prof.k_star) j = K - prof.k_star;
            if (j < 0) j = 0;
            Rational q2 = q - Rational(j) * omr_m;
            if (!(prof.a <= q2 && q2 <= box_hi))
                throw SearchFailure("route35: shift selection missed the seed image");
            Box seed{P, prof.n_star, {}};
            for (long i = 0; i < prof.k_star; ++i)
                seed.coords.push_back({seed_word(prof.n_star), omr, false});
            if (!subdivision_ok(seed, m, true))
                throw SearchFailure("route35: seed box fails the strong criterion");
            auto boxwords = refine_loop(std::move(seed), q2);
            for (long i = 0; i < j; ++i) words.push_back(ones_word());
            for (auto& w : boxwords) words.push_back(std::move(w));
            for (long i = 0; i < K - prof.k_star - j; ++i) words.push_back(SymbolWord{});
        } else {
            Box seed{P, 1, {}};
            for (long i = 0; i < K; ++i) seed.coords.push_back({ones_word(), omr, false});
            if (!subdivision_ok(seed, m, true))
                throw SearchFailure("route35: level-1 box fails the strong criterion (A1?)");
            words = refine_loop(std::move(seed), q);
        }
        return words;
    }

    // Lemma 3.8 window [b, K]: below a, peel coordinates pinned at 1-r down
    // to the base piece, route one coordinate through the level-l0 slice and
    // delegate the rest to the scaled Lemma 3.5 window.
    std::vector<SymbolWord> route38(const Rational& s, long K) const {
        if (s >= prof.a) return route35(s, K);
        long k_cond = rep.k;
        if (!rep.l0) throw CertificationError("route38: l0 undefined (degenerate k)");
        Rational jq = (s - prof.b) / omr_m;
        long j = static_cast<long>(jq.floor().get_si());
        if (j < 0 || j > prof.k_star - 2)
            throw SearchFailure("route38: shift count outside 0..k*-2");
        Rational s2 = s - Rational(j) * omr_m;
        Rational wlo = max(s2 - Rational(k_cond) * rm, omr_m);
        Rational whi = min(s2 - prof.a * rm, (omr + P.r_pow(*rep.l0)).pow(m));
        auto [xw, xv] = slice_search(*rep.l0, wlo, whi);
        Rational w = (s2 - xv.pow(m)) / rm;
        if (!(prof.a <= w && w <= Rational(k_cond)))
            throw SearchFailure("route38: slice handoff left the scaled window");
        auto sub = route35(w, k_cond);
        std::vector<SymbolWord> words;
        for (long i = 0; i < j; ++i) words.push_back(ones_word());
        words.push_back(std::move(xw));
        for (auto& sw : sub) words.push_back(sw.prepend_zeros(1));
        for (long i = 0; i < K - j - 1 - k_cond; ++i) words.push_back(SymbolWord{});
        if (static_cast<long>(words.size()) != K)
            throw SearchFailure("route38: summand budget overrun");
        return words;
    }

    // Lemma 3.9 window [(1-r)^m, K]: chain of slice-plus-scaled-window pieces
    // T_n walking down to (1-r)^m.
    std::vector<SymbolWord> window_walk(const Rational& t, long K) const {
        if (t == omr_m) {
            std::vector<SymbolWord> words{ones_word()};
            for (long i = 1; i < K; ++i) words.push_back(SymbolWord{});
            return words;
        }
        if (t >= prof.b) return route38(t, K);
        long k_cond = rep.k;
        long k1 = k_cond + prof.k_star - 1;
        if (k1 > K - 1) throw SearchFailure("window_walk: budget too small for the T_n chain");
        if (!rep.m0) throw CertificationError("window_walk: m0 undefined (degenerate k)");
        long n_cap = 16 * digits + 64;
        for (long n = 0; n <= n_cap; ++n) {
            Rational scale = rm.pow(n + 1);
            Rational lo_n = prof.b * scale + omr_m;
            Rational hi_n = Rational(k1) * scale + (omr + P.r_pow(m * n + *rep.m0)).pow(m);
            if (t < lo_n || t > hi_n) continue;
            long L = m * n + *rep.m0;
            Rational wlo = max(t - Rational(k1) * scale, omr_m);
            Rational whi = min(t - prof.b * scale, (omr + P.r_pow(L)).pow(m));
            auto [xw, xv] = slice_search(L, wlo, whi);
            Rational w = (t - xv.pow(m)) / scale;
            if (!(prof.b <= w && w <= Rational(k1)))
                throw SearchFailure("window_walk: slice handoff left the scaled window");
            auto sub = route38(w, k1);
            std::vector<SymbolWord> words;
            words.push_back(std::move(xw));
            for (auto& sw : sub) words.push_back(sw.prepend_zeros(static_cast<std::size_t>(n + 1)));
            for (long i = static_cast<long>(words.size()); i < K; ++i)
                words.push_back(SymbolWord{});
            return words;
        }
        throw SearchFailure("window_walk: piece selection exhausted (T_n scan)");
    }
};

}  // namespace

DecompositionCertificate decompose(const PowerSumProblem& problem, const Rational& target,
                                   long digits, bool best_effort) {
    if (digits < 1) throw std::invalid_argument("decompose: digits must be >= 1");
    if (target.sign() < 0 || target > Rational(problem.k))
        throw std::invalid_argument("decompose: target out of range [0, k]");

    const CantorParams& P = problem.params;
    const long m = problem.m;
    std::vector<SymbolWord> words;

    if (m == 1) {
        mpz_class kreq_z = g_alpha_1(P);
        long k_req = static_cast<long>(kreq_z.get_si());
        if (problem.k < k_req)
            throw CertificationError("decompose: k below the linear-case requirement ceil(1/r-1)");
        Rational omr = Rational(1) - P.r;
        long l = 0;
        if (target < Rational(k_req) * omr) {
            Rational lq = (Rational(k_req) * omr - target) / omr;
            l = static_cast<long>(lq.ceil().get_si());
        }
        Rational shifted = target + Rational(l) * omr;
        if (!(Rational(k_req) * omr <= shifted && shifted <= Rational(k_req)))
            throw SearchFailure("decompose: integer shift missed the covered window");
        Driver drv(problem, digits);
        Box seed{P, 1, {}};
        for (long i = 0; i < k_req; ++i) seed.coords.push_back({ones_word(), omr, false});
        if (!subdivision_ok(seed, m, true))
            throw SearchFailure("decompose: m=1 level-1 box fails the criterion");
        words = drv.refine_loop(std::move(seed), shifted);
        for (long i = 0; i < l; ++i) {
            if (!words[i].bit(0)) throw SearchFailure("decompose: shift flip on a 0-leading word");
            std::vector<bool> bits;
            bits.reserve(words[i].size());
            bits.push_back(false);
            for (std::size_t b = 1; b < words[i].size(); ++b) bits.push_back(words[i].bit(b));
            words[i] = SymbolWord(std::move(bits));
        }
        for (long i = k_req; i < problem.k; ++i) words.push_back(SymbolWord{});
    } else {
        Driver drv(problem, digits);
        long k_cond = problem.k - drv.prof.k_star;
        if (k_cond < 2) {
            if (!best_effort)
                throw CertificationError("decompose: parameters not certified (k <= k* + 1)");
            k_cond = std::max<long>(2, problem.k - drv.prof.k_star);
        }
        drv.rep = check_conditions(drv.prof, k_cond);
        if (!best_effort) {
            if (!drv.rep.all())
                throw CertificationError(
                    "decompose: parameters not certified (conditions fail at k - k*)");
            if (Rational(problem.k) < drv.prof.lower_bound)
                throw CertificationError("decompose: k below the coverage lower bound (1/r-1)^m");
        }
        if (target.is_zero()) {
            words.assign(static_cast<std::size_t>(problem.k), SymbolWord{});
        } else {
            Rational t1 = target;
            long l = 0;
            long l_cap = 16 * digits + 64;
            while (t1 < drv.omr_m) {
                t1 /= drv.rm;
                if (++l > l_cap) throw SearchFailure("decompose: scaling loop exceeded cap");
            }
            if (t1 > Rational(problem.k))
                throw SearchFailure("decompose: scaled target above the window top");
            words = drv.window_walk(t1, problem.k);
            if (l > 0)
                for (auto& w : words) w = w.prepend_zeros(static_cast<std::size_t>(l));
        }
    }

    for (auto& w : words) w = w.pad_to(static_cast<std::size_t>(digits));

    DecompositionCertificate cert{problem, target, std::move(words), digits, Rational(0)};
    cert.residual_bound = residual_bound_from_words(problem, cert.words);
    if (!cert.verify()) throw SearchFailure("decompose: certificate failed its own replay");
    return cert;
}

DecompositionCertificate scale_certificate(const DecompositionCertificate& cert, long l) {
    if (l < 0) throw std::invalid_argument("scale_certificate: l must be >= 0");
    if (l == 0) return cert;
    DecompositionCertificate out = cert;
    out.target = cert.target * cert.problem.params.r_pow(l * cert.problem.m);
    for (auto& w : out.words) w = w.prepend_zeros(static_cast<std::size_t>(l));
    out.residual_bound = residual_bound_from_words(out.problem, out.words);
    if (!out.verify()) throw SearchFailure("scale_certificate: scaled replay failed");
    return out;
}

}  // namespace cantor
