#pragma once

#include <abscont/algebraic.hpp>
#include <abscont/criterion.hpp>
#include <abscont/errors.hpp>
#include <abscont/number_field.hpp>

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace abscont {

enum class ExactRep { number_field, scaled_rational, gaussian, floating };

inline const char* to_string(ExactRep r) {
    switch (r) {
        case ExactRep::number_field: return "number-field";
        case ExactRep::scaled_rational: return "scaled-rational";
        case ExactRep::gaussian: return "gaussian-integer";
        default: return "float";
    }
}

/// Iterated function system x -> lambda U x + a_i with one contraction and
/// one rotation shared by all maps.
struct UniformIFS {
    int dim = 1;
    int n_maps = 0;
    double lam = 0;

    // exact descriptions (at most one is set)
    std::optional<AlgebraicParameter> lam_alg;                // monic => number-field mode
    std::optional<std::pair<int64_t, int64_t>> lam_rational;  // num/den
    struct GaussAlpha {
        int64_t re = 0, im = 0, p = 1;
    };
    std::optional<GaussAlpha> lam_gauss;

    std::array<std::array<double, 2>, 2> rotation{{{1, 0}, {0, 1}}};
    std::vector<std::array<int64_t, 2>> translations; // (t, 0) in one dimension
    std::vector<double> probs;

    enum class Family { generic, bernoulli, q_family, gauss_family };
    Family family = Family::generic;
    int64_t family_q = 0, family_p = 0, family_m = 0;
    double bias = 0.5;

    ExactRep rep() const {
        if (lam_alg && lam_alg->min_poly.lead() == 1) return ExactRep::number_field;
        if (lam_rational) return ExactRep::scaled_rational;
        if (lam_gauss) return ExactRep::gaussian;
        return ExactRep::floating;
    }

    bool uniform_probs() const {
        for (double p : probs)
            if (std::abs(p - probs[0]) > 1e-15) return false;
        return true;
    }

    void validate() const {
        if (dim != 1 && dim != 2) throw PreconditionError("IFS dimension must be 1 or 2");
        if (n_maps < 2) throw PreconditionError("IFS needs at least two maps");
        if (!(lam > 0 && lam < 1)) throw PreconditionError("contraction must lie in (0,1)");
        if (static_cast<int>(translations.size()) != n_maps ||
            static_cast<int>(probs.size()) != n_maps)
            throw PreconditionError("translations/probs must match the number of maps");
        double s = 0, comp = 0; // Kahan; the 1e-15 budget leaves no room for naive summation
        for (double p : probs) {
            if (!(p > 0)) throw PreconditionError("probabilities must be positive");
            const double y = p - comp;
            const double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        if (std::abs(s - 1.0) > 1e-15) throw PreconditionError("probabilities must sum to 1");
        const auto& U = rotation;
        const double o11 = U[0][0] * U[0][0] + U[1][0] * U[1][0];
        const double o22 = U[0][1] * U[0][1] + U[1][1] * U[1][1];
        const double o12 = U[0][0] * U[0][1] + U[1][0] * U[1][1];
        if (std::abs(o11 - 1) > 1e-12 || std::abs(o22 - 1) > 1e-12 || std::abs(o12) > 1e-12)
            throw PreconditionError("rotation must be orthogonal");
    }
};

/// Distribution of the depth-k prefix sum: exact atom keys plus either
/// multiplicity counts (uniform probabilities) or merged weights.
struct SupportLevel {
    int k = 0;
    int dim = 1;
    ExactRep rep = ExactRep::floating;
    int stride = 1;                 // ints per key (exact modes)
    std::vector<int64_t> keys;      // flat, keys.size() == stride * size()
    std::vector<uint64_t> counts;   // uniform probabilities
    std::vector<double> weights;    // otherwise (sum deviates from 1 by < 1e-12)
    uint64_t total_count = 0;       // n^k when counts are used
    std::vector<double> float_pos;  // floating mode: dim doubles per atom

    size_t size() const {
        if (!counts.empty()) return counts.size();
        if (!weights.empty()) return weights.size();
        return float_pos.size() / static_cast<size_t>(dim);
    }

    bool exact() const { return rep != ExactRep::floating; }
    bool uniform() const { return !counts.empty(); }

    double weight(size_t i) const {
        return uniform() ? static_cast<double>(counts[i]) / static_cast<double>(total_count)
                         : weights[i];
    }
};

namespace ifsdetail {

constexpr uint64_t kAtomBudget = uint64_t(1) << 24;

struct ExpansionState {
    ExactRep rep;
    int stride = 1;
    std::shared_ptr<NumberFieldContext> nf;
    ScaledRationalContext rat;
    GaussianContext gauss;
};

inline ExpansionState make_state(const UniformIFS& F) {
    ExpansionState st;
    st.rep = F.rep();
    switch (st.rep) {
        case ExactRep::number_field:
            st.nf = std::make_shared<NumberFieldContext>(F.lam_alg->min_poly, F.lam_alg->value);
            st.stride = st.nf->dim();
            break;
        case ExactRep::scaled_rational:
            st.rat.num = F.lam_rational->first;
            st.rat.den = F.lam_rational->second;
            st.stride = 1;
            break;
        case ExactRep::gaussian:
            st.gauss.alpha_re = F.lam_gauss->re;
            st.gauss.alpha_im = F.lam_gauss->im;
            st.gauss.p = F.lam_gauss->p;
            st.stride = 2;
            break;
        case ExactRep::floating: st.stride = F.dim; break;
    }
    return st;
}

// One expansion step: depth k-1 -> depth k (level index k-1 supplies lambda^{k-1}).
template <class Weight>
inline void expand_exact(const UniformIFS& F, ExpansionState& st, int level,
                         std::vector<int64_t>& keys, std::vector<Weight>& w,
                         const std::vector<Weight>& map_w) {
    const size_t cur = w.size();
    const int n = F.n_maps;
    if (cur * static_cast<size_t>(n) > kAtomBudget)
        throw Overflow("atom budget (2^24) exceeded at depth " + std::to_string(level + 1));
    const int s = st.stride;
    std::vector<int64_t> nk(cur * static_cast<size_t>(n) * static_cast<size_t>(s));
    std::vector<Weight> nw(cur * static_cast<size_t>(n));

    if (st.rep == ExactRep::number_field) {
        const auto& pw = st.nf->power(level);
        for (size_t i = 0; i < cur; ++i) {
            const int64_t* base = keys.data() + i * static_cast<size_t>(s);
            for (int m = 0; m < n; ++m) {
                int64_t* out = nk.data() + (i * static_cast<size_t>(n) + m) * static_cast<size_t>(s);
                const int64_t t = F.translations[static_cast<size_t>(m)][0];
                for (int j = 0; j < s; ++j) out[j] = add_ck(base[j], mul_ck(t, pw[static_cast<size_t>(j)]));
                nw[i * static_cast<size_t>(n) + m] = w[i] * map_w[static_cast<size_t>(m)];
            }
        }
    } else if (st.rep == ExactRep::scaled_rational) {
        const int64_t np = st.rat.num_power(level);
        for (size_t i = 0; i < cur; ++i) {
            const int64_t scaled = mul_ck(st.rat.den, keys[i]);
            for (int m = 0; m < n; ++m) {
                nk[i * static_cast<size_t>(n) + m] =
                    add_ck(scaled, mul_ck(F.translations[static_cast<size_t>(m)][0], np));
                nw[i * static_cast<size_t>(n) + m] = w[i] * map_w[static_cast<size_t>(m)];
            }
        }
    } else {
        const auto& [gr, gi] = st.gauss.alpha_power(level);
        for (size_t i = 0; i < cur; ++i) {
            const int64_t re = mul_ck(st.gauss.p, keys[2 * i]);
            const int64_t im = mul_ck(st.gauss.p, keys[2 * i + 1]);
            for (int m = 0; m < n; ++m) {
                const auto& t = F.translations[static_cast<size_t>(m)];
                int64_t* out = nk.data() + (i * static_cast<size_t>(n) + m) * 2;
                out[0] = add_ck(re, add_ck(mul_ck(t[0], gr), -mul_ck(t[1], gi)));
                out[1] = add_ck(im, add_ck(mul_ck(t[0], gi), mul_ck(t[1], gr)));
                nw[i * static_cast<size_t>(n) + m] = w[i] * map_w[static_cast<size_t>(m)];
            }
        }
    }
    keys = std::move(nk);
    w = std::move(nw);
    sort_merge_keys(keys, w, s);
}

inline void expand_float(const UniformIFS& F, int level, std::vector<double>& pos,
                         std::vector<double>& w) {
    const size_t cur = w.size();
    const int n = F.n_maps;
    const int d = F.dim;
    if (cur * static_cast<size_t>(n) > kAtomBudget) throw Overflow("atom budget (2^24) exceeded");
    // lambda^level U^level
    double a = 1, b = 0, c = 0, e = 1; // 2x2 matrix [[a,b],[c,e]]
    for (int i = 0; i < level; ++i) {
        const auto& U = F.rotation;
        const double na = F.lam * (U[0][0] * a + U[0][1] * c);
        const double nb = F.lam * (U[0][0] * b + U[0][1] * e);
        const double nc = F.lam * (U[1][0] * a + U[1][1] * c);
        const double ne = F.lam * (U[1][0] * b + U[1][1] * e);
        a = na; b = nb; c = nc; e = ne;
    }
    std::vector<double> np(cur * static_cast<size_t>(n) * static_cast<size_t>(d));
    std::vector<double> nw(cur * static_cast<size_t>(n));
    for (size_t i = 0; i < cur; ++i) {
        for (int m = 0; m < n; ++m) {
            const auto& t = F.translations[static_cast<size_t>(m)];
            double* out = np.data() + (i * static_cast<size_t>(n) + m) * static_cast<size_t>(d);
            if (d == 1) {
                out[0] = pos[i] + a * static_cast<double>(t[0]);
            } else {
                out[0] = pos[2 * i] + a * static_cast<double>(t[0]) + b * static_cast<double>(t[1]);
                out[1] = pos[2 * i + 1] + c * static_cast<double>(t[0]) + e * static_cast<double>(t[1]);
            }
            nw[i * static_cast<size_t>(n) + m] = w[i] * F.probs[static_cast<size_t>(m)];
        }
    }
    pos = std::move(np);
    w = std::move(nw);
}

} // namespace ifsdetail

/// Incremental support expander; computes depth-k supports and caches the
/// frontier so sequences over k are linear-time overall.
class SupportExpander {
public:
    explicit SupportExpander(const UniformIFS& F) : F_(F), st_(ifsdetail::make_state(F)) {
        F_.validate();
        uniform_ = F.uniform_probs() && st_.rep != ExactRep::floating;
        if (st_.rep == ExactRep::floating) {
            fpos_.assign(static_cast<size_t>(F.dim), 0.0);
            fw_.assign(1, 1.0);
        } else if (uniform_) {
            keys_.assign(static_cast<size_t>(st_.stride), 0);
            counts_.assign(1, 1);
        } else {
            keys_.assign(static_cast<size_t>(st_.stride), 0);
            weights_.assign(1, 1.0);
        }
    }

    /// Advances to depth k and returns the support there.
    SupportLevel level(int k) {
        if (k < k_) throw PreconditionError("SupportExpander cannot rewind");
        while (k_ < k) step();
        return snapshot();
    }

    int current_depth() const { return k_; }

private:
    void step() {
        if (st_.rep == ExactRep::floating) {
            ifsdetail::expand_float(F_, k_, fpos_, fw_);
            coalesce_floats();
        } else if (uniform_) {
            std::vector<uint64_t> map_w(static_cast<size_t>(F_.n_maps), 1);
            ifsdetail::expand_exact(F_, st_, k_, keys_, counts_, map_w);
        } else {
            std::vector<double> map_w(F_.probs.begin(), F_.probs.end());
            ifsdetail::expand_exact(F_, st_, k_, keys_, weights_, map_w);
        }
        ++k_;
    }

    void coalesce_floats() {
        // merge exactly-equal positions only; float mode carries no exactness claims
        std::vector<size_t> idx(fw_.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        const int d = F_.dim;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            for (int j = 0; j < d; ++j) {
                if (fpos_[a * d + j] != fpos_[b * d + j]) return fpos_[a * d + j] < fpos_[b * d + j];
            }
            return false;
        });
        std::vector<double> np, nw;
        np.reserve(fpos_.size());
        nw.reserve(fw_.size());
        for (size_t t = 0; t < idx.size(); ++t) {
            const double* p = fpos_.data() + idx[t] * d;
            const bool same = !nw.empty() && std::equal(p, p + d, np.end() - d, np.end());
            if (same)
                nw.back() += fw_[idx[t]];
            else {
                np.insert(np.end(), p, p + d);
                nw.push_back(fw_[idx[t]]);
            }
        }
        fpos_ = std::move(np);
        fw_ = std::move(nw);
    }

    SupportLevel snapshot() const {
        SupportLevel s;
        s.k = k_;
        s.dim = F_.dim;
        s.rep = st_.rep;
        s.stride = st_.stride;
        if (st_.rep == ExactRep::floating) {
            s.float_pos = fpos_;
            s.weights = fw_;
        } else if (uniform_) {
            s.keys = keys_;
            s.counts = counts_;
            s.total_count = 1;
            for (int i = 0; i < k_; ++i) s.total_count *= static_cast<uint64_t>(F_.n_maps);
        } else {
            s.keys = keys_;
            s.weights = weights_;
        }
        return s;
    }

    UniformIFS F_;
    ifsdetail::ExpansionState st_;
    bool uniform_ = true;
    int k_ = 0;
    std::vector<int64_t> keys_;
    std::vector<uint64_t> counts_;
    std::vector<double> weights_;
    std::vector<double> fpos_;
    std::vector<double> fw_;
};

/// Exact positions of a support level, evaluated at 128-bit precision.
inline std::vector<Real128> positions_1d(const UniformIFS& F, const SupportLevel& s) {
    std::vector<Real128> out(s.size());
    if (s.rep == ExactRep::number_field) {
        NumberFieldContext nf(F.lam_alg->min_poly, F.lam_alg->value);
        for (size_t i = 0; i < out.size(); ++i) out[i] = nf.evaluate(s.keys.data() + i * s.stride);
    } else if (s.rep == ExactRep::scaled_rational) {
        ScaledRationalContext rc;
        rc.num = F.lam_rational->first;
        rc.den = F.lam_rational->second;
        for (size_t i = 0; i < out.size(); ++i) out[i] = rc.evaluate(s.keys[i], s.k);
    } else if (s.rep == ExactRep::floating) {
        for (size_t i = 0; i < out.size(); ++i) out[i] = Real128(s.float_pos[i]);
    } else {
        throw PreconditionError("positions_1d on a planar support");
    }
    return out;
}

inline std::vector<std::pair<Real128, Real128>> positions_2d(const UniformIFS& F,
                                                             const SupportLevel& s) {
    std::vector<std::pair<Real128, Real128>> out(s.size());
    if (s.rep == ExactRep::gaussian) {
        GaussianContext gc;
        gc.alpha_re = F.lam_gauss->re;
        gc.alpha_im = F.lam_gauss->im;
        gc.p = F.lam_gauss->p;
        for (size_t i = 0; i < out.size(); ++i) out[i] = gc.evaluate(s.keys.data() + 2 * i, s.k);
    } else if (s.rep == ExactRep::floating && s.dim == 2) {
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = {Real128(s.float_pos[2 * i]), Real128(s.float_pos[2 * i + 1])};
    } else {
        throw PreconditionError("positions_2d requires a planar support");
    }
    return out;
}

/// k-step support of F: the distribution of the depth-k prefix sum with
/// exactly-merged atoms.
inline SupportLevel k_step_support(const UniformIFS& F, int k) {
    if (k < 1) throw PreconditionError("k_step_support requires k >= 1");
    SupportExpander ex(F);
    return ex.level(k);
}

/// Minimum distance between distinct support points, evaluated at 128-bit
/// precision.
inline double separation_of(const UniformIFS& F, const SupportLevel& s) {
    if (s.size() < 2) throw Degenerate("separation needs at least two support points");
    if (F.dim == 1) {
        auto xs = positions_1d(F, s);
        std::sort(xs.begin(), xs.end());
        Real128 best = xs[1] - xs[0];
        for (size_t i = 2; i < xs.size(); ++i) best = std::min(best, Real128(xs[i] - xs[i - 1]));
        return static_cast<double>(best);
    }
    auto ps = positions_2d(F, s);
    std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) {
        return a.first < b.first || (a.first == b.first && a.second < b.second);
    });
    // plane sweep with an x-window of the current best
    Real128 best = hypot(Real128(ps[1].first - ps[0].first), Real128(ps[1].second - ps[0].second));
    for (size_t j = 1; j < ps.size(); ++j) {
        for (size_t i = j; i-- > 0;) {
            const Real128 dx = ps[j].first - ps[i].first;
            if (dx >= best) break;
            const Real128 dy = ps[j].second - ps[i].second;
            if (abs(dy) >= best) continue;
            best = std::min(best, Real128(hypot(dx, dy)));
        }
    }
    return static_cast<double>(best);
}

inline double separation(const UniformIFS& F, int k) {
    return separation_of(F, k_step_support(F, k));
}

/// The finite-k sequence (k, Delta_{F,k}^{-1/k}) whose limsup is the
/// splitting rate M_F.  No limit is claimed.
inline std::vector<std::pair<int, double>> splitting_rate_estimate(const UniformIFS& F, int kmax) {
    std::vector<std::pair<int, double>> out;
    SupportExpander ex(F);
    for (int k = 1; k <= kmax; ++k) {
        SupportLevel s = ex.level(k);
        if (s.size() < 2) continue;
        const double d = separation_of(F, s);
        out.emplace_back(k, std::pow(d, -1.0 / k));
    }
    return out;
}

struct GarsiaEntry {
    int k = 0;
    double h_over_k = 0;     // nats
    bool exact_log_n = false; // all multiplicities 1: h_k = k log n exactly
};

/// Shannon entropy of the exact depth-k distribution divided by k.
/// Requires an exact representation; tolerance-merged float atoms are not
/// certifiable.
inline std::vector<GarsiaEntry> garsia_entropy_sequence(const UniformIFS& F, int kmax) {
    if (F.rep() == ExactRep::floating)
        throw InexactMode("Garsia entropy requires an exact point representation");
    std::vector<GarsiaEntry> out;
    SupportExpander ex(F);
    for (int k = 1; k <= kmax; ++k) {
        SupportLevel s = ex.level(k);
        GarsiaEntry e;
        e.k = k;
        if (s.uniform()) {
            const double total = static_cast<double>(s.total_count);
            double acc = 0;
            bool all_one = true;
            for (uint64_t c : s.counts) {
                if (c > 1) {
                    all_one = false;
                    acc += static_cast<double>(c) * std::log(static_cast<double>(c));
                }
            }
            e.h_over_k = (std::log(total) - acc / total) / k;
            e.exact_log_n = all_one;
        } else {
            double H = 0;
            for (double w : s.weights) H -= w * std::log(w);
            e.h_over_k = H / k;
            e.exact_log_n = false;
        }
        out.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// family constructors

inline UniformIFS bernoulli_ifs(AlgebraicParameter lam, double bias = 0.5) {
    const double v = lam.value_d();
    if (!(v > 0 && v < 1)) throw PreconditionError("bernoulli_ifs requires lambda in (0,1)");
    if (!(bias > 0 && bias < 1)) throw PreconditionError("bernoulli_ifs requires bias in (0,1)");
    UniformIFS F;
    F.dim = 1;
    F.n_maps = 2;
    F.lam = v;
    F.translations = {{-1, 0}, {1, 0}};
    F.probs = {bias, 1.0 - bias};
    F.family = UniformIFS::Family::bernoulli;
    F.bias = bias;
    if (lam.min_poly.degree() == 1 && lam.min_poly.lead() != 1) {
        // rational lambda -a0/a1: exact scaled-integer mode
        int64_t num = static_cast<int64_t>(-lam.min_poly.coeff(0));
        int64_t den = static_cast<int64_t>(lam.min_poly.lead());
        if (den < 0) { den = -den; num = -num; }
        F.lam_rational = {{num, den}};
        F.lam_alg = std::move(lam);
    } else if (lam.min_poly.lead() == 1) {
        F.lam_alg = std::move(lam);
    } else {
        F.lam_alg = std::move(lam); // float fallback; rep() sees non-monic
    }
    return F;
}

/// Prime family: lambda = (q-1)/q, translations 1..q-1, uniform weights.
inline UniformIFS q_ifs(int64_t q) {
    if (!is_small_prime(q) || q < 3) throw NotPrime("q_ifs requires a prime q >= 3");
    UniformIFS F;
    F.dim = 1;
    F.n_maps = static_cast<int>(q - 1);
    F.lam = static_cast<double>(q - 1) / static_cast<double>(q);
    F.lam_rational = {{q - 1, q}};
    F.translations.reserve(static_cast<size_t>(q - 1));
    for (int64_t i = 1; i < q; ++i) F.translations.push_back({i, 0});
    F.probs.assign(static_cast<size_t>(q - 1), 1.0 / static_cast<double>(q - 1));
    F.family = UniformIFS::Family::q_family;
    F.family_q = q;
    return F;
}

/// Gaussian-integer family: alpha = (p-1+i)/p, translations the first m
/// lexicographic coset representatives of (p) in Z[i].
inline UniformIFS gauss_ifs(int64_t p, int64_t m) {
    if (!is_small_prime(p) || p % 4 != 3) throw BadPrime("gauss_ifs requires a prime p = 3 (mod 4)");
    if (m < 2 || m > p * p) throw PreconditionError("gauss_ifs requires 2 <= m <= p^2");
    UniformIFS F;
    F.dim = 2;
    F.n_maps = static_cast<int>(m);
    const double pd = static_cast<double>(p);
    const double mod = std::sqrt((pd - 1) * (pd - 1) + 1.0);
    F.lam = mod / pd;
    F.lam_gauss = UniformIFS::GaussAlpha{p - 1, 1, p};
    const double ct = (pd - 1) / mod, st = 1.0 / mod; // cos/sin of arg alpha
    F.rotation = {{{ct, -st}, {st, ct}}};
    F.translations.reserve(static_cast<size_t>(m));
    for (int64_t x = 0; x < p && static_cast<int64_t>(F.translations.size()) < m; ++x)
        for (int64_t y = 0; y < p && static_cast<int64_t>(F.translations.size()) < m; ++y)
            F.translations.push_back({x, y});
    F.probs.assign(static_cast<size_t>(m), 1.0 / static_cast<double>(m));
    F.family = UniformIFS::Family::gauss_family;
    F.family_p = p;
    F.family_m = m;
    return F;
}

// ---------------------------------------------------------------------------
// certification

struct CertificationReport {
    std::vector<GarsiaEntry> garsia_sequence;
    std::vector<std::pair<int, double>> splitting_sequence;
    int overlap_free_up_to = 0;
    bool overlap_free_certified = false;
    std::string overlap_reason;
    double splitting_bound = 0;
    std::string splitting_provenance;
    bool h_certified = false;
    double h_value = 0; // nats
    bool criterion_valid = false;
    CriterionReport criterion;
    bool certified_abs_continuous = false;
};

struct CertifyOptions {
    std::optional<double> manual_h;
    std::optional<double> manual_M;
};

inline double shannon_entropy(const std::vector<double>& probs) {
    double h = 0;
    for (double p : probs) h -= p * std::log(p);
    return h;
}

/// Assembles the certified splitting bound and Garsia entropy for the family
/// the IFS was built by, evaluates the absolute-continuity criterion, and
/// attaches the empirical depth sequences.
inline CertificationReport certify(const UniformIFS& F, int kmax, CertifyOptions opt = {}) {
    F.validate();
    CertificationReport rep;

    switch (F.family) {
        case UniformIFS::Family::bernoulli: {
            rep.splitting_bound = F.lam_alg ? F.lam_alg->mahler : 0;
            rep.splitting_provenance = "Mahler measure of lambda";
            const bool mod2 = F.lam_alg && max_conjugate_modulus(*F.lam_alg) > 2.0 &&
                              F.lam_alg->irreducibility_verified;
            if (mod2) {
                rep.overlap_free_certified = true;
                rep.overlap_reason = "conjugate of modulus > 2 rules out {-1,0,1} relations";
                rep.h_certified = true;
                rep.h_value = shannon_entropy(F.probs);
            }
            break;
        }
        case UniformIFS::Family::q_family:
            rep.splitting_bound = static_cast<double>(F.family_q);
            rep.splitting_provenance = "q^{k-1} clears denominators: separation >= q^{-k}";
            rep.overlap_free_certified = true;
            rep.overlap_reason = "residues mod q^i identify the digits";
            rep.h_certified = true;
            rep.h_value = std::log(static_cast<double>(F.family_q - 1));
            break;
        case UniformIFS::Family::gauss_family:
            rep.splitting_bound = static_cast<double>(F.family_p);
            rep.splitting_provenance = "p^{k-1} clears denominators in Z[i]: separation >= p^{-k+1}";
            rep.overlap_free_certified = true;
            rep.overlap_reason = "translations lie in distinct cosets of the prime ideal (p)";
            rep.h_certified = true;
            rep.h_value = std::log(static_cast<double>(F.family_m));
            break;
        case UniformIFS::Family::generic: break;
    }
    if (opt.manual_M) {
        rep.splitting_bound = *opt.manual_M;
        rep.splitting_provenance = "caller-supplied bound";
    }
    if (opt.manual_h) {
        rep.h_certified = true;
        rep.h_value = *opt.manual_h;
    }

    if (rep.splitting_bound > 1 && (rep.h_certified || opt.manual_h)) {
        CriterionInput in;
        in.dim = F.dim;
        in.log_splitting = std::log(rep.splitting_bound);
        in.garsia_entropy = rep.h_value;
        in.lam = F.lam;
        rep.criterion = general_criterion(in);
        rep.criterion_valid = true;
        rep.certified_abs_continuous =
            rep.criterion.passes && rep.overlap_free_certified && rep.h_certified;
    }

    // empirical sequences at desk scale
    if (F.rep() != ExactRep::floating) {
        rep.garsia_sequence = garsia_entropy_sequence(F, kmax);
        SupportExpander ex(F);
        uint64_t nk = 1;
        for (int k = 1; k <= kmax; ++k) {
            SupportLevel s = ex.level(k);
            nk *= static_cast<uint64_t>(F.n_maps);
            if (s.size() == nk && rep.overlap_free_up_to == k - 1) rep.overlap_free_up_to = k;
            if (s.size() >= 2)
                rep.splitting_sequence.emplace_back(k, std::pow(separation_of(F, s), -1.0 / k));
        }
    }
    return rep;
}

} // namespace abscont
