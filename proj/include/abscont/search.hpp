#pragma once

#include <abscont/algebraic.hpp>
#include <abscont/criterion.hpp>
#include <abscont/errors.hpp>
#include <abscont/schur_cohn.hpp>

#include <json.hpp>

#include <atomic>
#include <complex>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace abscont {

struct SearchConfig {
    int max_degree = 9;
    int max_height = 2;
    // leading coefficient fixed to 1, constant term +-1
    std::string checkpoint_path; // empty: no checkpointing
    int jobs = 1;

    void validate() const {
        if (max_degree < 1 || max_degree > 14)
            throw PreconditionError("search: 1 <= max_degree <= 14");
        if (max_height < 1 || max_height > 3) throw PreconditionError("search: 1 <= max_height <= 3");
        if (jobs < 1) throw PreconditionError("search: jobs >= 1");
    }

    std::string hash() const {
        return "deg" + std::to_string(max_degree) + "_h" + std::to_string(max_height);
    }
};

struct CertifiedParameter {
    AlgebraicParameter param;
    CriterionReport report;
};

namespace searchdetail {

inline uint64_t degree_candidate_count(int n, int H) {
    uint64_t c = 2;
    for (int i = 1; i < n; ++i) c *= static_cast<uint64_t>(2 * H + 1);
    return c;
}

/// Decodes the idx-th candidate of degree n (ascending coefficients).
/// a0 varies slowest, then a1, ..., a_{n-1}; this is lexicographic order on
/// the coefficient tuple.
inline void decode_candidate(uint64_t idx, int n, int H, std::vector<int64_t>& coeffs) {
    coeffs.assign(static_cast<size_t>(n) + 1, 0);
    coeffs[static_cast<size_t>(n)] = 1;
    const uint64_t base = static_cast<uint64_t>(2 * H + 1);
    uint64_t rest = idx;
    uint64_t tail = 1;
    for (int i = 1; i < n; ++i) tail *= base;
    coeffs[0] = (rest / tail == 0) ? -1 : 1;
    rest %= tail;
    for (int i = 1; i < n; ++i) {
        tail /= base;
        coeffs[static_cast<size_t>(i)] = static_cast<int64_t>(rest / tail) - H;
        rest %= tail;
    }
}

/// No conjugate can exceed modulus 2 unless sum |a_i| 2^i > 2^n.
inline bool modulus2_possible(const std::vector<int64_t>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    int64_t s = 0;
    for (int i = 0; i < n; ++i) s += std::abs(c[static_cast<size_t>(i)]) << i;
    return s > (int64_t(1) << n);
}

/// A conjugate of modulus > 2 with Mahler measure < 2.06 must be a real root
/// beyond +-2, which forces a sign change there.
inline bool real_root_beyond_2_possible(const std::vector<int64_t>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    int64_t p2 = 0, pm2 = 0;
    int64_t pw = 1;
    for (int i = 0; i <= n; ++i) {
        p2 += c[static_cast<size_t>(i)] * pw;
        pm2 += (i % 2 ? -c[static_cast<size_t>(i)] : c[static_cast<size_t>(i)]) * pw;
        pw <<= 1;
    }
    const bool plus = p2 < 0;                        // root in (2, inf)
    const bool minus = (n % 2 ? -pm2 : pm2) < 0;     // root in (-inf, -2)
    return plus || minus;
}

/// Fast native-double Aberth for prescreening.  Loose tolerances; failure to
/// converge passes the candidate through to the exact stage.
inline bool aberth_double(const std::vector<int64_t>& c, std::vector<std::complex<double>>& roots) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<std::complex<double>> a(c.size());
    for (size_t i = 0; i < c.size(); ++i) a[i] = static_cast<double>(c[i]);
    double maxc = 0;
    for (int i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(static_cast<double>(c[static_cast<size_t>(i)])));
    const double radius = 1.0 + maxc;
    roots.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double th = 2 * M_PI * k / n + 0.437;
        roots[static_cast<size_t>(k)] = std::polar(radius, th);
    }
    std::vector<std::complex<double>> steps(static_cast<size_t>(n));
    for (int round = 0; round < 120; ++round) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            const std::complex<double> z = roots[static_cast<size_t>(k)];
            std::complex<double> pv = 0, dv = 0;
            for (int i = n; i >= 0; --i) {
                dv = dv * z + pv;
                pv = pv * z + a[static_cast<size_t>(i)];
            }
            if (dv == 0.0) {
                steps[static_cast<size_t>(k)] = 1e-8;
                worst = 1;
                continue;
            }
            const std::complex<double> w = pv / dv;
            std::complex<double> s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z - roots[static_cast<size_t>(j)]);
            const std::complex<double> den = 1.0 - w * s;
            const std::complex<double> step = (den == 0.0) ? w : w / den;
            steps[static_cast<size_t>(k)] = step;
            worst = std::max(worst, std::abs(step) / (1 + std::abs(z)));
        }
        for (int k = 0; k < n; ++k) roots[static_cast<size_t>(k)] -= steps[static_cast<size_t>(k)];
        if (worst < 1e-11) return true;
    }
    return false;
}

inline bool double_prescreen(const std::vector<int64_t>& c) {
    std::vector<std::complex<double>> roots;
    if (!aberth_double(c, roots)) return true; // be conservative, let the exact stage decide
    double max_mod = 0, mahler = 1;
    bool lam_candidate = false;
    for (const auto& z : roots) {
        const double m = std::abs(z);
        max_mod = std::max(max_mod, m);
        if (m > 1) mahler *= m;
        if (std::abs(z.imag()) < 1e-6 && z.real() > 0.5 - 1e-3 && z.real() < 1.0 + 1e-3)
            lam_candidate = true;
    }
    return max_mod > 2.0 - 1e-3 && lam_candidate && mahler < 2.2;
}

} // namespace searchdetail

/// Enumerates all candidates (degree <= max_degree, |a_i| <= H, leading 1,
/// constant +-1) in lexicographic order and feeds them to `fn`.
template <class Fn>
void enumerate_candidates(const SearchConfig& cfg, Fn&& fn) {
    cfg.validate();
    std::vector<int64_t> c;
    for (int n = 1; n <= cfg.max_degree; ++n) {
        const uint64_t total = searchdetail::degree_candidate_count(n, cfg.max_height);
        for (uint64_t idx = 0; idx < total; ++idx) {
            searchdetail::decode_candidate(idx, n, cfg.max_height, c);
            std::vector<Int> ci(c.size());
            for (size_t i = 0; i < c.size(); ++i) ci[i] = c[i];
            fn(IntPolynomial(std::move(ci)));
        }
    }
}

/// Full screen of one candidate, as the published search does:
/// a conjugate of modulus > 2 (which certifies that lambda is not a root of
/// any {-1,0,1} polynomial), irreducibility, then the criterion at every
/// real root in (1/2, 1).
inline std::vector<CertifiedParameter> screen(const IntPolynomial& p) {
    std::vector<CertifiedParameter> out;
    const int n = p.degree();
    if (n < 2) return out;

    RootSet rs = find_roots(p);
    Real256 max_mod(0);
    for (const auto& r : rs.roots) max_mod = std::max(max_mod, Real256(abs(r.value)));
    if (!(max_mod > 2)) return out;

    auto lams = real_roots_in(rs, 0.5, 1.0);
    if (lams.empty()) return out;
    if (!is_irreducible(p)) return out;

    const double mahler = static_cast<double>(mahler_measure_hp(p, rs));
    for (const auto& lam : lams) {
        CriterionReport rep = bernoulli_criterion(mahler, static_cast<double>(lam));
        if (!rep.passes) continue;
        CertifiedParameter cp;
        cp.param.min_poly = p;
        cp.param.value = lam;
        cp.param.conjugates = rs;
        cp.param.mahler = mahler;
        cp.param.modulus_one_count = modulus_one_count(rs);
        cp.param.irreducibility_verified = true;
        cp.report = rep;
        out.push_back(std::move(cp));
    }
    return out;
}

namespace searchdetail {

inline std::vector<CertifiedParameter> screen_block(int n, int H, uint64_t lo, uint64_t hi) {
    std::vector<CertifiedParameter> hits;
    std::vector<int64_t> c;
    for (uint64_t idx = lo; idx < hi; ++idx) {
        decode_candidate(idx, n, H, c);
        if (!modulus2_possible(c)) continue;
        if (!real_root_beyond_2_possible(c)) continue;
        if (!double_prescreen(c)) continue;
        std::vector<Int> ci(c.size());
        for (size_t i = 0; i < c.size(); ++i) ci[i] = c[i];
        auto found = screen(IntPolynomial(std::move(ci)));
        for (auto& f : found) hits.push_back(std::move(f));
    }
    return hits;
}

struct Checkpoint {
    std::string config;
    int completed_degree = 0;
    std::vector<std::string> row_polys; // csv form, in output order

    static std::optional<Checkpoint> load(const std::string& path) {
        std::ifstream in(path);
        if (!in) return std::nullopt;
        nlohmann::json j;
        in >> j;
        Checkpoint ck;
        ck.config = j.at("config").get<std::string>();
        ck.completed_degree = j.at("last_completed_block").get<int>();
        for (const auto& r : j.at("rows")) ck.row_polys.push_back(r.get<std::string>());
        return ck;
    }

    void save(const std::string& path) const {
        nlohmann::json j;
        j["config"] = config;
        j["last_completed_block"] = completed_degree;
        j["rows"] = row_polys;
        std::ofstream out(path, std::ios::trunc);
        out << j.dump(1) << "\n";
    }
};

} // namespace searchdetail

/// Runs the table search: all candidates screened, one lexicographic block
/// per degree, checkpointed after each degree, embarrassingly parallel over
/// index ranges inside a degree with a deterministic ordered merge.
inline std::vector<CertifiedParameter> run_search(const SearchConfig& cfg) {
    cfg.validate();
    using namespace searchdetail;

    int start_degree = 1;
    std::vector<std::string> resumed;
    if (!cfg.checkpoint_path.empty()) {
        if (auto ck = Checkpoint::load(cfg.checkpoint_path); ck && ck->config == cfg.hash()) {
            start_degree = ck->completed_degree + 1;
            resumed = ck->row_polys;
        }
    }

    std::vector<CertifiedParameter> rows;
    for (const auto& csv : resumed) {
        auto found = screen(IntPolynomial::parse_csv(csv));
        for (auto& f : found) rows.push_back(std::move(f));
    }

    for (int n = start_degree; n <= cfg.max_degree; ++n) {
        const uint64_t total = degree_candidate_count(n, cfg.max_height);
        const uint64_t block = std::max<uint64_t>(4096, total / (static_cast<uint64_t>(cfg.jobs) * 8));
        const uint64_t nblocks = (total + block - 1) / block;

        std::vector<std::vector<CertifiedParameter>> per_block(nblocks);
        std::atomic<uint64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const uint64_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                per_block[b] =
                    screen_block(n, cfg.max_height, b * block, std::min(total, (b + 1) * block));
            }
        };
        std::vector<std::thread> pool;
        const int workers = std::min<int>(cfg.jobs, static_cast<int>(nblocks));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (auto& blk : per_block)
            for (auto& hit : blk) rows.push_back(std::move(hit));

        if (!cfg.checkpoint_path.empty()) {
            Checkpoint ck;
            ck.config = cfg.hash();
            ck.completed_degree = n;
            for (const auto& r : rows) ck.row_polys.push_back(r.param.min_poly.to_csv());
            // a lambda may repeat its polynomial; keep unique, order-preserving
            std::vector<std::string> uniq;
            for (auto& s : ck.row_polys)
                if (uniq.empty() || std::find(uniq.begin(), uniq.end(), s) == uniq.end())
                    uniq.push_back(s);
            ck.row_polys = std::move(uniq);
            ck.save(cfg.checkpoint_path);
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// the infinite family X^n - 2X^{n-1} - X + 1

struct FamilyRow {
    int n = 0;
    double lambda_n = 0;
    double mahler = 0;
    double big_root = 0;
    bool lambda_in_interval = false; // ((1/2)^{2/sqrt(n-1)}, 1)
    bool big_in_interval = false;    // (2, 2 + 2^{2-n})
    int unit_disk_count = 0;         // roots with modulus < 1 (includes lambda_n)
    int interior_count = 0;          // excluding lambda_n; Lemma-style n-2
    bool schur_verified = false;
    bool irreducible_certified = false;
    CriterionReport bound_report;
    CriterionReport direct_report;
};

/// Root-location, Schur-Cohn count, irreducibility certificate and both
/// criterion verdicts for each n in [n_lo, n_hi].
inline std::vector<FamilyRow> verify_family(int n_lo, int n_hi) {
    if (!(5 <= n_lo && n_lo <= n_hi && n_hi <= 64))
        throw PreconditionError("verify_family requires 5 <= n_lo <= n_hi <= 64");
    std::vector<FamilyRow> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        FamilyRow row;
        row.n = n;
        const IntPolynomial p = family_polynomial(n);
        RootSet rs = find_roots(p);

        const Real256 lam_lo = pow(Real256("0.5"), Real256(2) / sqrt(Real256(n - 1)));
        const Real256 big_hi = Real256(2) + pow(Real256(2), Real256(2 - n));
        Real256 lam(0), big(0);
        int inside = 0, outside = 0;
        for (const auto& r : rs.roots) {
            const Real256 mod = abs(r.value);
            if (mod < 1)
                inside += r.multiplicity;
            else
                outside += r.multiplicity;
            if (abs(r.value.imag()) < 1e-25) {
                const Real256 re = r.value.real();
                if (re > lam_lo && re < 1) lam = re;
                if (re > 2) big = re;
            }
        }
        row.lambda_n = static_cast<double>(lam);
        row.big_root = static_cast<double>(big);
        row.lambda_in_interval = lam > lam_lo && lam < 1;
        row.big_in_interval = big > 2 && big < big_hi;
        row.unit_disk_count = inside;
        row.interior_count = inside - 1; // the n-2 roots of the lemma exclude lambda_n

        DiskCount dc = count_roots_in_disk_checked(p, 1.0);
        row.schur_verified = dc.schur_cohn_verified && dc.count == inside;

        // All unit-disk roots strictly inside, exactly one outside, and
        // p(0) = 1: any factor avoiding the outside root would have all roots
        // in the open disk and constant term 0 < |c| < 1, impossible over Z.
        row.irreducible_certified = (inside == n - 1) && (outside == 1) && (p.coeff(0) == 1);

        FamilyCheck fc = family_check(n);
        row.mahler = fc.mahler;
        row.bound_report = fc.bound_report;
        row.direct_report = fc.direct_report;
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace abscont
