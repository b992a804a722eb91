#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chebias/class_function.hpp"
#include "chebias/embedding.hpp"
#include "chebias/error.hpp"
#include "chebias/frobenius.hpp"
#include "chebias/sieve.hpp"
#include "chebias/transfer.hpp"

namespace chebias {

/// Sorted, deduplicated integer sample points x >= 2.
struct Checkpoints {
  std::vector<std::uint64_t> xs;

  Checkpoints() = default;
  explicit Checkpoints(std::vector<std::uint64_t> v) : xs(std::move(v)) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (!xs.empty() && xs.front() < 2) throw error("checkpoints must be >= 2");
  }

  /// floor(2 r^j) for j = 0, 1, ... up to `limit`, plus `limit` itself.
  static Checkpoints geometric(std::uint64_t limit, double ratio = 1.05) {
    if (limit < 2) throw error("checkpoints: limit must be >= 2");
    if (!(ratio > 1.0)) throw error("checkpoints: grid ratio must exceed 1");
    std::vector<std::uint64_t> v;
    for (long double x = 2; x <= static_cast<long double>(limit); x *= ratio) v.push_back(static_cast<std::uint64_t>(x));
    v.push_back(limit);
    return Checkpoints(std::move(v));
  }

  std::uint64_t limit() const { return xs.empty() ? 0 : xs.back(); }
  std::size_t size() const { return xs.size(); }
};

/// R(x) = x^(1/2)/log x + int_2^x du / (u^(1/2) log^2 u).
///
/// The integral is taken in v = log u, where the integrand is e^(v/2)/v^2,
/// with adaptive Gauss-Kronrod to relative error 1e-12.
inline double r_norm(double x) {
  if (!(x >= 2.0)) throw error("r_norm: x must be >= 2");
  const double head = std::sqrt(x) / std::log(x);
  if (x == 2.0) return head;
  auto integrand = [](double v) { return std::exp(v / 2) / (v * v); };
  double err = 0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, std::log(2.0), std::log(x), 20, 1e-12, &err);
  return head + integral;
}

/// Neumaier-compensated sum.
struct CompensatedSum {
  double sum = 0, comp = 0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum);
    add(o.comp);
  }
  double value() const { return sum + comp; }
};

struct ComplexSum {
  CompensatedSum re, im;
  void add(const ComplexSum& o) {
    re.add(o.re);
    im.add(o.im);
  }
};

/// Exact Gaussian integer used for per-prime t-weights (numerators over a
/// common denominator).
struct GaussInt {
  long long re = 0, im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
  GaussInt& operator+=(const GaussInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend GaussInt operator*(long long s, const GaussInt& z) { return {s * z.re, s * z.im}; }
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

struct AccumulateOptions {
  unsigned threads = 1;
  /// psi(x^(1/l); t(.^l)) is tracked for l = 1 .. max_twist (at least 1).
  std::size_t max_twist = 1;
  /// Primes are processed in fixed blocks of this many integers; the output
  /// is independent of the thread count because blocks merge in order.
  std::uint64_t block_size = std::uint64_t{1} << 20;
  /// Classes of G compared in D(x); default: the oracle's class representatives.
  std::optional<std::size_t> c1, c2;
  /// Optional progress callback (primes done so far); called from worker threads.
  std::function<void(std::uint64_t)> progress;
};

/// Per-prime exact audits collected during accumulation.
struct PrimeAudit {
  std::uint64_t primes_used = 0;
  std::vector<std::uint64_t> excluded_seen;
  /// Primes whose exact psi t-weight at some level p^m <= X is nonzero.
  std::uint64_t psi_nonzero_primes = 0;
  std::uint64_t first_psi_nonzero_prime = 0;
  /// (prime, level) pairs where the Moebius-grouped psi weights differ from
  /// the theta weight; only meaningful when max_twist covers every level.
  std::uint64_t mobius_mismatches = 0;
  std::uint64_t mobius_levels_checked = 0;
  std::uint64_t degree_violations = 0;
};

/// Counting functions sampled at checkpoints.
struct BiasSeries {
  std::vector<std::uint64_t> x;
  std::size_t c1 = 0, c2 = 0;
  std::size_t size_c1 = 1, size_c2 = 1;
  /// pi[i][c] = number of unramified primes of K with norm <= x[i] and Frobenius class c.
  std::vector<std::vector<long long>> pi;
  std::vector<long long> ideals;
  std::vector<std::complex<double>> theta, psi;
  /// psi_twisted[l-1][i] = psi(x[i]^(1/l); t(.^l)).
  std::vector<std::vector<std::complex<double>>> psi_twisted;
  std::vector<double> R, D, log_density, natural_density;
  /// Frobenius class counts in G+ over all used primes <= X.
  std::vector<std::uint64_t> frobenius_class_counts;
  PrimeAudit audit;
  std::size_t index = 0;  // [G+ : G]
};

namespace detail {

inline long long checked_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() / 1024 || v < -(std::numeric_limits<long long>::max() / 1024))
    throw error("class function values too large for exact accumulation");
  return static_cast<long long>(v);
}

/// Everything the hot loop needs for primes whose Frobenius lies in one class of G+.
struct ClassPlan {
  std::vector<SplitEntry> entries;
  std::vector<GaussInt> theta_w;               // [n]: sum over entries with f = n of mult f t(c)
  std::vector<std::vector<GaussInt>> psi_w;    // [l][m]: sum over entries f | m of mult f t(c^(l m / f))
};

struct BlockResult {
  std::vector<long long> pi;   // bins x classes
  std::vector<long long> ideals;
  std::vector<ComplexSum> theta;
  std::vector<std::vector<ComplexSum>> psi;  // [l-1][bin]
  std::vector<std::pair<std::uint64_t, long long>> events;  // (position, delta of |C2|pi1 - |C1|pi2)
  std::vector<std::uint64_t> frob_counts;
  PrimeAudit audit;
};

inline int moebius(std::size_t n) {
  int mu = 1;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace detail

/// Running value and densities of the positivity set of a step function.
struct PositivityTrack {
  std::vector<long long> value;  // step function at each checkpoint (closed at x)
  std::vector<double> log_density, natural_density;
};

/// The step function starts at 0 at x = 1 and jumps by `delta` at each event
/// position. Returns, for each checkpoint X, (1/log X) of the dx/x measure and
/// (1/X) of the dx measure of {1 <= x <= X : value(x) > 0}, integrated exactly
/// between jumps.
inline PositivityTrack integrate_positivity(std::vector<std::pair<std::uint64_t, long long>> events,
                                            const std::vector<std::uint64_t>& xs) {
  std::sort(events.begin(), events.end());
  PositivityTrack out;
  out.value.resize(xs.size());
  out.log_density.resize(xs.size());
  out.natural_density.resize(xs.size());
  long long s = 0;
  long double cur = 1, log_int = 0, nat_int = 0;
  std::size_t ev = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::uint64_t xi = xs[i];
    if (xi < 2) throw error("integrate_positivity: checkpoints must be >= 2");
    while (ev < events.size() && events[ev].first <= xi) {
      const std::uint64_t pos = events[ev].first;
      long long delta = 0;
      while (ev < events.size() && events[ev].first == pos) delta += events[ev++].second;
      if (s > 0) {
        log_int += std::log(static_cast<long double>(pos) / cur);
        nat_int += static_cast<long double>(pos) - cur;
      }
      cur = static_cast<long double>(pos);
      s += delta;
    }
    long double li = log_int, ni = nat_int;
    if (s > 0) {
      li += std::log(static_cast<long double>(xi) / cur);
      ni += static_cast<long double>(xi) - cur;
    }
    out.value[i] = s;
    out.log_density[i] = static_cast<double>(li / std::log(static_cast<long double>(xi)));
    out.natural_density[i] = static_cast<double>(ni / static_cast<long double>(xi));
  }
  return out;
}

/// Accumulates pi, theta and psi over the primes of K = L^G up to the last
/// checkpoint.
///
/// A rational prime p with Frobenius class D contributes, for each entry
/// (c, f, mult) of the splitting pattern of D: mult to pi(x; c) once p^f <= x,
/// mult f t(c) log p to theta, and mult f t(c^k) log p to psi at every
/// p^(f k) <= x. Excluded primes are skipped and listed in the audit.
template <class Oracle>
BiasSeries accumulate(const Oracle& oracle, const SubgroupEmbedding& emb, const ClassFunction& t,
                      const Checkpoints& cps, const AccumulateOptions& opt = {}) {
  if (cps.size() == 0) throw error("accumulate: no checkpoints");
  if (!(*oracle.group() == emb.ambient())) throw error("accumulate: oracle group differs from the ambient group");
  if (!(t.group() == emb.sub())) throw error("accumulate: class function is not on the subgroup");
  if (opt.threads < 1) throw error("accumulate: thread count must be >= 1");
  const auto& G = emb.sub();
  const auto& A = emb.ambient();
  const std::uint64_t X = cps.limit();
  const std::size_t bins = cps.size();
  const std::size_t ncls = G.class_count();
  const std::size_t max_twist = std::max<std::size_t>(1, opt.max_twist);
  std::size_t max_level = 1;
  while ((std::uint64_t{1} << (max_level + 1)) <= X) ++max_level;

  // Exact t as Gaussian integers over a common denominator.
  BigInt denom = 1;
  for (const auto& z : t.values()) {
    denom = boost::multiprecision::lcm(denom, BigInt(boost::multiprecision::denominator(z.re())));
    denom = boost::multiprecision::lcm(denom, BigInt(boost::multiprecision::denominator(z.im())));
  }
  const double denom_d = static_cast<double>(denom);
  std::vector<GaussInt> tnum(ncls);
  for (std::size_t c = 0; c < ncls; ++c) {
    const auto& z = t.at_class(c);
    tnum[c] = {detail::checked_ll(BigInt(boost::multiprecision::numerator(z.re())) * (denom / BigInt(boost::multiprecision::denominator(z.re())))),
               detail::checked_ll(BigInt(boost::multiprecision::numerator(z.im())) * (denom / BigInt(boost::multiprecision::denominator(z.im()))))};
  }
  auto class_power = [&](std::size_t c, std::size_t k) {
    return G.class_of(G.class_representative(c).pow(static_cast<long long>(k)));
  };

  const PatternTable table(emb);
  std::vector<detail::ClassPlan> plans(A.class_count());
  for (std::size_t d = 0; d < A.class_count(); ++d) {
    auto& plan = plans[d];
    plan.entries = table.for_class(d).entries;
    plan.theta_w.assign(max_level + 1, {});
    plan.psi_w.assign(max_twist + 1, std::vector<GaussInt>(max_level + 1));
    for (const auto& e : plan.entries) {
      const auto f = static_cast<long long>(e.residue_degree);
      const auto w = f * static_cast<long long>(e.multiplicity);
      if (e.residue_degree <= max_level) plan.theta_w[e.residue_degree] += w * tnum[e.class_id];
      for (std::size_t l = 1; l <= max_twist; ++l)
        for (std::size_t m = e.residue_degree; m <= max_level; m += e.residue_degree)
          plan.psi_w[l][m] += w * tnum[class_power(e.class_id, l * (m / e.residue_degree))];
    }
  }

  BiasSeries series;
  series.x = cps.xs;
  series.index = emb.index();
  series.c1 = opt.c1 ? *opt.c1 : G.class_of(oracle.data().class1_rep);
  series.c2 = opt.c2 ? *opt.c2 : G.class_of(oracle.data().class2_rep);
  if (series.c1 >= ncls || series.c2 >= ncls) throw error("accumulate: compared classes out of range");
  series.size_c1 = G.class_size(series.c1);
  series.size_c2 = G.class_size(series.c2);
  const auto wc1 = static_cast<long long>(series.size_c2);
  const auto wc2 = static_cast<long long>(series.size_c1);

  const std::uint64_t block = std::max<std::uint64_t>(opt.block_size, 1024);
  const std::uint64_t nblocks = (X + block - 1) / block;
  std::vector<detail::BlockResult> results(nblocks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done_primes{0};
  std::mutex err_mu;
  std::exception_ptr failure;

  auto bin_of = [&](std::uint64_t pos) {
    return static_cast<std::size_t>(std::lower_bound(cps.xs.begin(), cps.xs.end(), pos) - cps.xs.begin());
  };

  auto run_block = [&](std::uint64_t b) {
    auto& r = results[b];
    r.pi.assign(bins * ncls, 0);
    r.ideals.assign(bins, 0);
    r.theta.assign(bins, {});
    r.psi.assign(max_twist, std::vector<ComplexSum>(bins));
    r.frob_counts.assign(A.class_count(), 0);
    const std::uint64_t lo = b * block + 1;
    const std::uint64_t hi = std::min(X, (b + 1) * block);
    std::uint64_t local = 0;
    for_each_prime(lo, hi, [&](std::uint64_t p) {
      auto d = oracle.frobenius_class(p);
      if (!d) {
        r.audit.excluded_seen.push_back(p);
        return;
      }
      ++r.audit.primes_used;
      ++r.frob_counts[*d];
      const auto& plan = plans[*d];
      const double logp = std::log(static_cast<double>(p));
      bool psi_nonzero = false;
      std::size_t degree_sum = 0;
      std::uint64_t pw = 1;
      for (std::size_t n = 1; n <= max_level; ++n) {
        if (pw > X / p) break;
        pw *= p;
        const std::size_t bin = bin_of(pw);
        for (const auto& e : plan.entries) {
          if (e.residue_degree != n) continue;
          const auto mult = static_cast<long long>(e.multiplicity);
          degree_sum += e.residue_degree * e.multiplicity;
          r.pi[bin * ncls + e.class_id] += mult;
          r.ideals[bin] += mult;
          if (e.class_id == series.c1) r.events.emplace_back(pw, wc1 * mult);
          if (e.class_id == series.c2) r.events.emplace_back(pw, -wc2 * mult);
        }
        const auto& tw = plan.theta_w[n];
        if (!tw.is_zero()) {
          r.theta[bin].re.add(static_cast<double>(tw.re) * logp);
          r.theta[bin].im.add(static_cast<double>(tw.im) * logp);
        }
        GaussInt grouped;
        for (std::size_t l = 1; l <= max_twist; ++l) {
          if (n % l != 0) continue;
          const auto& w = plan.psi_w[l][n / l];
          if (l == 1 && !w.is_zero()) psi_nonzero = true;
          grouped += detail::moebius(l) * w;
          if (w.is_zero()) continue;
          r.psi[l - 1][bin].re.add(static_cast<double>(w.re) * logp);
          r.psi[l - 1][bin].im.add(static_cast<double>(w.im) * logp);
        }
        if (max_twist >= n) {
          ++r.audit.mobius_levels_checked;
          if (!(grouped == tw)) ++r.audit.mobius_mismatches;
        }
      }
      // Every ideal has f <= max_level when p^f <= X; the rest lie beyond X.
      if (pw <= X / p || degree_sum > emb.index()) {
        std::size_t full = 0;
        for (const auto& e : plan.entries) full += e.residue_degree * e.multiplicity;
        if (full != emb.index()) ++r.audit.degree_violations;
      }
      if (psi_nonzero) {
        if (r.audit.psi_nonzero_primes == 0) r.audit.first_psi_nonzero_prime = p;
        ++r.audit.psi_nonzero_primes;
      }
      if (opt.progress && (++local % 65536) == 0) opt.progress(done_primes += 65536);
    });
  };

  auto worker = [&] {
    try {
      for (std::uint64_t b; (b = next++) < nblocks;) run_block(b);
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!failure) failure = std::current_exception();
      next = nblocks;
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<std::uint64_t>(opt.threads, std::max<std::uint64_t>(nblocks, 1));
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  // Merge blocks in order.
  std::vector<long long> pi(bins * ncls, 0), ideals(bins, 0);
  std::vector<ComplexSum> theta(bins);
  std::vector<std::vector<ComplexSum>> psi(max_twist, std::vector<ComplexSum>(bins));
  std::vector<std::pair<std::uint64_t, long long>> events;
  series.frobenius_class_counts.assign(A.class_count(), 0);
  for (auto& r : results) {
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] += r.pi[i];
    for (std::size_t i = 0; i < bins; ++i) {
      ideals[i] += r.ideals[i];
      theta[i].add(r.theta[i]);
      for (std::size_t l = 0; l < max_twist; ++l) psi[l][i].add(r.psi[l][i]);
    }
    events.insert(events.end(), r.events.begin(), r.events.end());
    for (std::size_t c = 0; c < A.class_count(); ++c) series.frobenius_class_counts[c] += r.frob_counts[c];
    auto& a = series.audit;
    a.primes_used += r.audit.primes_used;
    a.excluded_seen.insert(a.excluded_seen.end(), r.audit.excluded_seen.begin(), r.audit.excluded_seen.end());
    if (r.audit.psi_nonzero_primes && !a.psi_nonzero_primes) a.first_psi_nonzero_prime = r.audit.first_psi_nonzero_prime;
    a.psi_nonzero_primes += r.audit.psi_nonzero_primes;
    a.mobius_mismatches += r.audit.mobius_mismatches;
    a.mobius_levels_checked += r.audit.mobius_levels_checked;
    a.degree_violations += r.audit.degree_violations;
    r = {};
  }

  // Prefix sums give values at each checkpoint (closed at x).
  series.pi.assign(bins, std::vector<long long>(ncls, 0));
  series.ideals.assign(bins, 0);
  series.theta.assign(bins, {});
  series.psi.assign(bins, {});
  series.psi_twisted.assign(max_twist, std::vector<std::complex<double>>(bins));
  {
    std::vector<long long> run(ncls, 0);
    long long run_ideals = 0;
    ComplexSum run_theta;
    std::vector<ComplexSum> run_psi(max_twist);
    for (std::size_t i = 0; i < bins; ++i) {
      for (std::size_t c = 0; c < ncls; ++c) run[c] += pi[i * ncls + c];
      series.pi[i] = run;
      run_ideals += ideals[i];
      series.ideals[i] = run_ideals;
      run_theta.add(theta[i]);
      series.theta[i] = {run_theta.re.value() / denom_d, run_theta.im.value() / denom_d};
      for (std::size_t l = 0; l < max_twist; ++l) {
        run_psi[l].add(psi[l][i]);
        series.psi_twisted[l][i] = {run_psi[l].re.value() / denom_d, run_psi[l].im.value() / denom_d};
      }
      series.psi[i] = series.psi_twisted[0][i];
    }
  }

  // R, D and the running densities of {x : |C2| pi(x;C1) > |C1| pi(x;C2)}.
  auto track = integrate_positivity(std::move(events), series.x);
  series.log_density = std::move(track.log_density);
  series.natural_density = std::move(track.natural_density);
  series.R.resize(bins);
  series.D.resize(bins);
  const double scale = static_cast<double>(series.size_c1 * series.size_c2);
  for (std::size_t i = 0; i < bins; ++i) {
    series.R[i] = r_norm(static_cast<double>(series.x[i]));
    series.D[i] = static_cast<double>(track.value[i]) / scale / series.R[i];
  }
  return series;
}

/// Final (logarithmic, natural) density estimates of the positivity set.
inline std::pair<double, double> density_estimates(const BiasSeries& s) {
  if (s.x.empty()) return {0.0, 0.0};
  return {s.log_density.back(), s.natural_density.back()};
}

/// Result of comparing theta(x; t) with sum_l mu(l) psi(x^(1/l); t(.^l)).
struct MobiusReport {
  bool ok = false;
  std::size_t levels_required = 0;
  double max_relative_mismatch = 0;
  std::uint64_t exact_mismatches = 0;
  std::uint64_t exact_levels_checked = 0;
  /// theta(X)/sqrt(X) at the last checkpoint; tends to -<t, r_G> when t+ = 0.
  double theta_over_sqrt_x = 0;
};

/// Requires a series accumulated with max_twist >= floor(log2 X).
inline MobiusReport mobius_check(const BiasSeries& s, double rel_tol = 1e-6) {
  MobiusReport rep;
  if (s.x.empty()) return rep;
  std::size_t levels = 1;
  while ((std::uint64_t{1} << (levels + 1)) <= s.x.back()) ++levels;
  rep.levels_required = levels;
  if (s.psi_twisted.size() < levels) throw error("mobius_check: series lacks twisted psi up to level " + std::to_string(levels));
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    std::complex<double> rhs = 0;
    double scale = std::max(1.0, std::abs(s.theta[i]));
    for (std::size_t l = 1; l <= s.psi_twisted.size(); ++l) {
      rhs += static_cast<double>(detail::moebius(l)) * s.psi_twisted[l - 1][i];
      scale = std::max(scale, std::abs(s.psi_twisted[l - 1][i]));
    }
    rep.max_relative_mismatch = std::max(rep.max_relative_mismatch, std::abs(s.theta[i] - rhs) / scale);
  }
  rep.exact_mismatches = s.audit.mobius_mismatches;
  rep.exact_levels_checked = s.audit.mobius_levels_checked;
  rep.theta_over_sqrt_x = s.theta.back().real() / std::sqrt(static_cast<double>(s.x.back()));
  rep.ok = rep.exact_mismatches == 0 && rep.exact_levels_checked > 0 && rep.max_relative_mismatch <= rel_tol;
  return rep;
}

inline constexpr const char* series_csv_header = "x,pi_C1,pi_C2,theta_t,psi_t,R,D,logdens,natdens";

/// %.12g formatting, with "-0" normalized to "0".
inline std::string format_real(double v) {
  if (v == 0) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string series_csv(const BiasSeries& s) {
  std::ostringstream os;
  os << series_csv_header << '\n';
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    os << s.x[i] << ',' << s.pi[i][s.c1] << ',' << s.pi[i][s.c2] << ',' << format_real(s.theta[i].real()) << ','
       << format_real(s.psi[i].real()) << ',' << format_real(s.R[i]) << ',' << format_real(s.D[i]) << ','
       << format_real(s.log_density[i]) << ',' << format_real(s.natural_density[i]) << '\n';
  }
  return os.str();
}

/// Writes the CSV atomically (temporary file, then rename).
inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw error("cannot write " + tmp.string());
    out << text;
    if (!out) throw error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void emit_series(const BiasSeries& s, const std::filesystem::path& path) { write_text_file(path, series_csv(s)); }

/// (x, D) pairs read back from a series CSV.
inline std::vector<std::pair<std::string, std::string>> read_series_xd(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open series file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != series_csv_header) throw error("series file has an unexpected header");
  std::vector<std::pair<std::string, std::string>> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 9) throw error("series file: malformed row \"" + line + "\"");
    out.emplace_back(cols[0], cols[6]);
  }
  return out;
}

}  // namespace chebias
