#include "spherik/hilbert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace spherik {

namespace {

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

// Calls fn(n) for every integer point n of kΔ (q coordinates).
void for_each_lattice_point(const Polytope& polytope, long k,
                            const std::function<void(const Vector&)>& fn) {
  const std::size_t r = polytope.dim();
  std::vector<Integer> lo(r), hi(r);
  for (std::size_t i = 0; i < r; ++i) {
    Rational mn = polytope.vertices()[0][i], mx = mn;
    for (const auto& v : polytope.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(k * mn);
    hi[i] = floor_of(k * mx);
  }
  Vector n(r);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      for (const auto& h : polytope.halfspaces()) {
        if (dot(h.normal, n) > k * h.bound) return;
      }
      fn(n);
      return;
    }
    for (Integer x = lo[i]; x <= hi[i]; ++x) {
      n[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

// Weyl dimension of the representation with highest weight λ (ambient).
Integer weyl_dimension(const NormalizedModel& model, const Vector& lambda) {
  Rational dim = 1;
  for (std::size_t i = 0; i < model.positive_roots.size(); ++i) {
    const Vector ga = model.gram * model.positive_roots[i];
    dim *= (dot(ga, lambda) + model.root_on_varpi[i]) / model.root_on_varpi[i];
  }
  if (dim.get_den() != 1) throw std::logic_error("non-integral Weyl dimension");
  return dim.get_num();
}

Integer lcm_of_denominators(const PLFunction& f) {
  Integer l = 1;
  auto absorb = [&](const Rational& x) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t()); };
  for (const auto& p : f.pieces) {
    absorb(p.c);
    for (const auto& x : p.v) absorb(x);
  }
  return l;
}

HilbertSample sample(const NormalizedModel& model, const PLFunction& f, long k) {
  HilbertSample s;
  s.k = k;
  s.d = 0;
  s.w = 0;
  const Vector kchi = Rational(k) * model.chi;
  for_each_lattice_point(model.polytope, k, [&](const Vector& n) {
    const Integer dim = model.is_toric() ? Integer(1)
                                         : weyl_dimension(model, kchi + model.lattice_basis * n);
    Rational kf = f.pieces[0].c * k - dot(f.pieces[0].v, n);
    for (std::size_t j = 1; j < f.pieces.size(); ++j) {
      kf = std::max(kf, Rational(f.pieces[j].c * k - dot(f.pieces[j].v, n)));
    }
    s.d += dim;
    s.w -= ceil_of(kf) * dim;
  });
  s.ratio = Rational(Rational(s.w) / (Rational(k) * Rational(s.d))).get_d();
  return s;
}

}  // namespace

Integer hilbert_dimension(const NormalizedModel& model, long k) {
  return sample(model, constant_function(model.rank, 0), k).d;
}

HilbertFit hilbert_series_oracle(const NormalizedModel& model, const PLFunction& f,
                                 const HilbertOptions& options) {
  check_slopes(model, f);
  HilbertFit fit;
  fit.k_max = options.k_max;
  const Integer step = lcm_of_denominators(f);
  if (!step.fits_slong_p() || step.get_si() * 4 > options.k_max) {
    throw std::invalid_argument("k_max = " + std::to_string(options.k_max) +
                                " leaves fewer than 4 samples for denominators " + step.get_str());
  }
  fit.step = step.get_si();

  std::vector<long> ks;
  for (long k = fit.step; k <= options.k_max; k += fit.step) ks.push_back(k);
  double estimate = 0;
  const double vol = model.polytope.volume().get_d();
  for (long k : ks) estimate += (vol + 1) * std::pow(static_cast<double>(k) + 1, model.rank);
  if (estimate > options.max_points) {
    throw std::invalid_argument("Hilbert oracle budget exceeded: about " +
                                std::to_string(static_cast<long long>(estimate)) +
                                " lattice points for k_max = " + std::to_string(options.k_max));
  }

  fit.samples.resize(ks.size());
  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, ks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < ks.size(); i += threads) fit.samples[i] = sample(model, f, ks[i]);
    });
  }
  for (auto& th : pool) th.join();

  const std::size_t n = fit.samples.size();
  fit.terms = std::min<std::size_t>(4, n - 1);
  Eigen::MatrixXd a(n, fit.terms);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / static_cast<double>(fit.samples[i].k);
    double p = 1;
    for (std::size_t j = 0; j < fit.terms; ++j) {
      a(i, j) = p;
      p *= inv;
    }
    y(i) = fit.samples[i].ratio;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  fit.F0 = c(0);
  fit.F1 = -c(1);
  fit.residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

}  // namespace spherik
