#include "csa/splitter.hpp"

#include <deque>
#include <random>

#include "csa/embed.hpp"
#include "csa/errors.hpp"
#include "csa/lattice.hpp"
#include "csa/order.hpp"

namespace csa {

BBound b_bound(const NumberField& K, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  const std::size_t d = K.degree();
  const int s = K.complex_places();
  Real disc = abs(to_real(K.discriminant()));
  Real root = d == 1 ? disc : d == 2 ? sqrt(disc) : pow(disc, Real(1) / Real(static_cast<long>(d)));
  Real b = root;
  if (s > 0) {
    const Real pi = 4 * atan(Real(1));
    b *= pow(2 / pi, Real(2 * s) / Real(static_cast<long>(d)));
  }
  Real radius = (d == 1 && s == 0) ? Real(0) : b * pow2(-static_cast<long>(precision_bits) + 8);
  return {b, radius};
}

namespace {

Element kbasis(const Algebra& A, std::size_t i) {
  std::vector<FieldElem> y(A.dim(), A.field().zero());
  y[i] = A.field().one();
  return A.from_kcoords(y);
}

Element combine(const std::vector<Element>& ys, const std::vector<long>& x, std::size_t N) {
  Element y(N);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const Rational c(x[i]);
    for (std::size_t k = 0; k < N; ++k)
      if (ys[i][k] != 0) y[k] += c * ys[i][k];
  }
  return y;
}

std::vector<double> sqrt_all(const std::vector<Real>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(sqrt(x).convert_to<double>());
  return out;
}

bool predicate(const Algebra& A, const FastRank& fr, Target target, const Element& y) {
  switch (target) {
    case Target::rank_one:
      return fr.is_rank_one(y);
    case Target::zero_divisor:
      return fr.is_zero_divisor(y);
    case Target::nilpotent:
      return fr.is_zero_divisor(y) && is_nilpotent(A, y);
  }
  return false;
}

class LevelSearch {
 public:
  LevelSearch(const Algebra& A, Target target, const SplitConfig& cfg, SplitStats& stats, std::mt19937_64& rng,
              const Deadline& deadline)
      : A_(A), target_(target), cfg_(cfg), stats_(stats), rng_(rng), deadline_(deadline), fr_(A),
        n_(A.require_degree()), d_(A.field().degree()), N_(A.qdim()) {}

  SearchResult run() {
    SearchResult out;
    LevelStats& lv = out.level;
    lv.n = n_;
    MaximalOrderLog log;
    Order order = maximal_order(A_, cfg_.factor, &log);
    order.basis = reduce_lattice_basis(order.basis);
    lv.initial_discriminant = log.initial_discriminant;
    lv.discriminant = order.discriminant;
    lv.enlargements = log.enlargements;

    for (unsigned bits = cfg_.precision_bits;; bits *= 2) {
      PrecisionGuard guard(bits);
      LatticeEmbedding emb;
      ReducedBasis rb;
      try {
        std::size_t samples = 0;
        emb = embed_order(A_, order.basis, bits, rng_, cfg_.sample_budget, &samples);
        lv.samples += samples;
        rb = lll_reduce(emb.vectors, cfg_.delta, bits);
      } catch (const PrecisionCeiling&) {
        if (2 * bits > cfg_.max_precision_bits) throw;
        continue;
      } catch (const RepresentationFailure& e) {
        if (2 * bits > cfg_.max_precision_bits) throw PrecisionCeiling(e.what());
        continue;
      }
      ++stats_.certificates;
      lv.precision_bits = bits;
      lv.rounding_bits = rb.rounding_bits;
      lv.ratio = rb.ratio.convert_to<double>();
      lv.c_m = rb.c_m.convert_to<double>();
      lv.certified = rb.certified;
      bits_ = bits;
      emb_ = &emb;
      rb_ = &rb;

      ys_.clear();
      for (std::size_t i = 0; i < rb.transform.size(); ++i) {
        Element y(N_);
        for (std::size_t j = 0; j < rb.transform[i].size(); ++j) {
          if (rb.transform[i][j] == 0) continue;
          const Rational c(rb.transform[i][j]);
          for (std::size_t k = 0; k < N_; ++k) y[k] += c * order.basis(j, k);
        }
        ys_.push_back(std::move(y));
      }
      if (!cfg_.force_enumeration && scan_basis(out)) return out;
      enumerate(out);
      return out;
    }
  }

 private:
  // Squared norms per place are all certified below n: such an element must
  // be a zero divisor.
  void check_short(const std::vector<Real>& phi, const Element& y) {
    const Real slack = 1 + pow2(-static_cast<long>(bits_ / 4));
    for (const auto& q : emb_->place_norms2(phi))
      if (!(q * slack < Real(static_cast<long>(n_)))) return;
    ++stats_.short_checked;
    if (!fr_.is_zero_divisor(y)) ++stats_.short_violations;
  }

  bool scan_basis(SearchResult& out) {
    std::optional<std::size_t> best;
    std::size_t best_rank = n_;
    for (std::size_t i = 0; i < ys_.size(); ++i) {
      check_short(rb_->vectors[i], ys_[i]);
      if (target_ == Target::rank_one) {
        const std::size_t r = fr_.rank(ys_[i]);
        if (r < best_rank) {
          best_rank = r;
          best = i;
        }
      } else if (predicate(A_, fr_, target_, ys_[i])) {
        best = i;
        break;
      }
    }
    if (!best) return false;
    out.y = ys_[*best];
    out.level.found_in = "reduced-basis";
    out.level.found_rank = target_ == Target::rank_one ? best_rank : fr_.rank(out.y);
    out.level.norms = sqrt_all(emb_->place_norms2(rb_->vectors[*best]));
    if (d_ == 1)
      out.level.norm_below_n = rb_->lengths[*best] * rb_->lengths[*best] * (1 + pow2(-static_cast<long>(bits_ / 4))) <
                               Real(static_cast<long>(n_ * n_));
    return true;
  }

  std::vector<Real> phi_of(const std::vector<long>& x) const {
    std::vector<Real> v(rb_->vectors[0].size(), Real(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      const Real c(x[i]);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * rb_->vectors[i][k];
    }
    return v;
  }

  void enumerate(SearchResult& out) {
    LevelStats& lv = out.level;
    const NumberField& K = A_.field();
    const std::size_t m = ys_.size();
    const std::size_t places = static_cast<std::size_t>(K.places());
    const BBound b = b_bound(K, bits_);
    const Real L = (b.value + b.radius) * Real(static_cast<long>(n_)) * sqrt(Real(static_cast<long>(places)));
    std::vector<long> box = coefficient_box(*rb_, L);
    lv.box = box;
    bool clamped = false;
    for (long beta : box) clamped = clamped || beta >= (1L << 40);

    std::vector<std::vector<double>> vd(m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& x : rb_->vectors[i]) vd[i].push_back(x.convert_to<double>());
    auto gram_of = [&](std::size_t lo, std::size_t hi) {
      std::vector<std::vector<double>> G(m, std::vector<double>(m, 0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          double s = 0;
          for (std::size_t k = lo; k < hi; ++k) s += vd[i][k] * vd[j][k];
          G[i][j] = G[j][i] = s;
        }
      return G;
    };
    const auto gram = gram_of(0, vd[0].size());
    std::vector<std::vector<std::vector<double>>> place_gram;
    for (std::size_t p = 0, pos = 0; p < places; ++p) {
      const std::size_t len = emb_->places[p].real ? n_ * n_ : 2 * n_ * n_;
      place_gram.push_back(gram_of(pos, pos + len));
      pos += len;
    }
    const double Ld = L.convert_to<double>();
    ShellEnumerator en(box, gram, Ld * Ld * (1 + 1e-6));

    std::vector<modp::Vec> ymod;
    bool modular = fr_.usable();
    for (const auto& y : ys_) {
      auto r = modular ? fr_.reduce(y) : std::nullopt;
      if (!r) {
        modular = false;
        break;
      }
      ymod.push_back(std::move(*r));
    }
    const modp::u64 p = fr_.prime();
    const double nd = static_cast<double>(n_);
    const bool over_q = d_ == 1;
    const Real n_sq(static_cast<long>(n_ * n_));
    const Real slack = 1 + pow2(-static_cast<long>(bits_ / 4));

    Visitor visit = [&](const std::vector<long>& x, double len2) -> bool {
      if (len2 < nd * static_cast<double>(places) * (1 + 1e-6)) {
        bool small = true;
        for (const auto& G : place_gram) {
          double q = 0;
          for (std::size_t i = 0; i < m && small; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) q += G[i][j] * static_cast<double>(x[i] * x[j]);
          }
          small = small && q < nd * (1 + 1e-6);
        }
        if (small) check_short(phi_of(x), combine(ys_, x, N_));
      }
      if (modular) {
        modp::Vec v(N_, 0);
        for (std::size_t i = 0; i < m; ++i) {
          if (x[i] == 0) continue;
          const modp::u64 c = x[i] > 0 ? static_cast<modp::u64>(x[i]) % p : p - static_cast<modp::u64>(-x[i]) % p;
          for (std::size_t k = 0; k < N_; ++k)
            if (ymod[i][k]) v[k] = modp::add(v[k], modp::mul(c, ymod[i][k], p), p);
        }
        const std::size_t q = fr_.qrank_mod(v);
        if (target_ == Target::rank_one ? q > n_ * d_ : q == N_) return false;
      }
      const Element y = combine(ys_, x, N_);
      if (!predicate(A_, fr_, target_, y)) return false;
      if (target_ == Target::rank_one && over_q) {
        Real s = 0;
        for (const auto& t : phi_of(x)) s += t * t;
        if (!(s * slack < n_sq)) return false;
      }
      return true;
    };

    EnumerationStats es;
    auto hit = en.shells(cfg_.shell_cap, visit, es, cfg_.node_budget, deadline_);
    if (!hit && cfg_.ball_phase) hit = en.beyond(cfg_.shell_cap, visit, es, cfg_.node_budget, deadline_);
    lv.visited = es.visited;
    lv.nodes = es.nodes;
    if (!hit) {
      const bool exhaustive = !clamped && (cfg_.ball_phase || cfg_.shell_cap >= en.max_shell());
      if (exhaustive && target_ != Target::nilpotent)
        throw NotSplit("no element of norm at most L in the maximal order is a zero divisor of the required rank");
      throw BudgetExhausted("no witness within max-norm " + std::to_string(cfg_.shell_cap));
    }
    out.y = combine(ys_, *hit, N_);
    lv.found_in = es.beyond_cap ? "ball" : "shell";
    lv.shell = es.shell;
    lv.found_rank = fr_.rank(out.y);
    const auto phi = phi_of(*hit);
    lv.norms = sqrt_all(emb_->place_norms2(phi));
    if (over_q) {
      Real s = 0;
      for (const auto& t : phi) s += t * t;
      lv.norm_below_n = s * slack < n_sq;
    }
  }

  const Algebra& A_;
  Target target_;
  const SplitConfig& cfg_;
  SplitStats& stats_;
  std::mt19937_64& rng_;
  const Deadline& deadline_;
  FastRank fr_;
  std::size_t n_, d_, N_;
  unsigned bits_ = 0;
  const LatticeEmbedding* emb_ = nullptr;
  const ReducedBasis* rb_ = nullptr;
  std::vector<Element> ys_;
};

SearchResult search_with(const Algebra& A, Target target, const SplitConfig& cfg, SplitStats& stats,
                         std::mt19937_64& rng, const Deadline& deadline) {
  return LevelSearch(A, target, cfg, stats, rng, deadline).run();
}

}  // namespace

SearchResult search(const Algebra& A, Target target, const SplitConfig& config, SplitStats& stats) {
  std::mt19937_64 rng(config.seed);
  const Deadline deadline = Deadline::in_seconds(config.budget_seconds);
  SearchResult r = search_with(A, target, config, stats, rng, deadline);
  stats.levels.push_back(r.level);
  return r;
}

SplitReport split(const Algebra& A, const SplitConfig& config) {
  SplitReport rep;
  A.require_degree();
  std::mt19937_64 rng(config.seed);
  const Deadline deadline = Deadline::in_seconds(config.budget_seconds);
  std::deque<Corner> chain;
  const Algebra* cur = &A;
  Element C;
  for (;;) {
    const std::size_t k = cur->require_degree();
    if (k == 1) {
      C = cur->one();
      break;
    }
    SearchResult r = search_with(*cur, Target::rank_one, config, rep.stats, rng, deadline);
    rep.stats.levels.push_back(r.level);
    rep.witness.norms = r.level.norms;
    if (r.level.found_rank == 1) {
      C = r.y;
      break;
    }
    const Element e = right_identity_of_left_ideal(*cur, r.y);
    const Element f = sub(cur->one(), e);
    const std::size_t re = r.level.found_rank, rf = k - re;
    if (rf == 1) {
      rep.witness.idempotents.push_back(f);
      C = f;
      break;
    }
    const Element& g = re <= rf ? e : f;
    rep.witness.idempotents.push_back(g);
    chain.push_back(corner_algebra(*cur, g));
    cur = &chain.back().algebra;
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) C = it->lift(C);
  if (is_zero(C) || rank_of_element(A, C) != 1) throw StructuralFailure("lifted witness is not of rank one");
  rep.witness.C = C;
  rep.iso = isomorphism_from_rank_one(A, C);
  const VerifyResult v = verify(A, C, rep.iso.images);
  if (!v.ok) throw StructuralFailure("isomorphism failed verification: " + v.check + " " + v.detail);
  return rep;
}

IsoMap isomorphism_from_rank_one(const Algebra& A, const Element& C) {
  const NumberField& K = A.field();
  const std::size_t n = A.require_degree(), m = A.dim();
  IsoMap iso;
  iso.n = n;
  std::vector<Element> prods;
  for (std::size_t i = 0; i < m; ++i) prods.push_back(A.mul(kbasis(A, i), C));
  for (auto idx : k_independent(A, prods)) iso.ideal_basis.push_back(prods[idx]);
  if (iso.ideal_basis.size() != n)
    throw StructuralFailure("dim_K(A C) = " + std::to_string(iso.ideal_basis.size()) + ", expected " +
                            std::to_string(n));
  std::vector<std::vector<FieldElem>> cols;
  for (const auto& w : iso.ideal_basis) cols.push_back(A.kcoords(w));
  const KMatrix W = kcolumns(K, cols, m);

  for (std::size_t i = 0; i < m; ++i) {
    const Element ai = kbasis(A, i);
    KMatrix M(K, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      auto c = ksolve(K, W, A.kcoords(A.mul(ai, iso.ideal_basis[j])));
      if (!c) throw StructuralFailure("A C is not closed under left multiplication");
      for (std::size_t k = 0; k < n; ++k) M(k, j) = (*c)[k];
    }
    iso.images.push_back(std::move(M));
  }

  KMatrix big(K, n * n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < n * n; ++t) big(t, i) = iso.images[i].a[t];
  for (std::size_t t = 0; t < n * n; ++t) {
    std::vector<FieldElem> e(n * n, K.zero());
    e[t] = K.one();
    auto s = ksolve(K, big, e);
    if (!s) throw StructuralFailure("left action on A C is not surjective");
    iso.inverse.push_back(A.from_kcoords(*s));
  }
  return iso;
}

VerifyResult verify(const Algebra& A, const Element& C, const std::vector<KMatrix>& images) {
  const NumberField& K = A.field();
  const std::size_t m = A.dim();
  auto fail = [](std::string check, std::string detail) { return VerifyResult{false, std::move(check), std::move(detail)}; };
  const std::size_t n = A.require_degree();
  if (C.size() != A.qdim()) return fail("shape", "witness has the wrong number of coordinates");
  if (images.size() != m) return fail("shape", "expected " + std::to_string(m) + " images");
  for (const auto& M : images)
    if (M.rows != n || M.cols != n || M.a.size() != n * n) return fail("shape", "images must be n x n");

  if (is_zero(C)) return fail("rank-one", "witness is zero");
  const std::size_t q = left_ideal_qdim(A, C);
  if (q != n * K.degree()) return fail("rank-one", "dim_K(A C) = " + std::to_string(q / K.degree()));

  const auto one = A.kcoords(A.one());
  KMatrix unit(K, n, n);
  for (std::size_t i = 0; i < m; ++i)
    if (!K.is_zero(one[i])) unit = kadd(K, unit, kscale(K, one[i], images[i]));
  if (unit != kidentity(K, n)) return fail("unital", "image of 1 is not the identity");

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      KMatrix rhs(K, n, n);
      for (std::size_t k = 0; k < m; ++k)
        if (!K.is_zero(A.gamma(i, j, k))) rhs = kadd(K, rhs, kscale(K, A.gamma(i, j, k), images[k]));
      if (kmul(K, images[i], images[j]) != rhs)
        return fail("multiplicative", "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  KMatrix big(K, n * n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < n * n; ++t) big(t, i) = images[i].a[t];
  if (krank(K, big) != m) return fail("bijective", "images are linearly dependent");
  return {};
}

}  // namespace csa
