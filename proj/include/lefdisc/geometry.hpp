#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lefdisc/lefschetz.hpp"
#include "lefdisc/linear_form.hpp"

namespace lefdisc {

struct Stratum {
  int k = 0;
  int dim = 0;  // dimension of the locus of points over which fibers have dimension >= k
};

// Integer data of an extremal contraction phi: X -> Y restricted to one
// component S of the exceptional locus (S = X for fiber type contractions).
struct ContractionRecord {
  int n = 0;
  int dim_S = 0;
  int dim_phi_S = 0;
  std::optional<int> length;          // l_S(R); 0 for crepant rays
  std::optional<LinearForm> ray;      // pairing of the ray's curve class with H^2
  std::optional<std::vector<Stratum>> strata;

  void check() const {
    if (n < 1) throw std::invalid_argument("contraction record: n must be at least 1");
    if (dim_phi_S < 0 || dim_phi_S > dim_S || dim_S > n)
      throw std::invalid_argument("contraction record: need 0 <= dim phi(S) <= dim S <= n");
    if (length && *length < 0) throw std::invalid_argument("contraction record: length must be nonnegative");
    if (strata)
      for (const auto& s : *strata)
        if (s.dim > n || s.dim < 0 || s.k < 0) throw std::invalid_argument("contraction record: stratum out of range");
  }
};

struct PredictedSupport {
  int k = 0;
  int min_multiplicity = 0;
  friend bool operator==(const PredictedSupport&, const PredictedSupport&) = default;
};

// If 2 dim S - dim phi(S) >= n + m with m >= 1, the ray divides delta_k,
// k = 2 dim S - n, with multiplicity at least m.
inline std::optional<PredictedSupport> predicted_support(const ContractionRecord& rec) {
  rec.check();
  const int m = 2 * rec.dim_S - rec.dim_phi_S - rec.n;
  if (m < 1) return std::nullopt;
  return PredictedSupport{2 * rec.dim_S - rec.n, m};
}

// Fiber-locus inequality 2 dim S - dim phi(S) >= n + l_S(R) - 1.
inline bool fiber_locus_check(const ContractionRecord& rec) {
  rec.check();
  if (!rec.length) throw std::invalid_argument("fiber_locus_check: length is required");
  return 2 * rec.dim_S - rec.dim_phi_S >= rec.n + *rec.length - 1;
}

// m(R) >= l(R) - 1.
inline bool length_bound(const ContractionRecord& rec, int observed_multiplicity) {
  rec.check();
  if (!rec.length) throw std::invalid_argument("length_bound: length is required");
  return observed_multiplicity >= *rec.length - 1;
}

struct StratumVerdict {
  int k = 0;
  int dim = 0;
  int bound = 0;  // n - 2k
  bool ok = true;
};

inline std::vector<StratumVerdict> strata_check(const ContractionRecord& rec) {
  rec.check();
  if (!rec.strata) throw std::invalid_argument("strata_check: strata are required");
  std::vector<StratumVerdict> out;
  for (const auto& s : *rec.strata) {
    int bound = rec.n - 2 * s.k;
    out.push_back({s.k, s.dim, bound, s.dim <= bound});
  }
  return out;
}

struct CrossCheck {
  std::optional<PredictedSupport> predicted;
  std::optional<unsigned> observed;  // multiplicity at the predicted level
  RayForm observed_support;          // full support of the ray, for information
  bool ok = true;
};

inline CrossCheck cross_check(const std::vector<Discriminant>& discs, const ContractionRecord& rec) {
  rec.check();
  if (!rec.ray) throw std::invalid_argument("cross_check: ray is required");
  CrossCheck out;
  out.predicted = predicted_support(rec);
  out.observed_support = is_l_supported(discs, *rec.ray);
  if (out.predicted) {
    const Discriminant* level = nullptr;
    for (const auto& d : discs)
      if (d.k == out.predicted->k) level = &d;
    if (!level) throw std::invalid_argument("cross_check: predicted level is not among the discriminants");
    Multiplicity m = linear_multiplicity(level->delta, rec.ray->primitive());
    if (m.is_infinite()) {
      out.ok = true;
    } else {
      out.observed = m.value();
      out.ok = static_cast<int>(m.value()) >= out.predicted->min_multiplicity;
    }
  }
  return out;
}

inline CrossCheck cross_check(const CohomologyRing& ring, const ContractionRecord& rec) {
  if (rec.n != ring.complex_dim())
    throw std::invalid_argument("cross_check: record dimension " + std::to_string(rec.n) + " differs from ring dimension " +
                                std::to_string(ring.complex_dim()));
  if (rec.ray && rec.ray->size() != ring.picard_rank())
    throw std::invalid_argument("cross_check: ray has wrong number of coefficients");
  return cross_check(full_discriminant(ring), rec);
}

}  // namespace lefdisc
