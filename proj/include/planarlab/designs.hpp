#ifndef PLANARLAB_DESIGNS_HPP
#define PLANARLAB_DESIGNS_HPP

// Relative difference sets from planar functions.
//
// Ambient group: GF(q) x GF(q) with (u1,v1)(u2,v2) = (u1+u2, v1+v2+u1*u2).
// The inverse of (u,v) is (u, v+u^2), so for graph points
//   (c+b, f(c+b)) * (c, f(c))^-1 = (c+b, f(c+b)) * (c, f(c) + c^2)
//                                = (b, f(c+b) + f(c) + b*c).
// Hence the graph D = {(c, f(c))} is a (q, q, q, 1) difference set relative
// to {0} x GF(q) exactly when f is planar.

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "parallel.hpp"
#include "planarity.hpp"

namespace planarlab {

struct GroupElem {
  FieldElem u;
  FieldElem v;
  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

class TwistedGroup {
 public:
  explicit TwistedGroup(Field f) : field_(std::move(f)) {}

  const Field& field() const noexcept { return field_; }
  std::uint64_t order() const noexcept { return std::uint64_t{field_.order()} * field_.order(); }

  static constexpr GroupElem identity() noexcept { return {}; }

  GroupElem compose(GroupElem g, GroupElem h) const noexcept {
    return {Field::add(g.u, h.u), Field::add(Field::add(g.v, h.v), field_.mul(g.u, h.u))};
  }

  GroupElem inverse(GroupElem g) const noexcept { return {g.u, Field::add(g.v, field_.square(g.u))}; }

  // Dense index u*q + v.
  std::uint64_t index(GroupElem g) const noexcept { return std::uint64_t{g.u.bits} * field_.order() + g.v.bits; }

 private:
  Field field_;
};

inline std::vector<GroupElem> build_rds(const Field& f, const FunctionTable& table) {
  detail::require_table(f, table);
  std::vector<GroupElem> d;
  d.reserve(table.size());
  for (std::uint32_t c = 0; c < f.order(); ++c) d.push_back({FieldElem{c}, table[c]});
  return d;
}

struct RdsCertificate {
  std::uint64_t q = 0;
  // Occurrences of every element indexed u*q + v. Entries with u = 0 are the
  // forbidden subgroup.
  std::vector<std::uint32_t> tally;
  std::uint64_t outside_missing = 0;    // outside elements hit 0 times
  std::uint64_t outside_repeated = 0;   // outside elements hit >= 2 times
  std::uint64_t forbidden_hits = 0;     // total hits on forbidden non-identity elements
  std::uint64_t total = 0;              // q(q-1) for a well-formed set
  bool valid = false;

  std::uint32_t count(GroupElem g) const { return tally[std::uint64_t{g.u.bits} * q + g.v.bits]; }
};

inline RdsCertificate verify_rds(const Field& f, const std::vector<GroupElem>& d, unsigned workers = 1) {
  const std::uint32_t q = f.order();
  if (d.size() != q) throw precondition_error("difference set candidate must have q elements");
  if (q > (1u << 12)) throw capacity_error("difference census limited to q <= 4096");
  for (const auto& g : d)
    if (!f.contains(g.u) || !f.contains(g.v)) throw precondition_error("group element outside GF(q) x GF(q)");
  const TwistedGroup group(f);
  RdsCertificate cert;
  cert.q = q;
  std::vector<std::atomic<std::uint32_t>> tally(std::uint64_t{q} * q);
  parallel_for(d.size(), workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < d.size(); ++j)
      if (i != j) tally[group.index(group.compose(d[i], group.inverse(d[j])))].fetch_add(1, std::memory_order_relaxed);
  });
  cert.tally.resize(tally.size());
  for (std::size_t k = 0; k < tally.size(); ++k) cert.tally[k] = tally[k].load(std::memory_order_relaxed);
  for (std::uint32_t u = 0; u < q; ++u)
    for (std::uint32_t v = 0; v < q; ++v) {
      const std::uint32_t n = cert.tally[std::uint64_t{u} * q + v];
      cert.total += n;
      if (u == 0) {
        if (v != 0) cert.forbidden_hits += n;
      } else if (n == 0) {
        ++cert.outside_missing;
      } else if (n > 1) {
        ++cert.outside_repeated;
      }
    }
  cert.valid = cert.outside_missing == 0 && cert.outside_repeated == 0 && cert.forbidden_hits == 0;
  return cert;
}

}  // namespace planarlab

#endif  // PLANARLAB_DESIGNS_HPP
