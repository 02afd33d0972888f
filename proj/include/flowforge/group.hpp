#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "flowforge/errors.hpp"

namespace flowforge {

// Finite abelian group Z_{q1} x ... x Z_{qr}. Elements are encoded as a single
// mixed-radix integer with the first factor most significant, so comparing
// encodings compares residue tuples lexicographically. 0 is the identity.
using Element = std::uint32_t;

class GroupSpec {
 public:
  GroupSpec() : GroupSpec(std::vector<std::uint32_t>{3}) {}

  explicit GroupSpec(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw InvalidArgument("group needs at least one cyclic factor");
    std::uint64_t total = 1;
    for (auto q : orders_) {
      if (q < 2) throw InvalidArgument("cyclic factor order must be >= 2");
      total *= q;
      if (total > (1u << 24)) throw InvalidArgument("group too large");
    }
    order_ = static_cast<std::uint32_t>(total);
    weight_.assign(orders_.size(), 1);
    for (std::size_t i = orders_.size(); i-- > 1;) weight_[i - 1] = weight_[i] * orders_[i];
  }

  static GroupSpec z2() { return GroupSpec({2}); }
  static GroupSpec z3() { return GroupSpec({3}); }
  static GroupSpec z6() { return GroupSpec({6}); }
  static GroupSpec z2z2() { return GroupSpec({2, 2}); }
  static GroupSpec z3z3() { return GroupSpec({3, 3}); }

  // "z3", "z2z2", "z3z3", "z2", "z6"
  static GroupSpec parse(const std::string& name) {
    std::vector<std::uint32_t> orders;
    std::size_t i = 0;
    while (i < name.size()) {
      if (name[i] != 'z' && name[i] != 'Z') throw InvalidArgument("bad group name '" + name + "'");
      std::size_t j = i + 1;
      while (j < name.size() && name[j] >= '0' && name[j] <= '9') ++j;
      if (j == i + 1) throw InvalidArgument("bad group name '" + name + "'");
      orders.push_back(static_cast<std::uint32_t>(std::stoul(name.substr(i + 1, j - i - 1))));
      i = j;
    }
    return GroupSpec(std::move(orders));
  }

  std::string name() const {
    std::string s;
    for (auto q : orders_) s += "z" + std::to_string(q);
    return s;
  }

  const std::vector<std::uint32_t>& orders() const noexcept { return orders_; }
  std::size_t factors() const noexcept { return orders_.size(); }
  std::uint32_t order() const noexcept { return order_; }

  std::uint32_t component(Element a, std::size_t i) const { return (a / weight_[i]) % orders_[i]; }

  std::vector<std::uint32_t> components(Element a) const {
    std::vector<std::uint32_t> c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) c[i] = component(a, i);
    return c;
  }

  // Components are reduced modulo their factor orders (negative values allowed).
  Element make(const std::vector<long long>& comps) const {
    if (comps.size() != orders_.size()) throw InvalidArgument("wrong number of components for " + name());
    Element a = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const long long q = orders_[i];
      a += static_cast<Element>(((comps[i] % q) + q) % q) * weight_[i];
    }
    return a;
  }

  Element add(Element a, Element b) const {
    if (orders_.size() == 1) return (a + b) % order_;
    Element r = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) r += ((component(a, i) + component(b, i)) % orders_[i]) * weight_[i];
    return r;
  }

  Element neg(Element a) const {
    if (orders_.size() == 1) return (order_ - a) % order_;
    Element r = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) r += ((orders_[i] - component(a, i)) % orders_[i]) * weight_[i];
    return r;
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  // n * a for an integer n (may be negative).
  Element times(long long n, Element a) const {
    std::vector<long long> c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) c[i] = n * static_cast<long long>(component(a, i));
    return make(c);
  }

  bool contains(Element a) const noexcept { return a < order_; }

  bool operator==(const GroupSpec& o) const { return orders_ == o.orders_; }

 private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> weight_;
  std::uint32_t order_ = 3;
};

// Z3 values are canonical {0,1,2}; the paper's -1 is 2.
inline std::uint8_t z3(long long x) { return static_cast<std::uint8_t>(((x % 3) + 3) % 3); }

}  // namespace flowforge
