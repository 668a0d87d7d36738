#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lh/errors.hpp"

namespace lh {

/// Ordered list of indeterminate names.  Fixed at construction; every MPoly
/// carries a pointer to its ring and operations require matching rings
/// (same object or equal name lists).
class Ring {
 public:
  explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  std::size_t size() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(std::size_t i) const { return vars_[i]; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const Ring& o) const { return vars_ == o.vars_; }

 private:
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) {
  return std::make_shared<const Ring>(std::move(vars));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* op) {
  if (!same_ring(a, b))
    throw RingMismatchError(std::string("ring mismatch in ") + op);
}

}  // namespace lh
