#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualcover/common.hpp"

namespace dualcover {

/* Permutation of {0..n-1}. Composition is in diagram order: (a * b) means
 * "apply a, then b", i.e. (a*b)[i] = b[a[i]]. This matches composing loops
 * in time order, so the monodromy of a concatenated path is the product of
 * the pieces' permutations in traversal order. */
class Perm {
  public:
    Perm() = default;
    explicit Perm(std::size_t n) : img_(n) {
        for (std::size_t i = 0; i < n; ++i) img_[i] = static_cast<int>(i);
    }
    explicit Perm(std::vector<int> img) : img_(std::move(img)) {}

    static Perm transposition(std::size_t n, int a, int b);

    std::size_t size() const { return img_.size(); }
    int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            r.img_[i] = b.img_[static_cast<std::size_t>(a.img_[i])];
        return r;
    }
    Perm inverse() const;

    bool is_identity() const;
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return !(*this == o); }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    bool is_transposition() const;
    /* the two moved points of a transposition */
    std::pair<int, int> moved_pair() const;
    bool is_transitive_with(const std::vector<Perm>& gens) const = delete;

    std::vector<std::vector<int>> cycles() const;  // nontrivial cycles
    std::string cycle_string() const;              // "(1 2)(3 4)" 1-indexed; "()" for id
    static Perm parse_cycles(const std::string& text, std::size_t n);

  private:
    std::vector<int> img_;
};

bool perms_transitive(const std::vector<Perm>& gens, std::size_t n);

}  // namespace dualcover
