#pragma once
// Exact sparse elimination over Scalar.

#include "scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ca {

using SVec = std::map<int, Scalar>;

void axpy(SVec& y, const Scalar& a, const SVec& x);   // y += a x

// Incremental echelon span. Every stored pivot remembers how it was built
// from the inserted vectors, so reductions report coordinates.
class Span {
public:
    explicit Span(bool reverse_order = false) : rev_(reverse_order) {}

    // reduces v; returns residual, writes combination of inserted vectors
    SVec reduce(SVec v, SVec* combo = nullptr) const;
    // inserts v under a new label; returns true if it enlarged the span
    bool insert(const SVec& v);
    int rank() const { return int(piv_.size()); }
    int inserted() const { return count_; }

private:
    struct Pivot { SVec v; SVec combo; };
    bool rev_;
    int count_ = 0;
    std::map<int, Pivot> piv_;
    int lead(const SVec& v) const { return rev_ ? v.rbegin()->first : v.begin()->first; }
};

// columns are sparse images of source basis vectors
int rank(const std::vector<SVec>& cols, bool reverse_order = false);
std::vector<SVec> kernel(const std::vector<SVec>& cols);
std::optional<SVec> solve(const std::vector<SVec>& cols, const SVec& target);
// B * A for column representations: cols of A index rows of B
std::vector<SVec> compose(const std::vector<SVec>& B, const std::vector<SVec>& A);

} // namespace ca
