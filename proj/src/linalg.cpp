#include "linalg.hpp"

namespace ca {

void axpy(SVec& y, const Scalar& a, const SVec& x)
{
    if (a.is_zero()) return;
    for (auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) y.emplace(i, a * v);
        else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

SVec Span::reduce(SVec v, SVec* combo) const
{
    if (combo) combo->clear();
    auto step = [&](const std::pair<const int, Pivot>& p) {
        auto e = v.find(p.first);
        if (e == v.end()) return;
        Scalar f = -e->second;
        axpy(v, f, p.second.v);
        if (combo) axpy(*combo, -f, p.second.combo);
    };
    // pivots only touch entries on their own side of the lead
    if (rev_) for (auto p = piv_.rbegin(); p != piv_.rend(); ++p) step(*p);
    else for (auto& p : piv_) step(p);
    return v;
}

bool Span::insert(const SVec& v)
{
    int label = count_++;
    SVec combo;
    SVec r = reduce(v, &combo);
    if (r.empty()) return false;
    // r = v - combo.(inserted); store normalized pivot with its recipe
    for (auto& [i, x] : combo) x = -x;
    combo[label] = Scalar(1);
    int l = lead(r);
    Scalar inv = Scalar(1) / r.at(l);
    for (auto& [i, x] : r) x *= inv;
    for (auto& [i, x] : combo) x *= inv;
    piv_.emplace(l, Pivot{std::move(r), std::move(combo)});
    return true;
}

int rank(const std::vector<SVec>& cols, bool reverse_order)
{
    Span s(reverse_order);
    for (auto& c : cols) s.insert(c);
    return s.rank();
}

std::vector<SVec> kernel(const std::vector<SVec>& cols)
{
    std::vector<SVec> out;
    Span s;
    for (size_t j = 0; j < cols.size(); ++j) {
        SVec combo;
        SVec r = s.reduce(cols[j], &combo);
        s.insert(cols[j]);
        if (r.empty()) {
            // cols[j] = sum combo[l] cols[label l]; labels equal column indices
            SVec k;
            for (auto& [l, x] : combo) k[l] = -x;
            k[int(j)] = Scalar(1);
            out.push_back(std::move(k));
        }
    }
    return out;
}

std::optional<SVec> solve(const std::vector<SVec>& cols, const SVec& target)
{
    Span s;
    for (auto& c : cols) s.insert(c);
    SVec combo;
    SVec r = s.reduce(target, &combo);
    if (!r.empty()) return std::nullopt;
    return combo;
}

std::vector<SVec> compose(const std::vector<SVec>& B, const std::vector<SVec>& A)
{
    std::vector<SVec> out(A.size());
    for (size_t j = 0; j < A.size(); ++j)
        for (auto& [i, x] : A[j]) axpy(out[j], x, B[i]);
    return out;
}

} // namespace ca
