#include "blocks.hpp"

#include <algorithm>
#include <stdexcept>

namespace ca {

Grading make_grading(const CourantSpec& s, const TablePtr& t)
{
    Grading g;
    g.A = s.grading.A;
    if (g.A.empty()) {
        g.A.assign(t->d, std::vector<int>(t->d, 0));
        for (int i = 0; i < t->d; ++i) g.A[i][i] = 1;
    }
    const int r = int(g.A.size());
    for (auto& G : t->gens) {
        auto it = s.grading.fam.find(G.fam);
        if (it == s.grading.fam.end()) g.gen.push_back(std::vector<int>(r, 0));
        else {
            if (int(it->second.size()) != r) throw std::runtime_error("grading: family vector has wrong length");
            g.gen.push_back(it->second);
        }
    }
    return g;
}

namespace {

struct Solver {
    std::vector<std::vector<Scalar>> Ainv;
    int d;
};

Solver solver_for(const Grading& g, int d)
{
    if (int(g.A.size()) != d)
        throw std::runtime_error("infinite block: grading rank " + std::to_string(g.A.size()) +
                                 " leaves lattice directions unbounded");
    std::vector<std::vector<Scalar>> m(d, std::vector<Scalar>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = g.A[i][j];
    Solver s;
    s.d = d;
    try {
        s.Ainv = d ? invert_matrix(m) : m;
    } catch (const std::exception&) {
        throw std::runtime_error("infinite block: grading matrix is singular");
    }
    return s;
}

} // namespace

Block make_block(const TablePtr& t, const Grading& g, int degree, const std::vector<int>& value)
{
    Block b;
    b.degree = degree;
    b.value = value;
    const int d = t->d, n = t->size();
    Solver sv = solver_for(g, d);
    std::vector<int> e(n, 0);
    std::vector<Key> out;
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == n) {
            if (rem) return;
            std::vector<int> rest = value;
            for (int j = 0; j < n; ++j)
                if (e[j])
                    for (int r = 0; r < d; ++r) rest[r] -= g.gen[j][r] * e[j];
            Weight w(d);
            for (int r = 0; r < d; ++r) {
                Scalar x;
                for (int c = 0; c < d; ++c) x += sv.Ainv[r][c] * Scalar(rest[c]);
                if (!x.is_const() || x.q().get_den() != 1) return;
                w[r] = int(x.q().get_num().get_si());
            }
            Key k = make_key(*t, w);
            for (int j = 0; j < n; ++j) k[d + j] = int16_t(e[j]);
            out.push_back(k);
            return;
        }
        int dg = t->gens[i].degree;
        int maxe = t->odd(i) ? 1 : (dg ? rem / dg : 0);
        for (int x = 0; x <= maxe && x * dg <= rem; ++x) {
            e[i] = x;
            rec(i + 1, rem - x * dg);
        }
        e[i] = 0;
    };
    if (d == 0 && !value.empty()) throw std::runtime_error("grading value on a point base");
    rec(0, degree);
    std::sort(out.begin(), out.end(), [d](const Key& a, const Key& c) {
        if (!std::equal(a.begin() + d, a.end(), c.begin() + d))
            return std::lexicographical_compare(a.begin() + d, a.end(), c.begin() + d, c.end());
        return std::lexicographical_compare(a.begin(), a.begin() + d, c.begin(), c.begin() + d);
    });
    b.keys = out;
    for (int i = 0; i < int(out.size()); ++i) b.index[out[i]] = i;
    return b;
}

SVec coords(const Block& b, const Element& e)
{
    SVec v;
    for (auto& [k, c] : e.terms) {
        auto it = b.index.find(k);
        if (it == b.index.end()) throw std::runtime_error("element leaves its block: " + key_str(*e.tab, k));
        v[it->second] = c;
    }
    return v;
}

Element from_coords(const TablePtr& t, const Block& b, const SVec& v)
{
    Element e(t);
    for (auto& [i, c] : v) e.add(b.keys[i], c);
    return e;
}

std::vector<SVec> matrix(const LinMap& f, const TablePtr& t, const Block& src, const Block& dst)
{
    std::vector<SVec> cols;
    cols.reserve(src.keys.size());
    for (auto& k : src.keys) {
        Element e(t);
        e.add(k, 1);
        cols.push_back(coords(dst, f(e)));
    }
    return cols;
}

std::vector<std::vector<int>> value_window(int rank, int radius)
{
    std::vector<std::vector<int>> out;
    std::vector<int> v(rank, -radius);
    if (rank == 0) return {{}};
    while (true) {
        out.push_back(v);
        int i = rank - 1;
        while (i >= 0 && v[i] == radius) v[i--] = -radius;
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

} // namespace ca
