#pragma once
// Lie algebra cohomology with coefficients in exterior powers of the
// adjoint module, from dense rational matrices. Independent of the engine.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace oracle {

// dense Lie algebra cohomology H^k(g; Lambda^l g) with the adjoint action,
// straight from the alternating-sum formula
struct CEOracle {
    int n;
    std::vector<std::vector<std::vector<mpq_class>>> f;   // [i][j][k]

    using Ext = std::map<unsigned, mpq_class>;   // bitmask basis of Lambda g

    static int popc(unsigned m) { return __builtin_popcount(m); }

    // e_k wedge e_S, with e_k moved into sorted position
    static std::pair<int, unsigned> insert(unsigned S, int k)
    {
        if (S >> k & 1u) return {0, 0};
        int below = popc(S & ((1u << k) - 1));
        return {below % 2 ? -1 : 1, S | 1u << k};
    }

    // x_a acting on e_S as a derivation
    Ext act(int a, unsigned S) const
    {
        Ext out;
        int pos = 0;
        for (int s = 0; s < n; ++s) {
            if (!(S >> s & 1u)) continue;
            unsigned rest = S & ~(1u << s);
            // e_S = (-1)^pos e_s wedge e_rest
            for (int c = 0; c < n; ++c) {
                if (f[a][s][c] == 0) continue;
                auto [sg, T] = insert(rest, c);
                if (sg) out[T] += mpq_class((pos % 2 ? -1 : 1) * sg) * f[a][s][c];
            }
            ++pos;
        }
        return out;
    }

    static std::vector<unsigned> subsets(int n, int k)
    {
        std::vector<unsigned> v;
        for (unsigned m = 0; m < (1u << n); ++m)
            if (popc(m) == k) v.push_back(m);
        return v;
    }

    static int rank(std::vector<std::vector<mpq_class>> A)
    {
        int r = 0, rows = int(A.size()), cols = rows ? int(A[0].size()) : 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (A[i][c] != 0) { p = i; break; }
            if (p < 0) continue;
            std::swap(A[p], A[r]);
            for (int i = 0; i < rows; ++i) {
                if (i == r || A[i][c] == 0) continue;
                mpq_class q = A[i][c] / A[r][c];
                for (int j = c; j < cols; ++j) A[i][j] -= q * A[r][j];
            }
            ++r;
        }
        return r;
    }

    // matrix of d: C^k -> C^{k+1}, rows (tuple, S) of degree k+1
    int rank_d(int k, int l) const
    {
        auto src = subsets(n, k), dst = subsets(n, k + 1), mods = subsets(n, l);
        if (src.empty() || dst.empty()) return 0;
        std::map<std::pair<unsigned, unsigned>, int> row;
        for (auto t : dst)
            for (auto s : mods) row[{t, s}] = int(row.size());
        std::vector<std::vector<mpq_class>> A(row.size(), std::vector<mpq_class>(src.size() * mods.size()));
        int col = 0;
        for (auto T : src)
            for (auto S : mods) {
                for (auto U : dst) {
                    std::vector<int> xs;
                    for (int i = 0; i < n; ++i)
                        if (U >> i & 1u) xs.push_back(i);
                    Ext val;
                    for (int i = 0; i <= k; ++i) {
                        if ((U & ~(1u << xs[i])) != T) continue;
                        for (auto& [m, c] : act(xs[i], S)) val[m] += mpq_class(i % 2 ? -1 : 1) * c;
                    }
                    for (int i = 0; i <= k; ++i)
                        for (int j = i + 1; j <= k; ++j) {
                            unsigned rest = U & ~(1u << xs[i]) & ~(1u << xs[j]);
                            for (int c = 0; c < n; ++c) {
                                if (f[xs[i]][xs[j]][c] == 0) continue;
                                auto [sg, V] = insert(rest, c);
                                if (!sg || V != T) continue;
                                val[S] += mpq_class(((i + j) % 2 ? -1 : 1) * sg) * f[xs[i]][xs[j]][c];
                            }
                        }
                    for (auto& [m, c] : val)
                        if (c != 0) A[row.at({U, m})][col] = c;
                }
                ++col;
            }
        return rank(A);
    }

    long h(int k, int l) const
    {
        long dim = long(subsets(n, k).size() * subsets(n, l).size());
        return dim - rank_d(k, l) - (k > 0 ? rank_d(k - 1, l) : 0);
    }
};

inline CEOracle sl2()
{
    CEOracle o;
    o.n = 3;
    o.f.assign(3, std::vector<std::vector<mpq_class>>(3, std::vector<mpq_class>(3)));
    auto put = [&](int i, int j, int k, int v) { o.f[i][j][k] = v; o.f[j][i][k] = -v; };
    put(0, 1, 1, 2);
    put(0, 2, 2, -2);
    put(1, 2, 0, 1);
    return o;
}

inline CEOracle so3()
{
    CEOracle o;
    o.n = 3;
    o.f.assign(3, std::vector<std::vector<mpq_class>>(3, std::vector<mpq_class>(3)));
    o.f[0][1][2] = o.f[1][2][0] = o.f[2][0][1] = 1;
    o.f[1][0][2] = o.f[2][1][0] = o.f[0][2][1] = -1;
    return o;
}

} // namespace oracle
