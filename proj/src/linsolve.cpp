#include "vlh/linsolve.hpp"
#include "vlh/error.hpp"

namespace vlh {

LinearSolution solveLinear(std::vector<std::vector<Rat>> M,
                           std::vector<ParamPoly> rhs) {
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    if (rhs.size() != rows)
        throw SolveError("row/rhs size mismatch");

    std::vector<size_t> pivotCol;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        Rat inv = Rat(1) / M[r][c];
        for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
            ParamPoly t = rhs[r];
            t *= f;
            rhs[i] -= t;
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].isZero())
            throw SolveError("inconsistent linear system; residual " + rhs[i].toString());

    LinearSolution sol;
    sol.x.assign(cols, ParamPoly());
    std::vector<bool> isPivot(cols, false);
    for (size_t i = 0; i < pivotCol.size(); ++i) {
        isPivot[pivotCol[i]] = true;
        sol.x[pivotCol[i]] = rhs[i];
    }
    for (size_t c = 0; c < cols; ++c)
        if (!isPivot[c]) sol.freeColumns.push_back((unsigned)c);
    sol.kernelDim = (unsigned)sol.freeColumns.size();
    return sol;
}

void appendLinearEquations(const ParamPoly& poly,
                           const std::map<std::string, size_t>& unknownIndex,
                           std::vector<std::vector<Rat>>& rows,
                           std::vector<ParamPoly>& rhs) {
    using Key = std::map<std::string, unsigned>;
    struct Bucket {
        std::vector<Rat> row;
        Rat inhom = Rat(0);
    };
    std::map<Key, Bucket> buckets;
    size_t n = unknownIndex.size();
    for (const auto& [pm, r] : poly.terms()) {
        Key rest;
        int unknown = -1;
        bool bad = false;
        for (const auto& [name, e] : pm) {
            auto it = unknownIndex.find(name);
            if (it == unknownIndex.end()) {
                rest[name] = e;
            } else {
                if (unknown >= 0 || e != 1) bad = true;
                unknown = (int)it->second;
            }
        }
        if (bad)
            throw InvariantError("system is not linear in the unknowns");
        auto& b = buckets[rest];
        if (b.row.empty()) b.row.assign(n, Rat(0));
        if (unknown >= 0)
            b.row[(size_t)unknown] += r;
        else
            b.inhom += r;
    }
    for (auto& [key, b] : buckets) {
        rows.push_back(std::move(b.row));
        rhs.push_back(ParamPoly(-b.inhom));
    }
}

} // namespace vlh
