#include <twistdef/linear_solve.hpp>

#include <algorithm>

namespace twistdef {

namespace {

struct Row {
    SparseVec coeffs; // column -> value
    Rational rhs;
};

// row -= factor * pivot
void axpy(Row &row, const Rational &factor, const Row &pivot)
{
    for (const auto &[col, v] : pivot.coeffs) {
        auto it = row.coeffs.find(col);
        Rational delta = factor * v;
        if (it == row.coeffs.end()) {
            row.coeffs.emplace(col, -delta);
        } else {
            it->second -= delta;
            if (it->second.is_zero()) row.coeffs.erase(it);
        }
    }
    row.rhs -= factor * pivot.rhs;
}

struct Reduced {
    std::map<std::size_t, Row> pivots;
    std::optional<std::size_t> failing_row;
};

Reduced reduce(const std::vector<SparseVec> &columns, const SparseVec &rhs, std::size_t rows)
{
    std::vector<Row> eqs(rows);
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto &[r, v] : columns[j])
            if (!v.is_zero()) eqs.at(r).coeffs.emplace(j, v);
    for (const auto &[r, v] : rhs) eqs.at(r).rhs = v;

    Reduced out;
    // pivot column -> reduced row with leading entry 1 in that column
    auto &pivots = out.pivots;
    for (std::size_t r = 0; r < rows; ++r) {
        Row row = std::move(eqs[r]);
        // Reduce against existing pivots until no pivot column remains.
        bool changed = true;
        while (changed && !row.coeffs.empty()) {
            changed = false;
            for (auto it = row.coeffs.begin(); it != row.coeffs.end(); ++it) {
                auto p = pivots.find(it->first);
                if (p != pivots.end()) {
                    const Rational f = it->second;
                    axpy(row, f, p->second);
                    changed = true;
                    break;
                }
            }
        }
        if (row.coeffs.empty()) {
            if (!row.rhs.is_zero() && !out.failing_row) out.failing_row = r;
            continue;
        }
        const std::size_t col = row.coeffs.begin()->first;
        const Rational inv = Rational(1) / row.coeffs.begin()->second;
        for (auto &[c, v] : row.coeffs) v *= inv;
        row.rhs *= inv;
        // Keep the pivot set fully reduced so back substitution is trivial.
        for (auto &[pc, prow] : pivots) {
            auto it = prow.coeffs.find(col);
            if (it != prow.coeffs.end()) {
                const Rational f = it->second;
                axpy(prow, f, row);
            }
        }
        pivots.emplace(col, std::move(row));
    }
    return out;
}

} // namespace

LinearSolution solve_exact(const std::vector<SparseVec> &columns, const SparseVec &rhs, std::size_t rows)
{
    Reduced red = reduce(columns, rhs, rows);
    LinearSolution out;
    out.rank = red.pivots.size();
    out.failing_row = red.failing_row;
    out.consistent = !out.failing_row.has_value();
    if (out.consistent) {
        out.x.assign(columns.size(), Rational(0));
        for (const auto &[col, row] : red.pivots) out.x[col] = row.rhs;
    }
    return out;
}

std::vector<std::vector<Rational>> nullspace_exact(const std::vector<SparseVec> &columns, std::size_t rows)
{
    const Reduced red = reduce(columns, {}, rows);
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < columns.size(); ++f) {
        if (red.pivots.count(f)) continue;
        std::vector<Rational> v(columns.size(), Rational(0));
        v[f] = Rational(1);
        for (const auto &[col, row] : red.pivots) {
            auto it = row.coeffs.find(f);
            if (it != row.coeffs.end()) v[col] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace twistdef
