#ifndef TWISTDEF_LINEAR_SOLVE_HPP
#define TWISTDEF_LINEAR_SOLVE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <twistdef/rational.hpp>

namespace twistdef {

/// Sparse vector indexed by row (or column) number.
using SparseVec = std::map<std::size_t, Rational>;

struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    /// Dense solution of length `columns`; free variables are zero.
    std::vector<Rational> x;
    /// When inconsistent: index of the first equation that reduced to 0 = c, c != 0.
    std::optional<std::size_t> failing_row;
};

/// Exact Gaussian elimination for A x = b over the rationals.
///
/// `columns[j]` is the j-th column of A in sparse form (row -> value);
/// `rhs` is b. Pivots are chosen as the lowest-numbered column with a
/// nonzero entry, so results are deterministic.
LinearSolution solve_exact(const std::vector<SparseVec> &columns, const SparseVec &rhs, std::size_t rows);

/// Basis of {x : A x = 0}, one vector per non-pivot column, in column order.
std::vector<std::vector<Rational>> nullspace_exact(const std::vector<SparseVec> &columns, std::size_t rows);

/// Assigns consecutive row numbers to coordinate keys on first sight.
template <class Key, class Less = std::less<Key>>
class RowIndexer {
public:
    std::size_t operator()(const Key &k)
    {
        auto [it, fresh] = rows_.try_emplace(k, rows_.size());
        return it->second;
    }
    [[nodiscard]] std::size_t size() const { return rows_.size(); }

private:
    std::map<Key, std::size_t, Less> rows_;
};

} // namespace twistdef

#endif
