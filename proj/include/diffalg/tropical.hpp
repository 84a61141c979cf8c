#pragma once

#include "diffalg/diffpoly.hpp"
#include "diffalg/ext_int.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace diffalg {

/// 0-based permutation; p[i] is the image of i. Composition is right to
/// left: compose(a, b)(i) = a(b(i)).
using Perm = std::vector<std::size_t>;
/// Cycle (i1 i2 ... is): i1 → i2 → ... → is → i1.
using Cycle = std::vector<std::size_t>;

Perm identityPerm(std::size_t n);
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
bool isPermutation(const Perm& p);
/// Transposition (i j) on n points.
Perm transposition(std::size_t n, std::size_t i, std::size_t j);
Perm cycleToPerm(const Cycle& c, std::size_t n);
/// Nontrivial cycles, each starting at its smallest element, ordered by it.
std::vector<Cycle> cycleDecompose(const Perm& p);
/// Cycle notation, 1-based: "(1 3)(2 4 5)", "()" for the identity.
std::string permToString(const Perm& p);
/// Every permutation of n points in lexicographic order.
std::vector<Perm> allPerms(std::size_t n);

class OrderMatrix {
public:
    OrderMatrix() = default;
    OrderMatrix(std::size_t rows, std::size_t cols, Convention convention = Convention::strong);
    static OrderMatrix fromRows(const std::vector<std::vector<ExtInt>>& rows,
                                Convention convention = Convention::strong);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool isSquare() const { return rows_ == cols_; }
    Convention convention() const { return convention_; }

    ExtInt& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
    ExtInt at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

    std::vector<std::string> rowLabels;
    std::vector<std::string> colLabels;

    /// Matrix with row r and column c removed.
    OrderMatrix minor(std::size_t r, std::size_t c) const;
    ExtInt maxEntry() const;

    /// Aligned text grid; −∞ printed as "·".
    std::string render() const;

    friend bool operator==(const OrderMatrix& a, const OrderMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Convention convention_ = Convention::strong;
    std::vector<ExtInt> entries_;
};

/// a_{ij} = ord(u_i, columns[j]); all ring variables when columns is empty.
OrderMatrix orderMatrix(const std::vector<DiffPoly>& system, Convention convention,
                        const std::vector<std::size_t>& columns = {});

struct TdetResult {
    ExtInt value;
    /// Maximizing permutations (row i ↦ column ρ[i]). All of them from the
    /// brute-force path; one from the assignment path.
    std::vector<Perm> witnesses;
};

inline constexpr std::size_t kBruteForceLimit = 8;

TdetResult tdet(const OrderMatrix& a);
TdetResult tdetBruteForce(const OrderMatrix& a);
TdetResult tdetAssignment(const OrderMatrix& a);

ExtInt transversalValue(const OrderMatrix& a, const Perm& rho);
/// a_{i1,i2} + a_{i2,i3} + ... + a_{is,i1}
ExtInt cyclicSum(const OrderMatrix& a, const Cycle& cycle);

/// b_{ij} = a_{σ(i), τ(j)}. If ρ is a transversal of a, τ⁻¹ρσ is one of b
/// with the same value.
OrderMatrix permute(const OrderMatrix& a, const Perm& sigma, const Perm& tau);

/// Rows permuted so the diagonal is a maximal transversal (first witness).
OrderMatrix diagonalize(const OrderMatrix& a, Perm* rowPerm = nullptr);

/// Columns compared as sorted entry vectors, lexicographically, −∞ lowest;
/// then columns left to right. Shape mismatch throws.
std::strong_ordering rittCompare(const OrderMatrix& a, const OrderMatrix& b);

bool detectFirstForm(const OrderMatrix& a);
bool detectSecondForm(const OrderMatrix& a);
bool detectThirdForm(const OrderMatrix& b);

enum class FormKind { none, first, second, third };
const char* toString(FormKind k);

struct FormCertificate {
    Perm rowPerm;
    Perm colPerm;
    FormKind form = FormKind::none;
    /// 1-based index chosen by the second-form search.
    std::optional<std::size_t> searchIndex;

    OrderMatrix apply(const OrderMatrix& a) const { return permute(a, rowPerm, colPerm); }
};

/// Row and column swaps, column 1 fixed. Throws HypothesisFailure.
FormCertificate toFirstForm(const OrderMatrix& a);
/// Row and column swaps, column 1 fixed. Throws HypothesisFailure, or
/// InternalInvariantViolation if the existence search comes up empty.
FormCertificate toSecondForm(const OrderMatrix& a);

/// Cyclic shift of columns 2..n; see thirdFormColumnPerm.
OrderMatrix thirdFromSecond(const OrderMatrix& a);
OrderMatrix secondFromThird(const OrderMatrix& b);
/// π with b_{·,j} = a_{·,π(j)}: π(1)=1, π(2)=n, π(j)=j−1 (1-based).
Perm thirdFormColumnPerm(std::size_t n);

/// Whether the matrix is nested triangular: some column has exactly one
/// finite entry, and the minor without that row and column is again so.
bool isNestedTriangular(const OrderMatrix& a);

} // namespace diffalg
