#pragma once

#include "diffalg/ext_int.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace diffalg {

using Rational = mpq_class;

/// Names of the differential indeterminates x_0..x_{n-1}. Shared by every
/// polynomial over the same ring; two rings are the same iff their name
/// lists are equal.
class Ring {
public:
    explicit Ring(std::vector<std::string> names);

    static std::shared_ptr<const Ring> make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t var) const;
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> indexOf(const std::string& name) const;

    /// True if this ring's variables are a prefix of `other`'s.
    bool isPrefixOf(const Ring& other) const;

    friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

bool sameRing(const RingPtr& a, const RingPtr& b);

/// x_var^(order)
struct Derivative {
    std::size_t var = 0;
    std::int64_t order = 0;

    friend bool operator==(const Derivative&, const Derivative&) = default;
};

/// The canonical orderly comparison: (order, var) lexicographically.
std::strong_ordering orderlyCompare(const Derivative& a, const Derivative& b);

struct OrderlyLess {
    bool operator()(const Derivative& a, const Derivative& b) const { return orderlyCompare(a, b) < 0; }
};

/// Power product of derivatives. Factors are kept sorted by descending
/// orderly rank with positive exponents; the empty product is 1.
class Monomial {
public:
    using Factor = std::pair<Derivative, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(Derivative d, std::uint32_t exponent = 1);
    static Monomial fromFactors(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool isOne() const { return factors_.empty(); }
    std::uint32_t degreeIn(const Derivative& d) const;
    std::uint32_t totalDegree() const;

    /// The monomial with d's exponent replaced by `exponent` (0 removes it).
    Monomial withExponent(const Derivative& d, std::uint32_t exponent) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Lexicographic on the descending factor lists (pure lex with derivatives
    /// ordered by the orderly ranking).
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;
};

/// Sparse differential polynomial over Q with the zero derivation on
/// coefficients. Immutable in practice; all operations return new values.
class DiffPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit DiffPoly(RingPtr ring);
    DiffPoly(RingPtr ring, Terms terms);

    static DiffPoly constant(RingPtr ring, const Rational& c);
    static DiffPoly derivative(RingPtr ring, std::size_t var, std::int64_t order = 0);
    static DiffPoly monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    /// Constant term (coefficient of the monomial 1).
    Rational constantTerm() const;
    std::size_t termCount() const { return terms_.size(); }
    std::uint32_t totalDegree() const;
    bool isLinear() const { return totalDegree() <= 1; }

    /// Every derivative occurring with a nonzero partial, ascending orderly.
    std::vector<Derivative> derivatives() const;
    bool involvesVar(std::size_t var) const;
    std::uint32_t degreeIn(const Derivative& d) const;

    /// Coefficients c_i in p = Σ c_i d^i, indexed by i (size degreeIn(d)+1).
    std::vector<DiffPoly> coefficientsIn(const Derivative& d) const;
    DiffPoly partial(const Derivative& d) const;

    /// Same polynomial viewed over a ring whose variable list extends this one.
    DiffPoly liftTo(const RingPtr& extended) const;
    /// Inverse of liftTo; fails if a dropped variable occurs.
    DiffPoly restrictTo(const RingPtr& smaller) const;

    /// Substitute a rational constant for a variable of order 0 only
    /// (derivatives of that variable must be absent).
    DiffPoly substituteConstant(std::size_t var, const Rational& value) const;

    DiffPoly operator-() const;
    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(const Rational& c, const DiffPoly& a);
    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator-=(const DiffPoly& o) { return *this = *this - o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    DiffPoly pow(std::uint32_t e) const;

    friend bool operator==(const DiffPoly& a, const DiffPoly& b);

    /// Canonical text: descending monomial order, `x'`, `x''`, `x'''`,
    /// `x^(k)` for k ≥ 4, `*`, `^`, rationals as `p/q`.
    std::string str() const;

private:
    void requireSameRing(const DiffPoly& o) const;

    RingPtr ring_;
    Terms terms_;
};

std::string renderDerivative(const Ring& ring, const Derivative& d);

std::ostream& operator<<(std::ostream& os, const DiffPoly& p);

enum class Convention { weak, strong };

/// Total order on derivatives satisfying both ranking axioms.
class Ranking {
public:
    enum class Kind { orderly, blockElimination };

    static Ranking orderly();
    /// Ordered partition of the variables; later blocks rank higher. Within a
    /// block the orderly comparison applies.
    static Ranking blockElimination(std::vector<std::vector<std::size_t>> blocks);

    Kind kind() const { return kind_; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    std::strong_ordering compare(const Derivative& a, const Derivative& b) const;
    bool less(const Derivative& a, const Derivative& b) const { return compare(a, b) < 0; }

    /// Throws if a block-elimination ranking does not partition 0..n-1.
    void validateFor(std::size_t n) const;

    std::string describe(const Ring& ring) const;

private:
    std::size_t blockOf(std::size_t var) const;

    Kind kind_ = Kind::orderly;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// Σ c_k ∂^k with polynomial coefficients on the left (Weyl algebra element).
class LinearDifferentialOperator {
public:
    explicit LinearDifferentialOperator(RingPtr ring);

    static LinearDifferentialOperator multiplication(const DiffPoly& c);
    static LinearDifferentialOperator derivation(RingPtr ring, std::int64_t k = 1);

    const RingPtr& ring() const { return ring_; }
    const std::map<std::int64_t, DiffPoly>& coefficients() const { return coeffs_; }
    bool isZero() const { return coeffs_.empty(); }

    void addTerm(std::int64_t k, const DiffPoly& c);
    /// c·L (left multiplication of every coefficient).
    LinearDifferentialOperator leftMultiply(const DiffPoly& c) const;

    friend LinearDifferentialOperator operator+(const LinearDifferentialOperator& a,
                                                const LinearDifferentialOperator& b);
    /// Weyl-algebra product: ∂^k c = Σ_i C(k,i) c^{(i)} ∂^{k-i}.
    friend LinearDifferentialOperator operator*(const LinearDifferentialOperator& a,
                                                const LinearDifferentialOperator& b);
    friend bool operator==(const LinearDifferentialOperator& a, const LinearDifferentialOperator& b);

    std::string str() const;

private:
    RingPtr ring_;
    std::map<std::int64_t, DiffPoly> coeffs_;
};

DiffPoly derive(const DiffPoly& p);
DiffPoly deriveN(const DiffPoly& p, std::int64_t k);

ExtInt ord(const DiffPoly& p, std::size_t var, Convention convention);

Derivative leaderIn(const DiffPoly& p, std::size_t var);
Derivative leader(const DiffPoly& p, const Ranking& ranking);

DiffPoly separant(const DiffPoly& p, std::size_t var);
DiffPoly initialIn(const DiffPoly& p, std::size_t var);
std::uint32_t degInLeader(const DiffPoly& p, std::size_t var);

/// Separant and initial with respect to the leader under `ranking`.
DiffPoly separant(const DiffPoly& p, const Ranking& ranking);
DiffPoly initial(const DiffPoly& p, const Ranking& ranking);

/// True iff g is strictly larger than f in `var`: lower strong order, or the
/// same leader with a smaller degree in it.
bool isLowerThan(const DiffPoly& f, const DiffPoly& g, std::size_t var);

DiffPoly applyOperator(const LinearDifferentialOperator& op, const DiffPoly& p);

} // namespace diffalg
