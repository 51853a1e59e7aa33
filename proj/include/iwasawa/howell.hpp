#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace iwk {

using Vec = std::vector<int64_t>;
using Matrix = std::vector<Vec>;

/// Arithmetic context for Z/p^N.
struct Zq {
    int64_t p = 2;
    int N = 1;
    int64_t q = 2;

    Zq() = default;
    Zq(int64_t p, int N);

    int64_t reduce(int64_t x) const;
    int64_t add(int64_t a, int64_t b) const;
    int64_t sub(int64_t a, int64_t b) const;
    int64_t mul(int64_t a, int64_t b) const;
    /// v_p of a residue, N for zero.
    int valuation(int64_t x) const;
    int64_t power_of_p(int k) const;
    friend bool operator==(const Zq& a, const Zq& b) { return a.p == b.p && a.N == b.N; }
};

/// Howell normal form of the row span of a matrix over Z/p^N.
///
/// Rows are in echelon form with leading entries p^k, entries above a
/// leading entry reduced into [0, p^k), and the span is saturated: every
/// span element vanishing in the first c columns is spanned by the rows
/// whose leading column is at least c. Zero rows are dropped.
Matrix howell_form(const Matrix& a, const Zq& ring, size_t ncols);

/// True iff v lies in the span of a matrix already in Howell form.
bool howell_contains(const Matrix& h, const Vec& v, const Zq& ring);
/// Canonical representative of v modulo the span of a Howell form (zero iff contained).
Vec howell_reduce(const Matrix& h, Vec v, const Zq& ring);
/// log_p of the cardinality of the span of a Howell form.
int64_t howell_log_size(const Matrix& h, const Zq& ring);
/// Column index of the first nonzero entry (ncols if none).
size_t leading_column(const Vec& row);

/// Generators (in Howell form) of { x : x a = 0 }.
Matrix left_kernel(const Matrix& a, const Zq& ring, size_t ncols);
/// Some x with x a = b, if one exists.
std::optional<Vec> solve_left(const Matrix& a, const Vec& b, const Zq& ring, size_t ncols);

Matrix mat_mul(const Matrix& a, const Matrix& b, const Zq& ring, size_t inner, size_t ncols);
Vec vec_mat(const Vec& v, const Matrix& a, const Zq& ring, size_t ncols);
Matrix transpose(const Matrix& a, size_t ncols);
Matrix identity_matrix(size_t n);

/// All elements of the row span, by enumeration (for small spans).
std::vector<Vec> enumerate_span(const Matrix& a, const Zq& ring, size_t ncols, size_t limit);

}  // namespace iwk
