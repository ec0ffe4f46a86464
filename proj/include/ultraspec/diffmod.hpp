#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ultraspec/berk.hpp"
#include "ultraspec/poly.hpp"

namespace ultraspec {

// Square matrix over Q(sqrt p), row-major.
using QMatrix = std::vector<std::vector<QuadScalar>>;

// Monic differential polynomial P = D^n + g_{n-1} D^{n-1} + ... + g_0 with
// constant coefficients; `g` stores g_0..g_{n-1}.
struct DiffPoly {
    std::vector<QuadScalar> g;
    std::size_t order() const { return g.size(); }
};

// Throws validation_error unless m is square and nonempty.
void check_square(const QMatrix& m);

// Companion matrix of P: sub-diagonal ones, last column (-g_0, ..., -g_{n-1}).
QMatrix companion_matrix(const DiffPoly& p);

// Exact characteristic polynomial det(X*I - G) (Faddeev-LeVerrier).
QPoly characteristic_polynomial(const QMatrix& g, const FieldSpec& f);

// Exact square root in Q(sqrt p) if one exists.
std::optional<QuadScalar> qs_sqrt(const QuadScalar& w, const FieldSpec& f);

struct EigenAnalysis {
    std::vector<std::pair<QuadScalar, int>> roots;   // eigenvalue, multiplicity
    std::vector<std::pair<QPoly, int>> unresolved;   // monic factor, multiplicity
    bool fully_resolved() const { return unresolved.empty(); }
};

// All roots of q lying in Q(sqrt p), with multiplicities, plus the monic
// factors that contribute no such roots.  The product of (X - root)^mult
// over all roots times unresolved^mult reproduces monic(q) exactly.
EigenAnalysis eigenvalue_multiset(const QPoly& q, const FieldSpec& f);

struct NewtonSlopes {
    // (root valuation, multiplicity), ascending by valuation; the valuations
    // are the negated lower-hull slopes of {(i, val(coeff_i))}.
    std::vector<std::pair<Rat, int>> slopes;
    int zero_multiplicity = 0;  // order of vanishing at 0 (stripped first)
};

// p-adic mode only; non-p-adic modes throw unsupported_error.
NewtonSlopes newton_polygon_slopes(const QPoly& q, const FieldSpec& f);

// Domain specifications: where the differential module lives.
struct DomainDisk {
    Disk disk;  // must be Closed
};
struct DomainAffinoid {
    Disk outer;                   // must be Closed
    std::vector<OpenDisk> holes;  // removed open disks
};
using ConnectedDomain = std::variant<DomainDisk, DomainAffinoid>;
struct DomainUnion {
    std::vector<ConnectedDomain> components;
};
struct DomainPoint {
    BerkPoint x;  // type 2, 3 or 4 (positive radius)
};
using DomainSpec = std::variant<DomainDisk, DomainAffinoid, DomainUnion, DomainPoint>;

// Throws validation_error when the specification is ill-formed: holes must
// sit inside the outer disk with radius at most the outer's and be pairwise
// disjoint; union components must be pairwise disjoint; point domains need
// positive radius, and type-4 families must be strictly decreasing, coherent
// chains staying above the declared limit radius.
void validate_domain(const DomainSpec& d, const FieldSpec& f);

}  // namespace ultraspec
