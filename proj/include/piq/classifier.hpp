#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "piq/ncpoly.hpp"
#include "piq/path_algebra.hpp"
#include "piq/quiver.hpp"

namespace piq {

/// The quiver is PI; St_{standard_degree} (= 2|Q_0|) is an identity.
struct PiCertificate {
    std::size_t standard_degree;
};

/// Two distinct simple cycles through one vertex.
struct NonPiWitness {
    Vertex vertex;
    SimpleCycle first;
    SimpleCycle second;
};

using PiVerdict = std::variant<PiCertificate, NonPiWitness>;

inline bool is_pi(const PiVerdict& v) { return std::holds_alternative<PiCertificate>(v); }

/**
 * PI test by strongly connected components: the quiver is PI iff each
 * component is a vertex without arrows, a vertex with one loop, or a simple
 * oriented cycle. A NonPI verdict names the smallest vertex of the first
 * offending component lying on two simple cycles, with the two smallest such
 * cycles.
 */
PiVerdict classify_pi(const Quiver& q);

/// Same decision from a full simple-cycle enumeration, parallel over start vertices.
PiVerdict classify_pi_bruteforce(const Quiver& q, int threads = 0);

/// u_m with m = longest_path_length(q) + 1. Throws std::domain_error on a cyclic quiver.
NcPoly tideal_generator_acyclic(const Quiver& q);

/// Two closed paths at v read along its two smallest simple cycles.
/// Throws std::invalid_argument when v lies on fewer than two simple cycles.
std::pair<Path, Path> free_subalgebra_witness(const Quiver& q, Vertex v);

namespace loc_graded {

enum class Reason { tree, single_cycle, acyclic_full_check };

/// Locally A-graded for every degree.
struct ExactYes {
    Reason reason;
};

/// Every graded piece of degree <= max_len checked; nothing beyond.
struct YesUpTo {
    std::size_t max_len;
};

/// Two distinct basis paths in the same piece A^d_{i,j}.
struct No {
    Path first;
    Path second;
};

/// Pieces have dimension <= 1 but left * right vanishes although the
/// target piece is non-zero, so the standard basis is not matrix-like.
struct NotMatrixLike {
    Path left;
    Path right;
};

}  // namespace loc_graded

using LocAGradedVerdict =
    std::variant<loc_graded::ExactYes, loc_graded::YesUpTo, loc_graded::No, loc_graded::NotMatrixLike>;

const char* to_string(loc_graded::Reason r);

/**
 * Checks the standard basis of A piece by piece up to max_len. Trees and
 * single oriented cycles are decided structurally; an acyclic quiver is
 * decided exactly once max_len reaches its longest path. Throws
 * std::invalid_argument when max_len exceeds the truncation length.
 */
LocAGradedVerdict is_locally_a_graded(const AlgebraHandle& algebra, std::size_t max_len);

/**
 * C_n glued to C_m at the vertex "v". The first cycle runs
 * v -a1-> p1 -a2-> ... p(n-1) -alpha-> v, the second
 * v -beta-> q1 -b2-> ... q(m-1) -bm-> v. For n = 1 (m = 1) alpha (beta) is a loop.
 */
Quiver glued_cycles_quiver(std::size_t n, std::size_t m);

/// The path algebra of glued_cycles_quiver(n, m), optionally modulo alpha*beta.
AlgebraHandle build_glued_cycles(std::size_t n, std::size_t m, bool with_relation, std::size_t truncation = 64,
                                 Field field = Field::rationals());

/**
 * (e_{s(a1)}, a1, e_{s(a2)}, a2, ..., e_{s(ak)}, ak) along a longest path
 * a1 a2 ...; u_k on it gives a1 ... ak. Throws std::invalid_argument when
 * k is 0 or exceeds the longest path, std::domain_error on a cyclic quiver.
 */
std::vector<Path> nonvanishing_witness_u(const Quiver& q, std::size_t k);

}  // namespace piq
