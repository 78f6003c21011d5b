// serialize.hpp: JSON documents for operator tuples, matrices, scalar points
// and free polynomial maps. Numbers round-trip bit-exactly; every shape or
// finiteness violation raises MalformedInput.
#pragma once

#include <string>

#include "ncball/freeholo.hpp"
#include "ncball/linalg.hpp"
#include "ncball/tuples.hpp"

namespace ncball {

// Tuple document: {"n", "dim", "matrices": n x dim x dim x [re, im],
// "label" optional}, matrices row-major.
std::string serialize_tuple(const OperatorTuple& X,
                            const std::string& label = "");
OperatorTuple parse_tuple(const std::string& text);

// Single square matrix as a tuple document with n = 1.
std::string serialize_matrix(const ComplexMatrix& M,
                             const std::string& label = "");
ComplexMatrix parse_matrix(const std::string& text);

// Scalar point as a tuple document with n = 1 and one 1 x dim row.
std::string serialize_vector(const ComplexVector& z,
                             const std::string& label = "");
ComplexVector parse_vector(const std::string& text);

// Free polynomial map: {"n_in", "q_out", "e", "terms": [{"component",
// "word": [letters, 1-based], "coeff": e x e x [re, im]}]}. Repeated
// (component, word) terms accumulate.
std::string serialize_free_map(const FreePolyMap& F);
FreePolyMap parse_free_map(const std::string& text);

}  // namespace ncball
