/**
 * @file parser.hpp
 * @brief Expression grammar for algebra elements (parse and canonical print).
 *
 * Grammar (whitespace-insensitive):
 *
 *   expr      := term (('+' | '-') term)*
 *   term      := factor (('*' | '/') factor)*     -- '/' needs a scalar rhs
 *   factor    := '-' factor | atom
 *   atom      := number | 'i' | qpow | cpow | generator | '(' expr ')'
 *              | bracket | adexpr | symexpr
 *   qpow      := 'q' ('^(' signed ['/2'] ')')?    -- q, q^(3), q^(-5/2)
 *   cpow      := 'c' ('^(' signed ')')?           -- the undetermined constant
 *   generator := 'e[' idx ']' | 'f[' idx ']' | 'k[' idx ']' | 'k-[' idx ']'
 *              | 'xi+[' idx ',' idx ']' | 'xi-[' idx ',' idx ']'
 *              | 'kap[' idx ',' idx ']' | 'g[' idx ']' | 'g-[' idx ']'
 *              | 'g^(1/2)' | 'g^(-1/2)' | 'sigma[' idx ']'
 *   idx       := idxterm (('+' | '-') idxterm)*   -- integer arithmetic
 *   idxterm   := signed | variable
 *   bracket   := '[' expr ',' expr ']' ['_(' expr ')']
 *                -- [x,y]_(a) = x y - (-1)^{|x||y|} a y x
 *   adexpr    := 'Ad(' generator ';' expr ')'     -- e/f or xi+-[i,0]
 *   symexpr   := 'sym(' var '=' idx (',' var '=' idx)* ';' expr ')'
 *                -- sum of the body over all permutations of the values
 *
 * The canonical printer emits terms in graded-lexicographic monomial order;
 * parse(print(x)) == x for every element x.
 */
#pragma once

#include <string_view>

#include "qasa/algebra.hpp"

namespace qasa {

/// Parse an expression in the given algebra.  Throws Error(SyntaxError, ...)
/// with the byte offset of the failure.
Element parse_element(const CtxPtr& ctx, std::string_view input);

/// Canonical rendering (also available as Element::str()).
std::string print_element(const Element& e);

} // namespace qasa
