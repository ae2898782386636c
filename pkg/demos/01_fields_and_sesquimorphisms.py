"""Finite fields, quadratic extensions, and sesqui-morphisms.

Walks through the arithmetic layer: GF(4) with its familiar relations, the
quadratic extension construction X^2 - p(X+1) for several bases, and the
coefficient-swapping sesqui-morphism sigma~ that makes every pair of field
elements storable as one element of the extension.
"""

from rankw import (field_extend_quadratic, field_make, sigma_compatible_set,
                   sigma_frobenius_conj, sigma_negation)

# GF(4) = {0, 1, a, a^2} with 1 + a + a^2 = 0 and a^3 = 1.
F4 = field_make(2, 2)
a = 2  # the element code of a (codes are base-p digit strings)
print("GF(4) modulus coefficients (low degree first):", F4.modulus)
print("1 + a + a^2 =", F4.add(F4.add(1, a), F4.mul(a, a)))
print("a^3 =", F4.pow(a, 3))

# sigma4 swaps a and a^2; it is the conjugation x -> x^2.
s4 = sigma_frobenius_conj(F4)
print("sigma4 table:", s4.table)
print("sigma4-compatible lambdas:", sigma_compatible_set(s4))

# The extension of GF(2): the first p in GF(2)* with X^2 - p(X+1) rootless
# is p = 1, so the modulus is X^2 + X + 1 and the extension is GF(4) itself.
e2 = field_extend_quadratic(field_make(2, 1))
print("\nGF(2) extension: p =", e2.p_elt, " order", e2.ext.q,
      " gamma =", e2.ext.element_str(e2.gamma), " tau =", e2.ext.element_str(e2.tau))
print("f~(1,0) =", e2.f_tilde(1, 0), " f~(0,1) =", e2.f_tilde(0, 1),
      " f~(1,1) =", e2.f_tilde(1, 1), "(gamma + tau = 1)")

# Odd characteristic: GF(3) extends to GF(9) via X^2 - X - 1.
e3 = field_extend_quadratic(field_make(3, 1))
print("\nGF(3) extension: p =", e3.p_elt, " modulus", e3.ext.modulus,
      " order", e3.ext.q)
X = e3.ext
print("gamma * tau =", X.element_str(X.mul(e3.gamma, e3.tau)),
      " (equals -p^{-1}; the swap map fixes it)")
print("sigma~ fixes the base:", all(e3.sigma_tilde(c) == c for c in range(3)))
print("sigma~ swaps f~ coordinates:",
      all(e3.sigma_tilde(e3.f_tilde(x, y)) == e3.f_tilde(y, x)
          for x in range(3) for y in range(3)))

# GF(3) with negation has no compatible lambda at all: local complementation
# is unavailable there, which is why the pivot operation exists.
print("\nGF(3), sigma = negation, compatible lambdas:",
      sigma_compatible_set(sigma_negation(field_make(3, 1))))
