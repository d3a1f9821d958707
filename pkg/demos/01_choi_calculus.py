"""Maps as Choi matrices: construction, application, adjoints, pairings.

A linear map phi: M_n -> M_m is stored as the nm x nm block matrix whose
(i, j) block is phi(e_ij).  This script walks through the basic calculus
on a few concrete maps.
"""

import numpy as np

from mapcones import (
    adjoint,
    apply_map,
    compose_left,
    depolarizing_map,
    dual_functional,
    identity_map,
    map_from_action,
    max_entangled_projector,
    omega_eval,
    pairing,
    tensor,
    transpose_conj,
    transpose_map,
)

n = 3

print("== Choi matrices of basic maps ==")
ident = identity_map(n)
trans = transpose_map(n)
depol = depolarizing_map(n, n)
print(f"identity map: Choi = p (the unnormalized maximally entangled projector), trace {np.trace(ident.choi).real:g}")
print(f"transpose map: Choi = swap operator, eigenvalues {sorted(np.linalg.eigvalsh(trans.choi))}")
print(f"depolarizing x -> Tr(x) I/{n}: Choi block structure delta_ij * I/{n}")

print("\n== Applying a map from its Choi matrix ==")
rng = np.random.default_rng(1)
a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
print("apply(identity, a) == a:", np.allclose(apply_map(ident, a), a))
print("apply(transpose, a) == a^T:", np.allclose(apply_map(trans, a), a.T))

print("\n== Custom map from an action ==")
v = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
conj_v = map_from_action(n, n, lambda e: v @ e @ v.conj().T)
print("x -> v x v* has PSD Choi (completely positive):",
      np.linalg.eigvalsh(conj_v.choi)[0] >= -1e-12)

print("\n== Adjoint and transpose conjugation ==")
adj = adjoint(conj_v)
b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
lhs = np.trace(apply_map(conj_v, a) @ b)
rhs = np.trace(a @ apply_map(adj, b))
print(f"Tr(phi(a) b) = Tr(a phi*(b)): {lhs:.6f} vs {rhs:.6f}")
tc = transpose_conj(conj_v)
print("Choi of t.phi.t equals the full transpose of Choi(phi):",
      np.allclose(tc.choi, conj_v.choi.T))

print("\n== Compositions ==")
print("t . t = identity:", np.allclose(compose_left(trans, trans).choi, ident.choi))

print("\n== The induced functional and the entangled-state pairing ==")
f = dual_functional(ident)
p = max_entangled_projector(n)
print(f"functional of the identity at p: {f(p).real:g}  (equals Tr(p^2) = n^2 = {n * n})")
x = tensor(a + a.conj().T, b + b.conj().T)
print(f"omega(x) = Tr(p x)/n on a product operator: {omega_eval((x + x.conj().T) / 2, n):+.6f}")

print("\n== Trace pairings of maps ==")
print(f"pairing(identity, identity) = {pairing(ident, ident):g} (= n^2)")
print(f"pairing(identity, transpose) = {pairing(ident, trans):g} (= Tr(p swap) = n)")
print(f"pairing(identity, depolarizing) = {pairing(ident, depol):g}")
