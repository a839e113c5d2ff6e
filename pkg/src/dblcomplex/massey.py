"""Triple Massey products: classical (total complex) and Aeppli-Bott-Chern.

Elements are global sparse vectors ``{index: Scalar}`` of a bicomplex that
carries a multiplication.  Triviality is exact subspace membership.

Classical:  ab = dx, bc = dy, representative a y - (-1)^{|a|} x c in H_dR,
indeterminacy [a] H + H [c].
ABC:        αβ = ∂∂̄x, βγ = ∂∂̄y, representative α y - x γ in H_A,
indeterminacy α ker∂∂̄ + ker∂∂̄ γ (plus im ∂ + im ∂̄).  This representative is
∂∂̄-closed for every parity of α.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .bicomplex import Bicomplex
from .linalg import Matrix, kernel_basis, quotient_basis, solve, span_basis, span_rank
from .scalars import ZERO, Scalar, as_scalar

__all__ = [
    "MasseyResult",
    "MasseyError",
    "NotClosed",
    "ProductObstruction",
    "ClassicalMassey",
    "ABCMassey",
    "triple_massey",
    "abc_massey",
    "element",
    "degree_of",
    "bidegree_of",
    "random_defined_triples",
]

Sparse = dict


class MasseyError(ValueError):
    pass


class NotClosed(MasseyError):
    pass


class ProductObstruction(MasseyError):
    """A product that must be exact is not; ``witness`` is the offending product."""

    def __init__(self, msg: str, witness: Sparse):
        super().__init__(msg)
        self.witness = witness


def element(A: Bicomplex, terms: dict) -> Sparse:
    """Sparse vector from ``{label: coefficient}``."""
    idx = {lab: i for i, lab in enumerate(A.labels)}
    out: Sparse = {}
    for lab, c in terms.items():
        if lab not in idx:
            raise KeyError(f"unknown basis label {lab!r}")
        c = as_scalar(c)
        if c:
            out[idx[lab]] = out.get(idx[lab], ZERO) + c
    return {k: v for k, v in out.items() if v}


def bidegree_of(A: Bicomplex, v: Sparse) -> tuple[int, int] | None:
    degs = {A.index_bidegree[i] for i in v}
    if len(degs) > 1:
        raise MasseyError("element is not bihomogeneous")
    return degs.pop() if degs else None


def degree_of(A: Bicomplex, v: Sparse) -> int | None:
    degs = {sum(A.index_bidegree[i]) for i in v}
    if len(degs) > 1:
        raise MasseyError("element is not homogeneous in total degree")
    return degs.pop() if degs else None


def _sub(u: Sparse, v: Sparse) -> Sparse:
    out = dict(u)
    for k, c in v.items():
        x = out.get(k, ZERO) - c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def _scale(c, u: Sparse) -> Sparse:
    return {k: c * x for k, x in u.items()}


@dataclass(frozen=True)
class MasseyResult:
    """``representative`` is a cochain; ``coords`` its class in the canonical quotient basis.

    ``indeterminacy`` is a basis (in the same class coordinates) of the
    indeterminacy subspace; ``is_trivial`` says whether the class lies in it.
    """

    kind: str
    degree: object
    representative: Sparse
    coords: tuple
    indeterminacy: tuple
    is_trivial: bool
    choices: tuple  # (x, y)

    def summary(self) -> str:
        state = "trivial" if self.is_trivial else "NONTRIVIAL"
        return (
            f"{self.kind} Massey product in degree {self.degree}: {state}; "
            f"class {list(map(str, self.coords))}, indeterminacy dimension {len(self.indeterminacy)}"
        )


class _Target:
    """A cohomology space presented as cycles modulo a relation subspace."""

    def __init__(self, cycles: list[tuple], relations: list[tuple], dim: int):
        self.dim = dim
        self.rel = span_basis(relations, dim) if relations and dim else []
        self.basis = quotient_basis(cycles, self.rel, dim) if cycles and dim else []
        # coordinates: solve v = Σ c_i basis_i + Σ r_j rel_j
        cols = self.basis + self.rel
        self.M = Matrix.from_columns(cols, dim) if cols else None

    def coords(self, v: tuple) -> tuple:
        if not self.basis:
            return ()
        sol = solve(self.M, v)
        if sol is None:
            raise MasseyError("vector is not a cycle of the target cohomology")
        return tuple(sol[: len(self.basis)])


class _MasseyBase:
    kind = ""

    def __init__(self, A: Bicomplex):
        if A.mult is None:
            raise MasseyError("Massey products need a bicomplex with multiplication")
        self.A = A

    def _finish(self, rep: Sparse, x: Sparse, y: Sparse) -> MasseyResult:
        v = self._dense(rep)
        coords = self.target.coords(v)
        trivial = not coords or span_rank(self.indet_coords + [coords], len(coords)) == len(self.indet_coords)
        return MasseyResult(self.kind, self.degree, rep, coords, tuple(self.indet_coords), trivial, (x, y))

    def resample(self, rng: random.Random, bound: int = 3) -> tuple[Sparse, Sparse]:
        """Another valid pair of primitives: x0, y0 plus random elements of the freedom spaces."""
        out = []
        for base, space in ((self.x0, self.x_space), (self.y0, self.y_space)):
            v = dict(base)
            for w in self.primitive_freedom(space):
                c = rng.randint(-bound, bound)
                if c:
                    v = _sub(v, _scale(-c, w))
            out.append(v)
        return out[0], out[1]

    def _indet(self, vectors: list[Sparse]) -> list[tuple]:
        if not self.target.basis:
            return []
        coords = [self.target.coords(self._dense(w)) for w in vectors]
        coords = [c for c in coords if any(c)]
        return span_basis(coords, len(self.target.basis)) if coords else []


class ClassicalMassey(_MasseyBase):
    """⟨a, b, c⟩ in H_dR for d-closed homogeneous a, b, c."""

    kind = "classical"

    def __init__(self, A: Bicomplex, a: Sparse, b: Sparse, c: Sparse):
        super().__init__(A)
        self.a, self.b, self.c = a, b, c
        self.da, self.db, self.dc = (self._deg(v, name) for v, name in ((a, "a"), (b, "b"), (c, "c")))
        for v, name in ((a, "a"), (b, "b"), (c, "c")):
            if A.apply_sparse("d", v):
                raise NotClosed(f"{name} is not d-closed")
        self.ab = A.product_sparse(a, b)
        self.bc = A.product_sparse(b, c)
        self.x0 = self._primitive(self.ab, self.da + self.db, "ab")
        self.y0 = self._primitive(self.bc, self.db + self.dc, "bc")
        self.x_space = self.da + self.db - 1
        self.y_space = self.db + self.dc - 1
        self.degree = self.da + self.db + self.dc - 1
        n = self.degree
        dim = A.degree_dim(n)
        D = A.total_d(n)
        cycles = kernel_basis(D) if D.nrows else _units(dim)
        bounds = A.total_d(n - 1).columns() if A.degree_dim(n - 1) and dim else []
        self.target = _Target(cycles, bounds, dim)
        # [a]·H^{|b|+|c|-1} + H^{|a|+|b|-1}·[c]
        vecs = [A.product_sparse(a, z) for z in self._cohomology_reps(self.y_space)]
        vecs += [A.product_sparse(w, c) for w in self._cohomology_reps(self.x_space)]
        self.indet_coords = self._indet(vecs)

    def _deg(self, v, name):
        k = degree_of(self.A, v)
        if k is None:
            raise MasseyError(f"{name} is zero; give its degree through a nonzero representative")
        return k

    def _dense(self, v: Sparse) -> tuple:
        return self.A.restrict(self.degree, v) if v else tuple([ZERO] * self.A.degree_dim(self.degree))

    def _cohomology_reps(self, k: int) -> list[Sparse]:
        A = self.A
        dim = A.degree_dim(k)
        if not dim:
            return []
        D = A.total_d(k)
        cyc = kernel_basis(D) if D.nrows else _units(dim)
        bnd = A.total_d(k - 1).columns() if A.degree_dim(k - 1) else []
        return [A.embed(k, v) for v in quotient_basis(cyc, bnd, dim)]

    def _primitive(self, prod: Sparse, k: int, name: str) -> Sparse:
        if not prod:
            return {}
        A = self.A
        D = A.total_d(k - 1)
        sol = solve(D, A.restrict(k, prod)) if D.ncols else None
        if sol is None:
            raise ProductObstruction(f"{name} is not d-exact", prod)
        return A.embed(k - 1, sol)

    def check_primitive(self, x: Sparse, target: Sparse) -> bool:
        return not _sub(self.A.apply_sparse("d", x), target)

    def primitive_freedom(self, k: int) -> list[Sparse]:
        """Closed elements of degree k: the freedom in choosing a primitive."""
        A = self.A
        dim = A.degree_dim(k)
        if not dim:
            return []
        D = A.total_d(k)
        return [A.embed(k, v) for v in (kernel_basis(D) if D.nrows else _units(dim))]

    def evaluate(self, x: Sparse | None = None, y: Sparse | None = None) -> MasseyResult:
        x = self.x0 if x is None else x
        y = self.y0 if y is None else y
        if not self.check_primitive(x, self.ab):
            raise MasseyError("dx != ab for the supplied x")
        if not self.check_primitive(y, self.bc):
            raise MasseyError("dy != bc for the supplied y")
        A = self.A
        sign = -1 if self.da % 2 else 1
        rep = _sub(A.product_sparse(self.a, y), _scale(sign, A.product_sparse(x, self.c)))
        return self._finish(rep, x, y)


class ABCMassey(_MasseyBase):
    """⟨α, β, γ⟩_ABC in H_A modulo α·H_A + H_A·γ for ∂- and ∂̄-closed bihomogeneous inputs."""

    kind = "abc"

    def __init__(self, A: Bicomplex, alpha: Sparse, beta: Sparse, gamma: Sparse):
        super().__init__(A)
        self.a, self.b, self.c = alpha, beta, gamma
        bd = []
        for v, name in ((alpha, "alpha"), (beta, "beta"), (gamma, "gamma")):
            pq = bidegree_of(A, v)
            if pq is None:
                raise MasseyError(f"{name} is zero; give a nonzero representative")
            if A.apply_sparse("del", v) or A.apply_sparse("delbar", v):
                raise NotClosed(f"{name} is not both ∂- and ∂̄-closed")
            bd.append(pq)
        (pa, qa), (pb, qb), (pc, qc) = bd
        self.bideg = bd
        self.ab = A.product_sparse(alpha, beta)
        self.bc = A.product_sparse(beta, gamma)
        self.x_space = (pa + pb - 1, qa + qb - 1)
        self.y_space = (pb + pc - 1, qb + qc - 1)
        self.x0 = self._primitive(self.ab, self.x_space, "alpha*beta")
        self.y0 = self._primitive(self.bc, self.y_space, "beta*gamma")
        self.degree = (pa + pb + pc - 1, qa + qb + qc - 1)
        p, q = self.degree
        dim = A.dim(self.degree)
        K = A.d1((p, q + 1)) @ A.d2(self.degree)
        cycles = kernel_basis(K) if K.nrows else _units(dim)
        rel = []
        if dim:
            rel = A.d1((p - 1, q)).columns() if A.dim((p - 1, q)) else []
            rel += A.d2((p, q - 1)).columns() if A.dim((p, q - 1)) else []
        self.target = _Target(cycles, rel, dim)
        vecs = [A.product_sparse(alpha, z) for z in self.primitive_freedom(self.y_space)]
        vecs += [A.product_sparse(w, gamma) for w in self.primitive_freedom(self.x_space)]
        self.indet_coords = self._indet(vecs)

    def _dense(self, v: Sparse) -> tuple:
        return self.A.restrict_cell(self.degree, v) if v else tuple([ZERO] * self.A.dim(self.degree))

    def _ddbar(self, pq) -> Matrix:
        p, q = pq
        return self.A.d1((p, q + 1)) @ self.A.d2(pq)

    def _primitive(self, prod: Sparse, pq, name: str) -> Sparse:
        if not prod:
            return {}
        A = self.A
        if not A.dim(pq):
            raise ProductObstruction(f"{name} is nonzero but its ∂∂̄-primitive would live in an empty cell", prod)
        M = self._ddbar(pq)
        target = (pq[0] + 1, pq[1] + 1)
        sol = solve(M, A.restrict_cell(target, prod))
        if sol is None:
            raise ProductObstruction(f"{name} is not ∂∂̄-exact (nonzero Bott-Chern class)", prod)
        return A.embed_cell(pq, sol)

    def primitive_freedom(self, pq) -> list[Sparse]:
        """Basis of ker ∂∂̄ on A^{p,q}."""
        A = self.A
        d = A.dim(pq)
        if not d:
            return []
        M = self._ddbar(pq)
        return [A.embed_cell(pq, v) for v in (kernel_basis(M) if M.nrows else _units(d))]

    def check_primitive(self, x: Sparse, target: Sparse) -> bool:
        A = self.A
        return not _sub(A.apply_sparse("del", A.apply_sparse("delbar", x)), target)

    def evaluate(self, x: Sparse | None = None, y: Sparse | None = None) -> MasseyResult:
        x = self.x0 if x is None else x
        y = self.y0 if y is None else y
        if not self.check_primitive(x, self.ab):
            raise MasseyError("∂∂̄x != alpha*beta for the supplied x")
        if not self.check_primitive(y, self.bc):
            raise MasseyError("∂∂̄y != beta*gamma for the supplied y")
        A = self.A
        rep = _sub(A.product_sparse(self.a, y), A.product_sparse(x, self.c))
        return self._finish(rep, x, y)


def _units(n: int) -> list[tuple]:
    from .scalars import ONE

    return [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]


def triple_massey(A: Bicomplex, a: Sparse, b: Sparse, c: Sparse, x=None, y=None) -> MasseyResult:
    return ClassicalMassey(A, a, b, c).evaluate(x, y)


def abc_massey(A: Bicomplex, alpha: Sparse, beta: Sparse, gamma: Sparse, x=None, y=None) -> MasseyResult:
    return ABCMassey(A, alpha, beta, gamma).evaluate(x, y)


def _random_combo(rng: random.Random, vectors: list[Sparse], bound: int, sparse: bool = False) -> Sparse:
    if sparse and len(vectors) > 1:
        vectors = rng.sample(vectors, rng.randint(1, min(2, len(vectors))))
    out: Sparse = {}
    for v in vectors:
        c = rng.randint(-bound, bound)
        if c:
            out = _sub(out, _scale(-c, v))
    return out


def random_defined_triples(A: Bicomplex, kind: str, seed, count: int, bound: int = 2, max_tries: int = 5000):
    """Seeded triples of closed classes whose Massey product is defined.

    Classical triples are drawn from de Rham representatives in degrees 1 and 2,
    ABC triples from Bott-Chern representatives in any bidegree.  Each class is
    a combination of one or two basis representatives (so that products have a
    fair chance of being exact), and each draw adds
    a random exact term so the representatives are not always the canonical ones.
    Triples whose target is empty or whose two products both vanish are skipped.
    Returns a list of prepared problems (``ClassicalMassey`` or ``ABCMassey``).
    """
    from .cohomology import bott_chern, de_rham

    rng = random.Random(seed)
    if kind == "classical":
        tab = de_rham(A, reps=True, check=False)
        pools = {k: [A.embed(k, v) for v in vs] for k, vs in tab.reps.items() if k in (1, 2)}
        exact = {k: A.total_d(k - 1).columns() if A.degree_dim(k - 1) else [] for k in pools}
        exact = {k: [A.embed(k, v) for v in vs] for k, vs in exact.items()}
        build = ClassicalMassey
    elif kind == "abc":
        tab = bott_chern(A, reps=True, check=False)
        pools = {pq: [A.embed_cell(pq, v) for v in vs] for pq, vs in tab.reps.items() if pq != (0, 0)}
        exact = {}
        for p, q in pools:
            M = A.d1((p - 1, q)) @ A.d2((p - 1, q - 1)) if A.dim((p - 1, q - 1)) else None
            exact[(p, q)] = [A.embed_cell((p, q), v) for v in M.columns()] if M is not None and M.nrows else []
        build = ABCMassey
    else:
        raise ValueError("kind must be 'classical' or 'abc'")
    keys = sorted(pools)
    if not keys:
        return []
    out = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        elems = []
        for _ in range(3):
            k = rng.choice(keys)
            v = _random_combo(rng, pools[k], bound, sparse=True)
            v = _sub(v, _scale(-1, _random_combo(rng, exact[k], 1)))
            elems.append(v)
        if any(not v for v in elems):
            continue
        try:
            prob = build(A, *elems)
        except ProductObstruction:
            continue
        if not prob.target.dim or not (prob.ab or prob.bc):
            continue
        out.append(prob)
    return out
