"""Exact Lie-algebra infrastructure.

Structure constants are stored exactly; every constructor is guarded by
``validate_lie``.  Chevalley bases of sl(n) use elementary matrices, so the
trace form gives (e_a, f_a) = 1 for every positive root; compact real forms
su(n) are stored over real rational structure constants by construction.

The algebraic Schouten bracket on wedge powers of g is the pair-sum formula

    [u_1^...^u_p, v_1^...^v_q]
        = sum_{i,j} (-1)^(i+j) [u_i, v_j] ^ u_1..^..u_p ^ v_1..^..v_q,

the same convention as the chart-level bracket: mapping X in g to the
Hamiltonian vector field of its linear function on g* intertwines the two
(that identification is exercised by the test suite).

Drinfeld doubles use the mixed bracket [X, xi] = ad*_X xi - ad*_xi X with
coadjoints defined by <ad*_X xi, Y> = -<xi, [X, Y]>; the exact Jacobi sweep
and the invariance of the canonical pairing pin this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .exactalg import Poly, PolyMultiVec, SCALAR_I, SCALAR_ONE, SCALAR_ZERO, Scalar, sort_with_parity

__all__ = [
    "LieAlgebraData",
    "AlgElement",
    "LinearAlgMap",
    "RootInfo",
    "RootData",
    "LieVerdict",
    "CheckReport",
    "DrinfeldDouble",
    "validate_lie",
    "sl_chevalley",
    "su_compact_basis",
    "so3",
    "abelian",
    "builtin_algebra",
    "BUILTIN_ALGEBRAS",
    "lie_poisson_chart",
    "alg_schouten",
    "ad_action",
    "cobracket",
    "coboundary_check",
    "symmetric_bialgebra_check",
    "drinfeld_double",
    "chi_check",
]


def _is_zero(c) -> bool:
    if isinstance(c, Scalar):
        return c.is_zero()
    return c == 0


def _cmul(a, b):
    if isinstance(a, Scalar) and isinstance(b, (float, complex)):
        return a.to_complex() * b
    if isinstance(b, Scalar) and isinstance(a, (float, complex)):
        return a * b.to_complex()
    return a * b


def _cadd(a, b):
    if isinstance(a, Scalar) and isinstance(b, (float, complex)):
        return a.to_complex() + b
    if isinstance(b, Scalar) and isinstance(a, (float, complex)):
        return a + b.to_complex()
    return a + b


@dataclass(frozen=True)
class RootInfo:
    """One positive root: indices of its raising/lowering basis elements.

    For compact forms the same record points at the (X_a, Y_a) pair instead
    of (e_a, f_a).  ``h_coords`` are the coordinates of h_a = [e_a, f_a] in
    the Cartan basis (for the compact form, of t_a = [X_a, Y_a] / 2).
    """

    pair: tuple[int, int]
    e_index: int
    f_index: int
    d: Fraction
    h_coords: tuple[int, ...]


@dataclass(frozen=True)
class RootData:
    roots: tuple[RootInfo, ...]
    cartan: tuple[int, ...]


class LieAlgebraData:
    """Basis labels plus exact structure constants, with optional extras."""

    def __init__(
        self,
        labels: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, Scalar]],
        matrices: list[linalg.Matrix] | None = None,
        root_data: RootData | None = None,
        name: str = "",
    ):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = {pair: dict(entry) for pair, entry in table.items()}
        self.matrices = matrices
        self.root_data = root_data
        self.name = name

    @staticmethod
    def from_brackets(
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, Scalar]],
        matrices: list[linalg.Matrix] | None = None,
        root_data: RootData | None = None,
        name: str = "",
    ) -> "LieAlgebraData":
        """Build from brackets given on pairs i < j; antisymmetry is filled in."""
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), entry in brackets.items():
            if i == j:
                raise ValueError("diagonal brackets must be omitted (they vanish)")
            clean = {k: Scalar.coerce(c) for k, c in entry.items() if not Scalar.coerce(c).is_zero()}
            if not clean:
                continue
            if (i, j) in table or (j, i) in table:
                raise ValueError(f"bracket ({i}, {j}) given twice")
            table[(i, j)] = clean
            table[(j, i)] = {k: -c for k, c in clean.items()}
        return LieAlgebraData(labels, table, matrices, root_data, name)

    def structure_constant(self, i: int, j: int, k: int) -> Scalar:
        return self.table.get((i, j), {}).get(k, SCALAR_ZERO)

    def bracket_basis(self, i: int, j: int) -> "AlgElement":
        entry = self.table.get((i, j), {})
        return AlgElement(self, 1, {(k,): c for k, c in entry.items()})

    def bracket_vectors(self, u: Sequence, v: Sequence) -> list:
        """Bracket of two coefficient vectors, returned as a coefficient vector."""
        out = [0] * self.dim
        for i, ci in enumerate(u):
            if _is_zero(ci):
                continue
            for j, cj in enumerate(v):
                if _is_zero(cj):
                    continue
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = _cadd(out[k], _cmul(_cmul(ci, cj), c))
        return out

    def numeric_matrices(self) -> list[np.ndarray]:
        if self.matrices is None:
            raise ValueError(f"algebra {self.name or '?'} carries no matrix realization")
        return [
            np.array([[c.to_complex() for c in row] for row in m], dtype=complex)
            for m in self.matrices
        ]

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self) -> str:
        return f"LieAlgebraData({self.name or self.labels}, dim={self.dim})"


class AlgElement:
    """An element of the k-th wedge power of g, on increasing index tuples.

    Coefficients are exact Scalars in the symbolic layer; the same container
    carries floats or complexes in the numeric layer.
    """

    __slots__ = ("algebra", "degree", "comps")

    def __init__(self, algebra: LieAlgebraData, degree: int, comps: Mapping[tuple, object] | None = None):
        clean: dict[tuple, object] = {}
        if comps:
            for idxs, coeff in comps.items():
                idxs = tuple(idxs)
                if len(idxs) != degree:
                    raise ValueError("index tuple length != degree")
                if list(idxs) != sorted(set(idxs)):
                    raise ValueError(f"index tuple {idxs} not strictly increasing")
                if not _is_zero(coeff):
                    clean[idxs] = coeff
        self.algebra = algebra
        self.degree = degree
        self.comps = clean

    @staticmethod
    def zero(algebra: LieAlgebraData, degree: int) -> "AlgElement":
        return AlgElement(algebra, degree)

    @staticmethod
    def basis(algebra: LieAlgebraData, idx: int) -> "AlgElement":
        return AlgElement(algebra, 1, {(idx,): SCALAR_ONE})

    @staticmethod
    def from_terms(algebra: LieAlgebraData, degree: int, items) -> "AlgElement":
        total = AlgElement.zero(algebra, degree)
        for idxs, coeff in items:
            sp = sort_with_parity(idxs)
            if sp is None:
                continue
            key, sign = sp
            total = total + AlgElement(algebra, degree, {key: coeff if sign == 1 else _cmul(-1, coeff)})
        return total

    def _check(self, other: "AlgElement") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("parent algebra mismatch")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        if self.degree != other.degree:
            if not self.comps:
                return other
            if not other.comps:
                return self
            raise ValueError("cannot add elements of different degree")
        out = dict(self.comps)
        for idxs, coeff in other.comps.items():
            acc = _cadd(out.get(idxs, 0), coeff)
            if _is_zero(acc):
                out.pop(idxs, None)
            else:
                out[idxs] = acc
        return AlgElement(self.algebra, self.degree, out)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.algebra, self.degree, {k: _cmul(-1, c) for k, c in self.comps.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def __mul__(self, coeff) -> "AlgElement":
        if _is_zero(coeff):
            return AlgElement.zero(self.algebra, self.degree)
        return AlgElement(self.algebra, self.degree, {k: _cmul(c, coeff) for k, c in self.comps.items()})

    __rmul__ = __mul__

    def wedge(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        out = AlgElement.zero(self.algebra, self.degree + other.degree)
        items = []
        for ia, ca in self.comps.items():
            for ib, cb in other.comps.items():
                items.append((ia + ib, _cmul(ca, cb)))
        return AlgElement.from_terms(self.algebra, self.degree + other.degree, items)

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra is other.algebra and self.comps == other.comps

    def __hash__(self):
        return hash((id(self.algebra), self.degree, frozenset(self.comps)))

    def component(self, idxs: Sequence[int]):
        sp = sort_with_parity(idxs)
        if sp is None:
            return 0
        key, sign = sp
        c = self.comps.get(key, 0)
        return c if sign == 1 else _cmul(-1, c)

    def to_numeric(self) -> "AlgElement":
        return AlgElement(
            self.algebra,
            self.degree,
            {k: (c.to_complex() if isinstance(c, Scalar) else complex(c)) for k, c in self.comps.items()},
        )

    def norm_inf(self) -> float:
        """Largest coefficient magnitude (numeric and exact both supported)."""
        best = 0.0
        for c in self.comps.values():
            mag = abs(c.to_complex()) if isinstance(c, Scalar) else abs(c)
            best = max(best, float(mag))
        return best

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        labels = self.algebra.labels
        chunks = []
        for idxs in sorted(self.comps):
            basis = "^".join(labels[i] for i in idxs) if idxs else "1"
            chunks.append(f"({self.comps[idxs]})*{basis}")
        return " + ".join(chunks)

    __repr__ = __str__


@dataclass(frozen=True)
class LieVerdict:
    ok: bool
    reason: str = ""
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_lie(g: LieAlgebraData) -> LieVerdict:
    """Exact antisymmetry and Jacobi check; returns the first violation."""
    for (i, j), entry in g.table.items():
        if i == j and any(not c.is_zero() for c in entry.values()):
            return LieVerdict(False, f"[x_{i}, x_{i}] != 0", (i, i))
        mirror = g.table.get((j, i), {})
        keys = set(entry) | set(mirror)
        for k in keys:
            if entry.get(k, SCALAR_ZERO) != -mirror.get(k, SCALAR_ZERO):
                return LieVerdict(False, f"antisymmetry fails: c_({i},{j})^{k} != -c_({j},{i})^{k}", (i, j, k))
    def iterated(i: int, j: int, k: int, acc: dict[int, Scalar]) -> None:
        # acc += [[x_i, x_j], x_k], via table lookups only
        for m, c in g.table.get((i, j), {}).items():
            for l, c2 in g.table.get((m, k), {}).items():
                acc[l] = acc.get(l, SCALAR_ZERO) + c * c2

    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                acc: dict[int, Scalar] = {}
                iterated(i, j, k, acc)
                iterated(j, k, i, acc)
                iterated(k, i, j, acc)
                if any(not c.is_zero() for c in acc.values()):
                    return LieVerdict(False, "Jacobi identity fails", (i, j, k))
    return LieVerdict(True)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _elementary(n: int, a: int, b: int) -> linalg.Matrix:
    m = linalg.zeros(n, n)
    m[a][b] = SCALAR_ONE
    return m


def _mat_bracket(x: linalg.Matrix, y: linalg.Matrix) -> linalg.Matrix:
    return linalg.mat_sub(linalg.mat_mul(x, y), linalg.mat_mul(y, x))


def _expand_table(labels, matrices: list[linalg.Matrix]) -> dict:
    """Structure constants by expanding commutators in the given matrix basis."""
    dim = len(matrices)
    n = len(matrices[0])
    basis_cols = [[m[r][c] for m in matrices] for r in range(n) for c in range(n)]
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = _mat_bracket(matrices[i], matrices[j])
            vec = [comm[r][c] for r in range(n) for c in range(n)]
            coords = linalg.solve(basis_cols, vec)
            if coords is None:
                raise AssertionError("commutator left the span of the basis")
            residual = [
                sum((basis_cols[row][k] * coords[k] for k in range(dim)), SCALAR_ZERO) - vec[row]
                for row in range(len(vec))
            ]
            if any(not r.is_zero() for r in residual):
                raise AssertionError("inconsistent expansion")
            entry = {k: c for k, c in enumerate(coords) if not c.is_zero()}
            if entry:
                brackets[(i, j)] = entry
    return brackets


def sl_chevalley(n: int) -> LieAlgebraData:
    """sl(n) in the elementary-matrix Chevalley basis, with root data.

    Basis order: e_(a,b) for positive roots (a < b, lexicographic), then the
    matching f_(a,b), then the Cartan h_1 .. h_(n-1).  The trace form gives
    d_a = (e_a, f_a) = 1 throughout.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    pos = [(a, b) for a in range(n) for b in range(a + 1, n)]
    labels = [f"e{a+1}{b+1}" for a, b in pos] + [f"f{a+1}{b+1}" for a, b in pos] + [
        f"h{m+1}" for m in range(n - 1)
    ]
    mats = [_elementary(n, a, b) for a, b in pos] + [_elementary(n, b, a) for a, b in pos] + [
        linalg.mat_sub(_elementary(n, m, m), _elementary(n, m + 1, m + 1)) for m in range(n - 1)
    ]
    nroots = len(pos)
    roots = []
    for r, (a, b) in enumerate(pos):
        # [E_ab, E_ba] = E_aa - E_bb = h_a + h_(a+1) + ... + h_(b-1)
        h_coords = tuple(1 if a <= m < b else 0 for m in range(n - 1))
        roots.append(RootInfo((a, b), r, nroots + r, Fraction(1), h_coords))
    root_data = RootData(tuple(roots), tuple(range(2 * nroots, 2 * nroots + n - 1)))
    g = LieAlgebraData.from_brackets(labels, _expand_table(labels, mats), mats, root_data, name=f"sl{n}")
    return g


def su_compact_basis(n: int) -> tuple[LieAlgebraData, AlgElement]:
    """su(n) on the basis X_a = e_a - f_a, Y_a = i(e_a + f_a), t_m = i h_m.

    Structure constants come out real rational and are stored that way; the
    returned element is the compact r-matrix sum of d_a/2 X_a ^ Y_a.
    """
    sl = sl_chevalley(n)
    pos = [info.pair for info in sl.root_data.roots]
    nroots = len(pos)
    sl_mats = sl.matrices
    mats = []
    labels = []
    for r, (a, b) in enumerate(pos):
        e_mat, f_mat = sl_mats[r], sl_mats[nroots + r]
        mats.append(linalg.mat_sub(e_mat, f_mat))
        labels.append(f"X{a+1}{b+1}")
    for r, (a, b) in enumerate(pos):
        e_mat, f_mat = sl_mats[r], sl_mats[nroots + r]
        mats.append(linalg.mat_scale(linalg.mat_add(e_mat, f_mat), SCALAR_I))
        labels.append(f"Y{a+1}{b+1}")
    for m in range(n - 1):
        mats.append(linalg.mat_scale(sl_mats[2 * nroots + m], SCALAR_I))
        labels.append(f"t{m+1}")

    brackets = _expand_table(labels, mats)
    for entry in brackets.values():
        for coeff in entry.values():
            if coeff.im != 0:
                raise AssertionError("compact real form produced a non-real constant")
    roots = []
    for r, info in enumerate(sl.root_data.roots):
        roots.append(RootInfo(info.pair, r, nroots + r, info.d, info.h_coords))
    root_data = RootData(tuple(roots), tuple(range(2 * nroots, 2 * nroots + n - 1)))
    g = LieAlgebraData.from_brackets(labels, brackets, mats, root_data, name=f"su{n}")

    r_hat = AlgElement.zero(g, 2)
    for info in g.root_data.roots:
        r_hat = r_hat + AlgElement(g, 2, {(info.e_index, info.f_index): Scalar(Fraction(info.d, 2))})
    return g, r_hat


def so3() -> LieAlgebraData:
    """so(3): [x1, x2] = x3 and cyclic."""
    return LieAlgebraData.from_brackets(
        ["x1", "x2", "x3"],
        {(0, 1): {2: SCALAR_ONE}, (1, 2): {0: SCALAR_ONE}, (0, 2): {1: -SCALAR_ONE}},
        name="so3",
    )


def abelian(dim: int) -> LieAlgebraData:
    return LieAlgebraData.from_brackets([f"a{k+1}" for k in range(dim)], {}, name=f"abelian{dim}")


def builtin_algebra(name: str) -> LieAlgebraData:
    """Programmatic built-ins: sl2, sl3, sl4, su2, su3, so3."""
    try:
        factory = BUILTIN_ALGEBRAS[name]
    except KeyError:
        raise ValueError(f"unknown built-in algebra {name!r}; have {sorted(BUILTIN_ALGEBRAS)}") from None
    return factory()


BUILTIN_ALGEBRAS = {
    "sl2": lambda: sl_chevalley(2),
    "sl3": lambda: sl_chevalley(3),
    "sl4": lambda: sl_chevalley(4),
    "su2": lambda: su_compact_basis(2)[0],
    "su3": lambda: su_compact_basis(3)[0],
    "so3": so3,
}


def standard_r_matrix(g: LieAlgebraData) -> AlgElement:
    """r = sum of d_a e_a ^ f_a over the positive roots."""
    if g.root_data is None:
        raise ValueError("algebra carries no root data")
    r = AlgElement.zero(g, 2)
    for info in g.root_data.roots:
        r = r + AlgElement(g, 2, {(info.e_index, info.f_index): Scalar(info.d)})
    return r


def transpose_antimorphism(g: LieAlgebraData) -> "LinearAlgMap":
    """The involutive anti-morphism swapping e_a with f_a and fixing the Cartan.

    For the compact basis it sends X_a to -X_a and fixes Y_a and t_m; in both
    realizations it is the matrix transpose.
    """
    if g.root_data is None:
        raise ValueError("algebra carries no root data")
    mat = linalg.zeros(g.dim, g.dim)
    for i in range(g.dim):
        mat[i][i] = SCALAR_ONE
    if g.name.startswith("su"):
        for info in g.root_data.roots:
            mat[info.e_index][info.e_index] = -SCALAR_ONE
    else:
        for info in g.root_data.roots:
            mat[info.e_index][info.e_index] = SCALAR_ZERO
            mat[info.f_index][info.f_index] = SCALAR_ZERO
            mat[info.e_index][info.f_index] = SCALAR_ONE
            mat[info.f_index][info.e_index] = SCALAR_ONE
    return LinearAlgMap(g, g, tuple(tuple(row) for row in mat))


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearAlgMap:
    """A linear map between algebras; matrix[i][j] is the i-coefficient of the
    image of basis element j."""

    source: LieAlgebraData
    target: LieAlgebraData
    matrix: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.target.dim or any(len(row) != self.source.dim for row in self.matrix):
            raise ValueError("matrix shape does not match source/target dimensions")

    @staticmethod
    def from_rows(source, target, rows) -> "LinearAlgMap":
        return LinearAlgMap(source, target, tuple(tuple(Scalar.coerce(v) for v in row) for row in rows))

    def rows(self) -> linalg.Matrix:
        return [list(row) for row in self.matrix]

    def apply_vector(self, coeffs: Sequence) -> list:
        out = [0] * self.target.dim
        for j, cj in enumerate(coeffs):
            if _is_zero(cj):
                continue
            for i in range(self.target.dim):
                mij = self.matrix[i][j]
                if not mij.is_zero():
                    out[i] = _cadd(out[i], _cmul(cj, mij))
        return out

    def apply(self, elem: AlgElement) -> AlgElement:
        """Wedge-power action on an element of Lambda^k(source)."""
        if elem.algebra is not self.source:
            raise ValueError("element does not live in the source algebra")
        total = AlgElement.zero(self.target, elem.degree)
        for idxs, coeff in elem.comps.items():
            images = []
            for j in idxs:
                vec = [self.matrix[i][j] for i in range(self.target.dim)]
                images.append(AlgElement(self.target, 1, {(i,): c for i, c in enumerate(vec) if not c.is_zero()}))
            acc = None
            for img in images:
                acc = img if acc is None else acc.wedge(img)
            if acc is None:
                acc = AlgElement(self.target, 0, {(): SCALAR_ONE})
            total = total + acc * coeff
        return total

    def is_involution(self) -> bool:
        if self.source is not self.target:
            return False
        m = self.rows()
        return linalg.mat_eq(linalg.mat_mul(m, m), linalg.identity(self.source.dim))

    def dual(self) -> "LinearAlgMap":
        """The dual map on coefficient vectors of the dual basis (transpose)."""
        return LinearAlgMap(self.target, self.source, tuple(zip(*self.matrix)))


# ---------------------------------------------------------------------------
# algebraic Schouten bracket and r-matrix checks
# ---------------------------------------------------------------------------


def alg_schouten(a: AlgElement, b: AlgElement) -> AlgElement:
    """Graded bracket on wedge powers of g via the pair-sum formula."""
    a._check(b)
    g = a.algebra
    total = AlgElement.zero(g, max(a.degree + b.degree - 1, 0))
    for ia, ca in a.comps.items():
        for ib, cb in b.comps.items():
            cab = _cmul(ca, cb)
            for pi, bi in enumerate(ia):
                rest_a = ia[:pi] + ia[pi + 1 :]
                for pj, bj in enumerate(ib):
                    entry = g.table.get((bi, bj))
                    if not entry:
                        continue
                    rest_b = ib[:pj] + ib[pj + 1 :]
                    sign = -1 if (pi + pj) % 2 else 1
                    for k, c in entry.items():
                        sp = sort_with_parity((k,) + rest_a + rest_b)
                        if sp is None:
                            continue
                        key, s2 = sp
                        coeff = _cmul(cab, c)
                        if sign * s2 < 0:
                            coeff = _cmul(-1, coeff)
                        total = total + AlgElement(g, total.degree, {key: coeff})
    return total


def ad_action(g: LieAlgebraData, basis_index: int, elem: AlgElement) -> AlgElement:
    """ad_{x_b} extended as a derivation of the wedge algebra."""
    return alg_schouten(AlgElement.basis(g, basis_index), elem)


def cobracket(g: LieAlgebraData, r: AlgElement, x: AlgElement) -> AlgElement:
    """delta(x) = [x, r] for a coboundary structure."""
    return alg_schouten(x, r)


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @property
    def reason(self) -> str:
        return "; ".join(self.failures)


def coboundary_check(g: LieAlgebraData, r: AlgElement) -> CheckReport:
    """Verify that [r, r] is ad-invariant: [x_b, [r, r]] = 0 for all b."""
    if r.algebra is not g:
        raise ValueError("r does not live in g")
    if r.degree != 2 and not r.is_zero():
        raise ValueError("r must be a bivector")
    cyb = alg_schouten(r, r)
    failures = []
    for b in range(g.dim):
        defect = ad_action(g, b, cyb)
        if not defect.is_zero():
            failures.append(f"[{g.labels[b]}, [r, r]] = {defect}")
    return CheckReport(not failures, tuple(failures))


def symmetric_bialgebra_check(g: LieAlgebraData, r: AlgElement, phi: LinearAlgMap) -> CheckReport:
    """phi is an involutive anti-morphism with phi r = -r, over a coboundary r."""
    failures = list(coboundary_check(g, r).failures)
    if phi.source is not g or phi.target is not g:
        raise ValueError("phi must be an endomorphism of g")
    if not phi.is_involution():
        failures.append("phi^2 != id")
    for i in range(g.dim):
        vi = [phi.matrix[a][i] for a in range(g.dim)]
        for j in range(i + 1, g.dim):
            vj = [phi.matrix[a][j] for a in range(g.dim)]
            lhs = phi.apply_vector(g.bracket_vectors(
                [SCALAR_ONE if a == i else SCALAR_ZERO for a in range(g.dim)],
                [SCALAR_ONE if a == j else SCALAR_ZERO for a in range(g.dim)],
            ))
            rhs = [-c for c in g.bracket_vectors(vi, vj)]
            if any(x != y for x, y in zip(lhs, rhs)):
                failures.append(f"anti-morphism fails on ({g.labels[i]}, {g.labels[j]})")
    if not (phi.apply(r) + r).is_zero():
        failures.append("phi r != -r")
    return CheckReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# Drinfeld double
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DrinfeldDouble:
    sigma: LieAlgebraData
    base: LieAlgebraData
    r: AlgElement = field(repr=False)
    r_sigma: AlgElement = field(repr=False)

    @property
    def n(self) -> int:
        return self.base.dim

    def pairing(self, u: Sequence, v: Sequence):
        """Canonical pairing <X + xi, Y + eta> = xi(Y) + eta(X)."""
        n = self.n
        total = 0
        for a in range(n):
            total = _cadd(total, _cadd(_cmul(u[a], v[n + a]), _cmul(u[n + a], v[a])))
        return total


def drinfeld_double(g: LieAlgebraData, r: AlgElement) -> DrinfeldDouble:
    """The double sigma = g + g* of the coboundary bialgebra (g, delta = [., r]).

    The construction must always produce a Lie algebra; a failed Jacobi sweep
    aborts, since it can only signal a convention bug.
    """
    report = coboundary_check(g, r)
    if not report:
        raise ValueError(f"r is not an r-matrix: {report.reason}")
    n = g.dim
    labels = list(g.labels) + [f"{name}*" for name in g.labels]

    # gamma[k][(i, j)]: the X_i ^ X_j coefficient of delta(x_k), i < j
    gamma = []
    for k in range(n):
        gamma.append(cobracket(g, r, AlgElement.basis(g, k)))

    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}

    def put(i: int, j: int, entry: dict[int, Scalar]) -> None:
        entry = {k: c for k, c in entry.items() if not c.is_zero()}
        if entry:
            brackets[(i, j)] = entry

    for i in range(n):
        for j in range(i + 1, n):
            put(i, j, dict(g.table.get((i, j), {})))
    for i in range(n):
        for j in range(i + 1, n):
            entry: dict[int, Scalar] = {}
            for k in range(n):
                c = gamma[k].component((i, j))
                if not _is_zero(c):
                    entry[n + k] = Scalar.coerce(c)
            put(n + i, n + j, entry)
    for i in range(n):
        for j in range(n):
            # [X_i, xi^j] = -sum_k c_ik^j xi^k + sum_m gamma_i^{jm} X_m
            entry = {}
            for k in range(n):
                c = g.structure_constant(i, k, j)
                if not c.is_zero():
                    entry[n + k] = entry.get(n + k, SCALAR_ZERO) - c
            for m in range(n):
                c = gamma[i].component((j, m))
                if not _is_zero(c):
                    entry[m] = entry.get(m, SCALAR_ZERO) + Scalar.coerce(c)
            put(i, n + j, {k: c for k, c in entry.items() if not c.is_zero()})

    sigma = LieAlgebraData.from_brackets(labels, brackets, name=f"double({g.name or 'g'})")
    verdict = validate_lie(sigma)
    if not verdict:
        raise AssertionError(f"double failed validate_lie ({verdict.reason}); convention bug")

    r_sigma = AlgElement.from_terms(sigma, 2, [((i, n + i), SCALAR_ONE) for i in range(n)])
    double = DrinfeldDouble(sigma, g, r, r_sigma)

    def pair_basis(x: int, y: int) -> Scalar:
        if x < n and y == n + x:
            return SCALAR_ONE
        if y < n and x == n + y:
            return SCALAR_ONE
        return SCALAR_ZERO

    for a in range(2 * n):
        for b in range(2 * n):
            ab = sigma.table.get((a, b), {})
            for c in range(2 * n):
                lhs = sum((coeff * pair_basis(m, c) for m, coeff in ab.items()), SCALAR_ZERO)
                rhs = sum(
                    (coeff * pair_basis(b, m) for m, coeff in sigma.table.get((a, c), {}).items()),
                    SCALAR_ZERO,
                )
                if not (lhs + rhs).is_zero():
                    raise AssertionError("canonical pairing is not invariant; convention bug")
    return double


def chi_map(double: DrinfeldDouble, phi: LinearAlgMap) -> LinearAlgMap:
    """chi(X + xi) = phi X - phi* xi on the double."""
    n = double.n
    mat = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            mat[i][j] = phi.matrix[i][j]
            mat[n + i][n + j] = -phi.matrix[j][i]
    return LinearAlgMap(double.sigma, double.sigma, tuple(tuple(row) for row in mat))


def chi_check(double: DrinfeldDouble, phi: LinearAlgMap) -> CheckReport:
    """chi is an involutive anti-morphism of the double that flips the pairing."""
    sigma = double.sigma
    chi = chi_map(double, phi)
    failures = []
    if not chi.is_involution():
        failures.append("chi^2 != id")
    dim = sigma.dim
    for i in range(dim):
        vi = [chi.matrix[a][i] for a in range(dim)]
        ei = [SCALAR_ONE if a == i else SCALAR_ZERO for a in range(dim)]
        for j in range(i + 1, dim):
            vj = [chi.matrix[a][j] for a in range(dim)]
            ej = [SCALAR_ONE if a == j else SCALAR_ZERO for a in range(dim)]
            lhs = chi.apply_vector(sigma.bracket_vectors(ei, ej))
            rhs = [-Scalar.coerce(c) for c in sigma.bracket_vectors(vi, vj)]
            if any(Scalar.coerce(x) != y for x, y in zip(lhs, rhs)):
                failures.append(f"chi anti-morphism fails on ({sigma.labels[i]}, {sigma.labels[j]})")
        for j in range(dim):
            vj = [chi.matrix[a][j] for a in range(dim)]
            ej = [SCALAR_ONE if a == j else SCALAR_ZERO for a in range(dim)]
            lhs = double.pairing(vi, vj)
            rhs = double.pairing(ei, ej)
            if not (Scalar.coerce(lhs) + Scalar.coerce(rhs)).is_zero():
                failures.append(f"pairing flip fails on ({sigma.labels[i]}, {sigma.labels[j]})")
    return CheckReport(not failures, tuple(failures))


def lie_poisson_chart(g: LieAlgebraData):
    """The Lie-Poisson chart on g*: {x_i, x_j} = sum_k c_ij^k x_k."""
    from .poisson import PoissonChart

    verdict = validate_lie(g)
    if not verdict:
        raise ValueError(f"structure constants invalid: {verdict.reason}")
    comps = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            entry = g.table.get((i, j), {})
            poly = Poly(g.dim, {tuple(int(a == k) for a in range(g.dim)): c for k, c in entry.items()})
            if not poly.is_zero():
                comps[(i, j)] = poly
    pi = PolyMultiVec(g.dim, 2, comps)
    return PoissonChart(g.dim, tuple(g.labels), pi)
