"""Tridiagonal pairs of q-geometric type.

A pair ``A, A*`` on ``Q^n`` is checked against the four tridiagonal-pair
axioms, with eigenvalue strings ``theta_i = a q^(2i-d)`` and
``theta*_i = a* q^(d-2i)``.  Irreducibility is certified by the Burnside
criterion: the unital algebra generated by ``A, A*`` must be all of
``Mat_n``.  A verified pair yields the six decompositions ``[0D] ... [D*D]``
built from partial eigenspace sums.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .linalg import (
    Decomposition,
    EchelonBasis,
    FieldConfig,
    Matrix,
    Subspace,
    as_scalar,
    direct_sum_check,
    eigenspace,
    kernel,
    maps_into,
    rational_eigenvalues,
    subspace_intersect,
    subspace_sum,
)
from .report import Check, Falsification

DECOMPOSITION_NAMES = ("[0D]", "[0*D*]", "[0*D]", "[0*0]", "[D*0]", "[D*D]")


class OrderingError(ValueError):
    """No ordering of the eigenspaces makes the pair act tridiagonally."""


@dataclass(frozen=True)
class ShapeVector:
    rho: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.rho) - 1

    def is_symmetric(self) -> bool:
        return self.rho == self.rho[::-1]

    def is_unimodal(self) -> bool:
        return all(self.rho[i - 1] <= self.rho[i] for i in range(1, self.d // 2 + 1))

    def __iter__(self):
        return iter(self.rho)

    def __eq__(self, other):
        if isinstance(other, ShapeVector):
            return self.rho == other.rho
        if isinstance(other, tuple):
            return self.rho == other
        return NotImplemented

    def __hash__(self):
        return hash(self.rho)

    def __repr__(self):
        return f"ShapeVector{self.rho}"


@dataclass(frozen=True)
class TridiagonalPair:
    """A verified pair together with its standard eigenspace orderings.

    Build these through :func:`verify_tridiagonal_pair` (or
    :meth:`from_matrices`), which only returns a pair once every axiom holds.
    """

    cfg: FieldConfig
    d: int
    A: Matrix
    Astar: Matrix
    a: Fraction
    astar: Fraction
    theta: tuple[Fraction, ...]
    theta_star: tuple[Fraction, ...]
    V: tuple[Subspace, ...]
    Vstar: tuple[Subspace, ...]

    @classmethod
    def from_matrices(cls, A: Matrix, Astar: Matrix, cfg: FieldConfig, a=1, astar=1) -> "TridiagonalPair":
        report = verify_tridiagonal_pair(A, Astar, cfg, a, astar)
        if report.pair is None:
            raise ValueError("not a tridiagonal pair: " + "; ".join(report.failures))
        return report.pair

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def q(self) -> Fraction:
        return self.cfg.q

    def family_span(self, family: str, lo: int, hi: int) -> Subspace:
        spaces = self.V if family == "V" else self.Vstar
        lo, hi = max(lo, 0), min(hi, self.d)
        return subspace_sum(spaces[lo : hi + 1] if lo <= hi else [], self.n)

    @cached_property
    def decompositions(self) -> dict[str, Decomposition]:
        return compute_decompositions(self)


@dataclass
class PairReport:
    diagonalizable_A: bool = False
    diagonalizable_Astar: bool = False
    tridiagonal_Astar: bool = False  # A* V_i within V_{i-1} + V_i + V_{i+1}
    tridiagonal_A: bool = False  # A V*_i within V*_{i-1} + V*_i + V*_{i+1}
    irreducible: bool = False
    irreducibility: str = "inconclusive"  # irreducible | reducible | inconclusive
    algebra_dim: int = 0
    d: int | None = None
    shape: ShapeVector | None = None
    failures: list[str] = field(default_factory=list)
    pair: TridiagonalPair | None = None

    @property
    def ok(self) -> bool:
        return (
            self.diagonalizable_A
            and self.diagonalizable_Astar
            and self.tridiagonal_Astar
            and self.tridiagonal_A
            and self.irreducible
            and not self.failures
        )

    def checks(self) -> list[Check]:
        fails = "; ".join(self.failures)
        return [
            Check("A diagonalizable with string a q^(2i-d)", self.diagonalizable_A),
            Check("A* diagonalizable with string a* q^(d-2i)", self.diagonalizable_Astar),
            Check("A* acts tridiagonally on eigenspaces of A", self.tridiagonal_Astar),
            Check("A acts tridiagonally on eigenspaces of A*", self.tridiagonal_A),
            Check(
                "no common invariant subspace (Burnside)",
                self.irreducible,
                detail=f"algebra dimension {self.algebra_dim}, verdict {self.irreducibility}",
            ),
            Check("no further findings", not self.failures, detail=fails),
        ]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "d": self.d,
            "shape": list(self.shape.rho) if self.shape else None,
            "algebra_dim": self.algebra_dim,
            "irreducibility": self.irreducibility,
            "failures": list(self.failures),
        }


# ---------------------------------------------------------------------------
# Burnside test


def algebra_closure(A: Matrix, Astar: Matrix) -> list[Matrix]:
    """A basis of words for the unital algebra generated by ``A`` and ``A*``.

    Starts from ``I`` and left-multiplies by each generator until the span
    stops growing.
    """
    if not (A.is_square and A.shape == Astar.shape):
        raise ValueError("A and A* must be square of equal size")
    n = A.nrows
    full = n * n
    ident = Matrix.identity(n)
    span = EchelonBasis(full)
    span.add(ident.flat())
    words = [ident]
    queue = deque([ident])
    while queue and len(words) < full:
        w = queue.popleft()
        for g in (A, Astar):
            p = g @ w
            if span.add(p.flat()):
                words.append(p)
                queue.append(p)
                if len(words) == full:
                    break
    return words


def generated_algebra_dimension(A: Matrix, Astar: Matrix) -> int:
    return len(algebra_closure(A, Astar))


def is_invariant(W: Subspace, *ops: Matrix) -> bool:
    return all(maps_into(op, W, W) for op in ops)


def cyclic_submodule(words: Sequence[Matrix], v: Sequence) -> Subspace:
    return Subspace(len(v), (w @ v for w in words))


def find_invariant_subspace(A: Matrix, Astar: Matrix, words: Sequence[Matrix] | None = None) -> Subspace | None:
    """Search for a rational proper nonzero subspace invariant under ``A`` and ``A*``.

    Candidates are cyclic submodules of coordinate vectors and of
    eigenvectors of the algebra basis elements, plus annihilators of the
    corresponding submodules for the transposed pair.  A miss proves nothing.
    """
    n = A.nrows
    if words is None:
        words = algebra_closure(A, Astar)
    twords = [w.T for w in words]

    def seeds(mats):
        for j in range(n):
            yield tuple(Fraction(int(i == j)) for i in range(n))
        for w in mats:
            for lam in rational_eigenvalues(w):
                yield from eigenspace(w, lam).echelon

    for v in seeds(words):
        W = cyclic_submodule(words, v)
        if 0 < W.dim < n:
            return W
    for v in seeds(twords):
        W = cyclic_submodule(twords, v)
        if 0 < W.dim < n:
            return kernel(Matrix(W.echelon, n))
    return None


def irreducibility_verdict(A: Matrix, Astar: Matrix) -> tuple[str, int, Subspace | None]:
    """``("irreducible" | "reducible" | "inconclusive", algebra_dim, witness)``."""
    words = algebra_closure(A, Astar)
    n = A.nrows
    if len(words) == n * n:
        return "irreducible", len(words), None
    witness = find_invariant_subspace(A, Astar, words)
    return ("reducible" if witness is not None else "inconclusive"), len(words), witness


# ---------------------------------------------------------------------------
# Verification


def q_string_eigenspaces(M: Matrix, coef: Fraction, sign: int, cfg: FieldConfig):
    """Find ``d`` with ``M`` diagonalizable on eigenvalues ``coef q^(sign(2i-d))``, i=0..d.

    Returns ``(d, eigenvalues, eigenspaces)`` or None.
    """
    n = M.nrows
    for d in range(n):
        vals, spaces, total = [], [], 0
        for i in range(d + 1):
            lam = coef * cfg.qpow(sign * (2 * i - d))
            sp = eigenspace(M, lam)
            if sp.dim == 0:
                break
            vals.append(lam)
            spaces.append(sp)
            total += sp.dim
        else:
            if total == n:
                return d, tuple(vals), tuple(spaces)
    return None


def _tridiagonal_on(X: Matrix, spaces: Sequence[Subspace]) -> list[int]:
    n = X.nrows
    bad = []
    for i, sp in enumerate(spaces):
        target = subspace_sum(list(spaces[max(i - 1, 0) : i + 2]), n)
        if not maps_into(X, sp, target):
            bad.append(i)
    return bad


def verify_tridiagonal_pair(A: Matrix, Astar: Matrix, cfg: FieldConfig, a=1, astar=1) -> PairReport:
    """Check the tridiagonal-pair axioms for ``A, A*`` with the q-geometric strings.

    Dimension mismatch raises ``ValueError``; every other failure is recorded
    in the returned report.  ``report.pair`` is set only when all axioms hold.
    """
    if not (A.is_square and Astar.is_square and A.shape == Astar.shape):
        raise ValueError(f"A and A* must be square of equal size, got {A.shape} and {Astar.shape}")
    a, astar = as_scalar(a), as_scalar(astar)
    if a == 0 or astar == 0:
        raise ValueError("a and a* must be nonzero")
    rep = PairReport()

    sa = q_string_eigenspaces(A, a, +1, cfg)
    ss = q_string_eigenspaces(Astar, astar, -1, cfg)
    rep.diagonalizable_A = sa is not None
    rep.diagonalizable_Astar = ss is not None
    if sa is None:
        rep.failures.append(f"eigenvalue string: A is not diagonalizable with eigenvalues {a}*q^(2i-d)")
    if ss is None:
        rep.failures.append(f"eigenvalue string: A* is not diagonalizable with eigenvalues {astar}*q^(d-2i)")

    if sa is not None and ss is not None:
        if sa[0] != ss[0]:
            rep.failures.append(f"diameters differ: A has d={sa[0]}, A* has d={ss[0]}")
        else:
            rep.d = sa[0]
            bad = _tridiagonal_on(Astar, sa[2])
            rep.tridiagonal_Astar = not bad
            if bad:
                rep.failures.append(f"A* V_i not within V_(i-1)+V_i+V_(i+1) for i in {bad}")
            bad = _tridiagonal_on(A, ss[2])
            rep.tridiagonal_A = not bad
            if bad:
                rep.failures.append(f"A V*_i not within V*_(i-1)+V*_i+V*_(i+1) for i in {bad}")

    verdict, dim, witness = irreducibility_verdict(A, Astar)
    rep.algebra_dim = dim
    rep.irreducibility = verdict
    rep.irreducible = verdict == "irreducible"
    if not rep.irreducible:
        msg = f"irreducibility: generated algebra has dimension {dim} < {A.nrows ** 2} ({verdict})"
        if witness is not None:
            msg += f"; invariant subspace of dimension {witness.dim}"
        rep.failures.append(msg)

    if not rep.failures:
        pair = TridiagonalPair(
            cfg=cfg, d=rep.d, A=A, Astar=Astar, a=a, astar=astar,
            theta=sa[1], theta_star=ss[1], V=sa[2], Vstar=ss[2],
        )
        dims = {name: dec.dims for name, dec in pair.decompositions.items()}
        if len(set(dims.values())) != 1 or not all(dec.is_valid() for dec in pair.decompositions.values()):
            rep.failures.append(f"decomposition dimensions disagree: {dims}")
        else:
            rep.shape = ShapeVector(dims["[0*D]"])
            rep.pair = pair
    return rep


def standard_ordering_search(A: Matrix, Astar: Matrix) -> list[tuple[Fraction, Subspace]]:
    """Order the eigenspaces of ``A`` so that ``A*`` acts tridiagonally.

    The graph joining eigenspaces ``V_i, V_j`` whenever ``A* V_i`` has a
    nonzero component in ``V_j`` must be a path; its two traversals are the
    only standard orderings.  The one starting at the smaller eigenvalue is
    returned.  Raises :class:`OrderingError` otherwise.
    """
    n = A.nrows
    eig = sorted(rational_eigenvalues(A))
    spaces = [eigenspace(A, lam) for lam in eig]
    if sum(s.dim for s in spaces) != n:
        raise OrderingError("A is not diagonalizable over the rationals")
    if sum(eigenspace(Astar, lam).dim for lam in rational_eigenvalues(Astar)) != n:
        raise OrderingError("A* is not diagonalizable over the rationals")
    k = len(spaces)
    dec = Decomposition("eigen", tuple(spaces))
    P = dec.change_of_basis()
    C = P.inverse() @ Astar @ P
    offs = [0]
    for s in spaces:
        offs.append(offs[-1] + s.dim)
    adj: dict[int, set[int]] = {i: set() for i in range(k)}
    for i in range(k):
        for j in range(k):
            if i != j and any(
                C[r, c] for r in range(offs[j], offs[j + 1]) for c in range(offs[i], offs[i + 1])
            ):
                adj[i].add(j)
                adj[j].add(i)
    if k == 1:
        return [(eig[0], spaces[0])]
    nedges = sum(len(v) for v in adj.values()) // 2
    ends = [i for i in range(k) if len(adj[i]) == 1]
    if nedges != k - 1 or any(len(v) > 2 for v in adj.values()) or len(ends) != 2:
        raise OrderingError("eigenspace adjacency graph is not a path")
    order = [min(ends)]
    prev = None
    while len(order) < k:
        nxt = [j for j in adj[order[-1]] if j != prev]
        if not nxt:
            raise OrderingError("eigenspace adjacency graph is disconnected")
        prev = order[-1]
        order.append(nxt[0])
    return [(eig[i], spaces[i]) for i in order]


# ---------------------------------------------------------------------------
# The six decompositions

# prefix sum U_0+...+U_i and suffix sum U_i+...+U_d, as (family, lo, hi)
SUM_TABLE = {
    "[0D]": (("V", "0", "i"), ("V", "i", "d")),
    "[0*D*]": (("V*", "0", "i"), ("V*", "i", "d")),
    "[0*D]": (("V*", "0", "i"), ("V", "i", "d")),
    "[0*0]": (("V*", "0", "i"), ("V", "0", "d-i")),
    "[D*0]": (("V*", "d-i", "d"), ("V", "0", "d-i")),
    "[D*D]": (("V*", "d-i", "d"), ("V", "i", "d")),
}

_INDEX = {"0": lambda i, d: 0, "i": lambda i, d: i, "d": lambda i, d: d, "d-i": lambda i, d: d - i}


def _range_span(pair: TridiagonalPair, spec, i: int) -> Subspace:
    fam, lo, hi = spec
    return pair.family_span(fam, _INDEX[lo](i, pair.d), _INDEX[hi](i, pair.d))


def compute_decompositions(pair: TridiagonalPair) -> dict[str, Decomposition]:
    d = pair.d
    out = {
        "[0D]": Decomposition("[0D]", pair.V),
        "[0*D*]": Decomposition("[0*D*]", pair.Vstar),
    }
    for name in DECOMPOSITION_NAMES[2:]:
        pre, suf = SUM_TABLE[name]
        out[name] = Decomposition(
            name,
            tuple(subspace_intersect(_range_span(pair, pre, i), _range_span(pair, suf, i)) for i in range(d + 1)),
        )
    return out


def check_decompositions(pair: TridiagonalPair) -> list[Check]:
    """Direct-sum property, partial-sum table and shape laws for all six decompositions."""
    decs = pair.decompositions
    checks = []
    for name in DECOMPOSITION_NAMES:
        dec = decs[name]
        checks.append(Check(f"{name} is a decomposition", dec.is_valid(), detail=f"dims {dec.dims}"))
        pre, suf = SUM_TABLE[name]
        bad = [
            i
            for i in range(pair.d + 1)
            if dec.span(0, i) != _range_span(pair, pre, i) or dec.span(i, pair.d) != _range_span(pair, suf, i)
        ]
        checks.append(Check(f"{name} partial sums", not bad, detail=f"fails at i={bad}" if bad else ""))
    dims = {decs[name].dims for name in DECOMPOSITION_NAMES}
    checks.append(Check("shape independent of decomposition", len(dims) == 1, detail=str(sorted(dims))))
    sv = ShapeVector(decs["[0*D]"].dims)
    checks.append(Check("shape symmetric and unimodal", sv.is_symmetric() and sv.is_unimodal(), detail=str(sv.rho)))
    return checks


@dataclass(frozen=True)
class ActionRule:
    """``(X - c q^(s(2i-d)) I) U_i`` lies in ``target``; ``shift=None`` means plain ``X U_i``.

    ``shift`` is ``(coefficient_key, s)``.  Targets: ``zero``, ``prev``
    (U_{i-1}), ``next`` (U_{i+1}), ``tri`` (U_{i-1}+U_i+U_{i+1}), ``before``
    (U_0+..+U_{i-1}), ``after`` (U_{i+1}+..+U_d), ``upto_next``
    (U_0+..+U_{i+1}), ``from_prev`` (U_{i-1}+..+U_d).
    """

    shift: tuple[str, int] | None
    target: str


_TARGETS = {
    "zero": lambda dec, i: Subspace.zero(dec.ambient_dim),
    "prev": lambda dec, i: dec[i - 1],
    "next": lambda dec, i: dec[i + 1],
    "tri": lambda dec, i: dec.span(i - 1, i + 1),
    "before": lambda dec, i: dec.span(0, i - 1),
    "after": lambda dec, i: dec.span(i + 1, dec.d),
    "upto_next": lambda dec, i: dec.span(0, i + 1),
    "from_prev": lambda dec, i: dec.span(i - 1, dec.d),
}

R = ActionRule

A_ACTION_TABLE = {
    "[0D]": {"A": R(("a", +1), "zero"), "A*": R(None, "tri")},
    "[0*D*]": {"A": R(None, "tri"), "A*": R(("astar", -1), "zero")},
    "[0*D]": {"A": R(("a", +1), "next"), "A*": R(("astar", -1), "prev")},
    "[0*0]": {"A": R(("a", -1), "next"), "A*": R(("astar", -1), "prev")},
    "[D*0]": {"A": R(("a", -1), "next"), "A*": R(("astar", +1), "prev")},
    "[D*D]": {"A": R(("a", +1), "next"), "A*": R(("astar", +1), "prev")},
}


def check_action_table(
    label: str,
    table: Mapping[str, Mapping[str, ActionRule]],
    decs: Mapping[str, Decomposition],
    operators: Mapping[str, Matrix],
    coefs: Mapping[str, Fraction],
    cfg: FieldConfig,
) -> list[Check]:
    """One check per (row, operator) of an action table; failing ``i`` go in the detail."""
    checks = []
    for dec_name, rules in table.items():
        dec = decs[dec_name]
        d = dec.d
        for op_name, rule in rules.items():
            X = operators[op_name]
            bad = []
            for i in range(d + 1):
                if rule.shift is None:
                    Y = X
                else:
                    key, s = rule.shift
                    Y = X.shift(coefs[key] * cfg.qpow(s * (2 * i - d)))
                if not maps_into(Y, dec[i], _TARGETS[rule.target](dec, i)):
                    bad.append(i)
            checks.append(
                Check(f"{label} {dec_name} {op_name}", not bad, detail=f"fails at i={bad}" if bad else "")
            )
    return checks


def pair_coefficients(pair: TridiagonalPair) -> dict[str, Fraction]:
    return {"a": pair.a, "astar": pair.astar, "1": Fraction(1)}


def check_a_action(pair: TridiagonalPair) -> list[Check]:
    return check_action_table(
        "A/A* action", A_ACTION_TABLE, pair.decompositions,
        {"A": pair.A, "A*": pair.Astar}, pair_coefficients(pair), pair.cfg,
    )


def six_decompositions(pair: TridiagonalPair) -> list[Decomposition]:
    """The six decompositions in canonical order, after checking every table entry.

    Raises :class:`Falsification` if any decomposition, partial-sum or action
    entry fails.
    """
    checks = check_decompositions(pair) + check_a_action(pair)
    bad = [c for c in checks if not c.passed]
    if bad:
        raise Falsification("decomposition tables failed: " + ", ".join(c.name for c in bad), bad)
    return [pair.decompositions[name] for name in DECOMPOSITION_NAMES]


def shape(pair: TridiagonalPair) -> ShapeVector:
    """Dimensions of the ``[0*D]`` subspaces, cross-checked on all six decompositions."""
    dims = {name: dec.dims for name, dec in pair.decompositions.items()}
    if len(set(dims.values())) != 1:
        raise Falsification(f"shape depends on the decomposition: {dims}")
    return ShapeVector(dims["[0*D]"])


def dual_pair_report(pair: TridiagonalPair) -> PairReport:
    """Verify ``(A*, A)`` with ``(a*, a)``: the swap that reverses both orderings."""
    return verify_tridiagonal_pair(pair.Astar, pair.A, pair.cfg, pair.astar, pair.a)


def inverted_q_report(pair: TridiagonalPair) -> PairReport:
    """Verify ``(A, A*)`` with ``q`` replaced by ``1/q`` (both orderings reversed)."""
    return verify_tridiagonal_pair(pair.A, pair.Astar, FieldConfig(1 / pair.q), pair.a, pair.astar)
