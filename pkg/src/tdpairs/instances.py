"""Concrete modules and the tridiagonal pairs they carry.

Evaluation modules use the basis ``v_0..v_d`` with

    K_1 v_i = q^(d-2i) v_i,   K_0 = K_1^-1,
    e_1^+ v_i = [i] v_(i-1),  e_1^- v_i = [d-i] v_(i+1),
    e_0^+ = t e_1^-,          e_0^- = t^-1 e_1^+.

Tensor products use the coproduct ``K -> K(x)K``, ``e^+ -> e^+(x)K + 1(x)e^+``,
``e^- -> e^-(x)1 + K^-1(x)e^-``, folded from the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import FieldConfig, Matrix, as_scalar, kernel
from .pair import PairReport, verify_tridiagonal_pair
from .report import Falsification, matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json
from .uq import (
    VARIANTS,
    ChevalleyOctet,
    alternate_from_chevalley,
    check_chevalley_relations,
    weight_decomposition,
)


@dataclass(frozen=True)
class ModuleSpec:
    """A tensor product of evaluation modules, one ``(d, t)`` per factor."""

    factors: tuple[tuple[int, Fraction], ...]
    cfg: FieldConfig = field(default_factory=FieldConfig)

    def __post_init__(self):
        facs = tuple((int(d), as_scalar(t)) for d, t in self.factors)
        if not facs:
            raise ValueError("a module spec needs at least one factor")
        for d, t in facs:
            _validate_factor(d, t)
        object.__setattr__(self, "factors", facs)

    @property
    def dim(self) -> int:
        n = 1
        for d, _ in self.factors:
            n *= d + 1
        return n

    def to_json(self) -> dict:
        return {
            "q": scalar_to_json(self.cfg.q),
            "factors": [{"d": d, "t": scalar_to_json(t)} for d, t in self.factors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModuleSpec":
        cfg = FieldConfig(scalar_from_json(obj.get("q", 2)))
        return cls(tuple((int(f["d"]), scalar_from_json(f["t"])) for f in obj["factors"]), cfg)


def _validate_factor(d: int, t: Fraction) -> None:
    if d < 1:
        raise ValueError("d must be ≥ 1")
    if t == 0:
        raise ValueError("t must be nonzero")


def _require_relations(oct: ChevalleyOctet, cfg: FieldConfig, what: str) -> ChevalleyOctet:
    rep = check_chevalley_relations(oct, cfg)
    if not rep.passed:
        raise Falsification(f"{what} violates {rep.failures()}", rep.checks)
    return oct


def evaluation_module(d: int, t, cfg: FieldConfig) -> ChevalleyOctet:
    t = as_scalar(t)
    _validate_factor(d, t)
    n = d + 1
    K1 = Matrix.diag([cfg.qpow(d - 2 * i) for i in range(n)])
    K1inv = Matrix.diag([cfg.qpow(2 * i - d) for i in range(n)])
    up = [[Fraction(0)] * n for _ in range(n)]
    down = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if i > 0:
            up[i - 1][i] = cfg.bracket(i)
        if i < d:
            down[i + 1][i] = cfg.bracket(d - i)
    e1p, e1m = Matrix(up), Matrix(down)
    oct = ChevalleyOctet(
        e0p=e1m.scale(t), e1p=e1p, e0m=e1p.scale(1 / t), e1m=e1m,
        K0=K1inv, K1=K1, K0inv=K1, K1inv=K1inv,
    )
    return _require_relations(oct, cfg, f"evaluation module d={d}, t={t}")


def tensor_octets(left: ChevalleyOctet, right: ChevalleyOctet) -> ChevalleyOctet:
    il, ir = Matrix.identity(left.dim), Matrix.identity(right.dim)
    parts = {}
    for i in (0, 1):
        parts[f"e{i}p"] = left.e(i, "+").kron(right.K(i)) + il.kron(right.e(i, "+"))
        parts[f"e{i}m"] = left.e(i, "-").kron(ir) + left.Kinv(i).kron(right.e(i, "-"))
        parts[f"K{i}"] = left.K(i).kron(right.K(i))
        parts[f"K{i}inv"] = left.Kinv(i).kron(right.Kinv(i))
    return ChevalleyOctet(**parts)


def tensor_module(spec: ModuleSpec) -> ChevalleyOctet:
    cfg = spec.cfg
    mods = [evaluation_module(d, t, cfg) for d, t in spec.factors]
    oct = mods[0]
    for m in mods[1:]:
        oct = tensor_octets(oct, m)
    if len(mods) > 1:
        _require_relations(oct, cfg, f"tensor module {spec.factors}")
    return oct


def tdpair_from_module(
    oct: ChevalleyOctet, a=1, astar=1, variant: str = "minus", cfg: FieldConfig | None = None
) -> tuple[Matrix, Matrix, PairReport]:
    """The pair ``(A, A*)`` a type (1,1) module carries, and its verification report.

    ``minus``: ``A = a y_1^-``, ``A* = a* y_0^-``; ``plus``: ``A = a y_0^+``,
    ``A* = a* y_1^+``.  A module whose pair is not irreducible still yields
    matrices; the report says so.
    """
    cfg = cfg or FieldConfig()
    a, astar = as_scalar(a), as_scalar(astar)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    alt = alternate_from_chevalley(oct, cfg)
    wd = weight_decomposition(alt, cfg)
    if wd.type != (1, 1):
        raise ValueError(f"module has type ({wd.eps0}, {wd.eps1}), expected (1, 1)")
    if variant == "minus":
        A, Astar = alt.y1m.scale(a), alt.y0m.scale(astar)
    else:
        A, Astar = alt.y0p.scale(a), alt.y1p.scale(astar)
    return A, Astar, verify_tridiagonal_pair(A, Astar, cfg, a, astar)


# ---------------------------------------------------------------------------
# Instance files


@dataclass
class Instance:
    A: Matrix
    Astar: Matrix
    cfg: FieldConfig
    a: Fraction = Fraction(1)
    astar: Fraction = Fraction(1)
    d: int | None = None
    provenance: dict | None = None

    def to_json(self) -> dict:
        out = {
            "q": scalar_to_json(self.cfg.q),
            "d": self.d,
            "a": scalar_to_json(self.a),
            "astar": scalar_to_json(self.astar),
            "A": matrix_to_json(self.A),
            "Astar": matrix_to_json(self.Astar),
        }
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, obj) -> "Instance":
        if not isinstance(obj, dict):
            raise ValueError("instance must be a JSON object")
        missing = [k for k in ("q", "A", "Astar") if k not in obj]
        if missing:
            raise ValueError(f"instance is missing {missing}")
        A, Astar = matrix_from_json(obj["A"]), matrix_from_json(obj["Astar"])
        if not A.is_square or A.shape != Astar.shape:
            raise ValueError("A and Astar must be square matrices of equal size")
        d = obj.get("d")
        if d is not None and (isinstance(d, bool) or not isinstance(d, int)):
            raise ValueError("d must be an integer")
        return cls(
            A, Astar, FieldConfig(scalar_from_json(obj["q"])),
            scalar_from_json(obj.get("a", 1)), scalar_from_json(obj.get("astar", 1)),
            d, obj.get("provenance"),
        )


def instance_from_spec(spec: ModuleSpec, a=1, astar=1, variant: str = "minus") -> tuple[Instance, PairReport]:
    A, Astar, rep = tdpair_from_module(tensor_module(spec), a, astar, variant, spec.cfg)
    prov = {"module": spec.to_json(), "variant": variant}
    return Instance(A, Astar, spec.cfg, as_scalar(a), as_scalar(astar), rep.d, prov), rep


# ---------------------------------------------------------------------------
# Explorations


def default_ratio_grid(cfg: FieldConfig) -> list[Fraction]:
    vals = [cfg.qpow(k) for k in range(-4, 5)] + [Fraction(3), Fraction(1, 3), Fraction(5), Fraction(1, 5)]
    return list(dict.fromkeys(vals))


def scan_irreducibility(grid: Iterable[ModuleSpec], a=1, astar=1, variant: str = "minus") -> list[dict]:
    """One finding per spec: Burnside dimension against ``n^2``, and the shape when it verifies."""
    findings = []
    for spec in grid:
        A, Astar, rep = tdpair_from_module(tensor_module(spec), a, astar, variant, spec.cfg)
        n = A.nrows
        findings.append({
            "module": spec.to_json(),
            "variant": variant,
            "n": n,
            "algebra_dim": rep.algebra_dim,
            "full_algebra": rep.algebra_dim == n * n,
            "irreducibility": rep.irreducibility,
            "tridiagonal_pair": rep.ok,
            "shape": list(rep.shape.rho) if rep.ok and rep.shape is not None else None,
        })
    return findings


@dataclass(frozen=True)
class AntiautResult:
    """``X -> S X^T S^-1`` fixes ``A`` and ``A*`` when ``found``."""

    found: bool
    S: Matrix | None
    symmetric: bool
    solution_dim: int

    def to_json(self) -> dict:
        out = {"found": self.found, "symmetric": self.symmetric, "solution_dim": self.solution_dim}
        if self.S is not None:
            out["S"] = matrix_to_json(self.S)
        return out


def _intertwiner_system(mats: Sequence[Matrix], n: int) -> Matrix:
    # unknown S_rc sits at index r*n + c; each (r, c) of S X^T - X S gives one row
    rows = []
    for X in mats:
        for r in range(n):
            for c in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[r * n + k] += X[c, k]
                    row[k * n + c] -= X[r, k]
                rows.append(row)
    return Matrix(rows)


def find_antiautomorphism(A: Matrix, Astar: Matrix) -> AntiautResult:
    """Search ``S`` invertible with ``S A^T = A S`` and ``S A*^T = A* S``.

    Every antiautomorphism of a full matrix algebra has the form
    ``X -> S X^T S^-1``, so this search is complete.  Basis elements of the
    solution space are tried first, then the combinations ``sum k^j v_j``.
    """
    n = A.nrows
    if not (A.is_square and A.shape == Astar.shape):
        raise ValueError("A and Astar must be square matrices of equal size")
    sol = kernel(_intertwiner_system([A, Astar], n))
    mats = [Matrix([v[r * n:(r + 1) * n] for r in range(n)]) for v in sol.echelon]

    def result(S: Matrix) -> AntiautResult:
        return AntiautResult(True, S, S == S.T, sol.dim)

    for S in mats:
        if S.rank() == n:
            return result(S)
    if len(mats) > 1:
        # det(sum c_j v_j) has degree <= n in each c_j; substituting c_j = k^((n+1)^j)
        # keeps distinct monomials distinct, so a nonzero det stays a nonzero
        # polynomial in k of degree <= n (n+1)^(m-1) and one of these k is not a root
        exps = [(n + 1) ** j for j in range(len(mats))]
        for k in range(1, n * exps[-1] + 2):
            S = Matrix.zeros(n)
            for e, m in zip(exps, mats):
                S = S + m.scale(k ** e)
            if S.rank() == n:
                return result(S)
    return AntiautResult(False, None, False, sol.dim)
