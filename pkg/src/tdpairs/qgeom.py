"""The operators ``B, B*, K, K*`` of a q-geometric pair and the identities they satisfy.

Each operator is defined by prescribing its eigenvalue on every subspace of
one of the six decompositions:

====  ===========  ==================
op    decomposition eigenvalue on U_i
====  ===========  ==================
B     [0*0]        b q^(2i-d)
B*    [D*D]        b* q^(d-2i)
K     [0*D]        q^(2i-d)
K*    [D*0]        q^(2i-d)
====  ===========  ==================

Relations of the form ``(qXY - q^-1 YX)/(q - q^-1) = cI`` are checked as the
residual ``qXY - q^-1 YX - c(q - q^-1)I``, which must be exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import FieldConfig, Matrix, as_scalar, operator_from_eigendata
from .pair import (
    ActionRule as R,
    PairReport,
    TridiagonalPair,
    check_action_table,
    dual_pair_report,
    inverted_q_report,
    verify_tridiagonal_pair,
)
from .report import Check, RelationReport, residual_check


@dataclass(frozen=True)
class OperatorQuartet:
    B: Matrix
    Bstar: Matrix
    K: Matrix
    Kstar: Matrix
    b: Fraction
    bstar: Fraction

    @cached_property
    def Kinv(self) -> Matrix:
        return self.K.inverse()

    @cached_property
    def Kstar_inv(self) -> Matrix:
        return self.Kstar.inverse()

    def as_tuple(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        return (self.B, self.Bstar, self.K, self.Kstar)


def build_quartet(pair: TridiagonalPair, b=1, bstar=1) -> OperatorQuartet:
    b, bstar = as_scalar(b), as_scalar(bstar)
    if b == 0 or bstar == 0:
        raise ValueError("b and b* must be nonzero")
    decs = pair.decompositions
    d, qp = pair.d, pair.cfg.qpow
    up = [qp(2 * i - d) for i in range(d + 1)]
    down = [qp(d - 2 * i) for i in range(d + 1)]
    return OperatorQuartet(
        B=operator_from_eigendata(decs["[0*0]"], [b * x for x in up]),
        Bstar=operator_from_eigendata(decs["[D*D]"], [bstar * x for x in down]),
        K=operator_from_eigendata(decs["[0*D]"], up),
        Kstar=operator_from_eigendata(decs["[D*0]"], up),
        b=b,
        bstar=bstar,
    )


def operators(pair: TridiagonalPair, quartet: OperatorQuartet) -> dict[str, Matrix]:
    return {
        "A": pair.A,
        "A*": pair.Astar,
        "B": quartet.B,
        "B*": quartet.Bstar,
        "K": quartet.K,
        "K^-1": quartet.Kinv,
        "K*": quartet.Kstar,
        "K*^-1": quartet.Kstar_inv,
    }


def coefficients(pair: TridiagonalPair, quartet: OperatorQuartet) -> dict[str, Fraction]:
    return {"a": pair.a, "astar": pair.astar, "b": quartet.b, "bstar": quartet.bstar, "1": Fraction(1)}


def q_commutator_residual(X: Matrix, Y: Matrix, c, cfg: FieldConfig) -> Matrix:
    """``q XY - q^-1 YX - c(q - q^-1) I``."""
    q = cfg.q
    return (X @ Y).scale(q) - (Y @ X).scale(1 / q) - Matrix.identity(X.nrows).scale(as_scalar(c) * (q - 1 / q))


def q_serre_residual(X: Matrix, Y: Matrix, cfg: FieldConfig) -> Matrix:
    """``X^3 Y - [3] X^2 Y X + [3] X Y X^2 - Y X^3``."""
    b3 = cfg.bracket(3)
    X2 = X @ X
    XY = X @ Y
    YX = Y @ X
    return X2 @ XY - (X2 @ YX).scale(b3) + (XY @ X2).scale(b3) - YX @ X2


# (name, X, Y, coefficient keys whose product is c): q XY - q^-1 YX = c (q - q^-1) I
AB_RELATIONS = (
    ("AB", "A", "B", ("a", "b")),
    ("BA*", "B", "A*", ("astar", "b")),
    ("A*B*", "A*", "B*", ("astar", "bstar")),
    ("B*A", "B*", "A", ("a", "bstar")),
)
K_RELATIONS = (
    ("K^-1A", "K^-1", "A", ("a",)),
    ("BK^-1", "B", "K^-1", ("b",)),
    ("KA*", "K", "A*", ("astar",)),
    ("B*K", "B*", "K", ("bstar",)),
)
KSTAR_RELATIONS = (
    ("AK*", "A", "K*", ("a",)),
    ("K*^-1B", "K*^-1", "B", ("b",)),
    ("A*K*^-1", "A*", "K*^-1", ("astar",)),
    ("K*B*", "K*", "B*", ("bstar",)),
)
BILINEAR_RELATIONS = AB_RELATIONS + K_RELATIONS + KSTAR_RELATIONS

SERRE_RELATIONS = (
    ("serre(A,A*)", "A", "A*"),
    ("serre(A*,A)", "A*", "A"),
    ("serre(B,B*)", "B", "B*"),
    ("serre(B*,B)", "B*", "B"),
)


def check_bilinear_relations(pair: TridiagonalPair, quartet: OperatorQuartet, relations=BILINEAR_RELATIONS) -> RelationReport:
    ops = operators(pair, quartet)
    coefs = coefficients(pair, quartet)
    rep = RelationReport()
    for name, x, y, keys in relations:
        c = Fraction(1)
        for k in keys:
            c *= coefs[k]
        rep.add(residual_check(name, q_commutator_residual(ops[x], ops[y], c, pair.cfg)))
    return rep


def check_q_serre(pair: TridiagonalPair, quartet: OperatorQuartet) -> RelationReport:
    ops = operators(pair, quartet)
    rep = RelationReport()
    for name, x, y in SERRE_RELATIONS:
        rep.add(residual_check(name, q_serre_residual(ops[x], ops[y], pair.cfg)))
    return rep


B_ACTION_TABLE = {
    "[0D]": {"B": R(("b", -1), "prev"), "B*": R(("bstar", -1), "next")},
    "[0*D*]": {"B": R(("b", +1), "prev"), "B*": R(("bstar", +1), "next")},
    "[0*D]": {"B": R(("b", +1), "prev"), "B*": R(("bstar", -1), "next")},
    "[0*0]": {"B": R(("b", +1), "zero"), "B*": R(None, "tri")},
    "[D*0]": {"B": R(("b", +1), "next"), "B*": R(("bstar", -1), "prev")},
    "[D*D]": {"B": R(None, "tri"), "B*": R(("bstar", -1), "zero")},
}

K_ACTION_TABLE = {
    "[0D]": {"K": R(("1", +1), "after"), "K^-1": R(("1", -1), "next")},
    "[0*D*]": {"K": R(("1", +1), "prev"), "K^-1": R(("1", -1), "before")},
    "[0*D]": {"K": R(("1", +1), "zero"), "K^-1": R(("1", -1), "zero")},
    "[0*0]": {"K": R(("1", +1), "before"), "K^-1": R(("1", -1), "prev")},
    "[D*0]": {"K": R(None, "upto_next"), "K^-1": R(None, "from_prev")},
    "[D*D]": {"K": R(("1", +1), "next"), "K^-1": R(("1", -1), "after")},
}

KSTAR_ACTION_TABLE = {
    "[0D]": {"K*": R(("1", -1), "prev"), "K*^-1": R(("1", +1), "before")},
    "[0*D*]": {"K*": R(("1", -1), "after"), "K*^-1": R(("1", +1), "next")},
    "[0*D]": {"K*": R(None, "from_prev"), "K*^-1": R(None, "upto_next")},
    "[0*0]": {"K*": R(("1", +1), "after"), "K*^-1": R(("1", -1), "next")},
    "[D*0]": {"K*": R(("1", +1), "zero"), "K*^-1": R(("1", -1), "zero")},
    "[D*D]": {"K*": R(("1", +1), "prev"), "K*^-1": R(("1", -1), "before")},
}


def check_b_action(pair: TridiagonalPair, quartet: OperatorQuartet) -> list[Check]:
    return check_action_table(
        "B/B* action", B_ACTION_TABLE, pair.decompositions,
        operators(pair, quartet), coefficients(pair, quartet), pair.cfg,
    )


def check_k_action(pair: TridiagonalPair, quartet: OperatorQuartet) -> list[Check]:
    ops, coefs, decs = operators(pair, quartet), coefficients(pair, quartet), pair.decompositions
    return check_action_table("K/K^-1 action", K_ACTION_TABLE, decs, ops, coefs, pair.cfg) + check_action_table(
        "K*/K*^-1 action", KSTAR_ACTION_TABLE, decs, ops, coefs, pair.cfg
    )


def check_BBKK_action_tables(pair: TridiagonalPair, quartet: OperatorQuartet) -> list[Check]:
    return check_b_action(pair, quartet) + check_k_action(pair, quartet)


def verify_derived_pair(pair: TridiagonalPair, quartet: OperatorQuartet) -> PairReport:
    """Verify ``B, B*`` as a tridiagonal pair with strings ``b q^(2i-d)``, ``b* q^(d-2i)``.

    A shape differing from the original pair's is added to the failures.
    """
    rep = verify_tridiagonal_pair(quartet.B, quartet.Bstar, pair.cfg, quartet.b, quartet.bstar)
    original = pair.decompositions["[0*D]"].dims
    if rep.shape is not None and rep.shape.rho != original:
        rep.failures.append(f"derived shape {rep.shape.rho} differs from {original}")
        rep.pair = None
    return rep


def involution_checks(pair: TridiagonalPair, quartet: OperatorQuartet) -> list[Check]:
    """Both parameter substitutions that preserve the setup, checked on this instance.

    Swap: ``(A*, A)`` with ``(a*, a)`` and ``(b*, b)`` must give quartet
    ``(B*, B, K^-1, K*^-1)``.  Inversion: ``q -> 1/q`` with ``(b*, b)`` must
    give ``(B*, B, K*^-1, K^-1)``.
    """
    checks = []
    shape = pair.decompositions["[0*D]"].dims
    for label, rep, expected in (
        ("swap", dual_pair_report(pair), (quartet.Bstar, quartet.B, quartet.Kinv, quartet.Kstar_inv)),
        ("q-inversion", inverted_q_report(pair), (quartet.Bstar, quartet.B, quartet.Kstar_inv, quartet.Kinv)),
    ):
        checks.append(Check(f"{label}: transformed pair verifies", rep.ok, detail="; ".join(rep.failures)))
        if rep.pair is None:
            continue
        checks.append(Check(f"{label}: shape preserved", rep.shape.rho == shape, detail=str(rep.shape.rho)))
        got = build_quartet(rep.pair, quartet.bstar, quartet.b).as_tuple()
        for op, g, e in zip(("B", "B*", "K", "K*"), got, expected):
            checks.append(Check(f"{label}: transformed {op}", g == e))
    return checks
