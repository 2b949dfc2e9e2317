"""Run every verification stage on one instance and collect the results by group."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .instances import Instance, tdpair_from_module
from .linalg import as_scalar
from .pair import check_a_action, check_decompositions, verify_tridiagonal_pair
from .qgeom import (
    AB_RELATIONS,
    K_RELATIONS,
    KSTAR_RELATIONS,
    build_quartet,
    check_b_action,
    check_bilinear_relations,
    check_k_action,
    check_q_serre,
    involution_checks,
    verify_derived_pair,
)
from .report import Check, matrix_to_json, scalar_to_json
from .uq import (
    ALTERNATE_SCALING_FAILURES,
    CHEVALLEY_SCALING_FAILURES,
    VARIANTS,
    AlternateOctet,
    ChevalleyOctet,
    alternate_from_chevalley,
    assemble_module_structure,
    check_alternate_relations,
    check_chevalley_relations,
    chevalley_from_alternate,
    uniqueness_smoke_test,
    weight_decomposition,
)

# group name -> what it establishes, in execution order
GROUPS = {
    "pair_axioms": "eigenvalue strings, tridiagonal inclusions and irreducibility of (A, A*)",
    "decompositions": "the six decompositions, their partial sums and the shape",
    "a_action": "A and A* on each of the six decompositions",
    "ab_relations": "q-commutator relations between A, A* and B, B*",
    "b_action": "B and B* on each of the six decompositions",
    "derived_pair": "(B, B*) is a tridiagonal pair of the same shape",
    "k_relations": "q-commutator relations involving K and K*",
    "k_action": "K, K* and their inverses on each of the six decompositions",
    "q_serre": "cubic q-Serre relations for (A, A*) and (B, B*)",
    "involutions": "swapping the pair and inverting q transform the operators as predicted",
    "module_minus": "alternate-generator relations for the structure with k0 = K",
    "module_plus": "alternate-generator relations for the structure with k0 = K*",
    "presentation": "Chevalley relations of the translated octets and the round trip",
    "weights": "weight spaces, type and ladder inclusions of both structures",
    "uniqueness": "both structures recovered from their weight data",
    "module_to_pair": "each structure gives back (A, A*) as a tridiagonal pair",
}


@dataclass(frozen=True)
class Perturbation:
    """Scale one generator of one module structure by ``factor`` before its relation sweep."""

    variant: str
    generator: str
    factor: Fraction = Fraction(2)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"perturbation variant must be one of {VARIANTS}")
        if self.generator not in ALTERNATE_SCALING_FAILURES and self.generator not in CHEVALLEY_SCALING_FAILURES:
            raise ValueError(f"unknown generator {self.generator!r}")

    @classmethod
    def parse(cls, text: str) -> "Perturbation":
        variant, sep, gen = text.partition(":")
        if not sep:
            raise ValueError("perturbation must look like VARIANT:GENERATOR, e.g. minus:k1")
        return cls(variant, gen)

    @property
    def presentation(self) -> str:
        return "alternate" if self.generator in ALTERNATE_SCALING_FAILURES else "chevalley"

    @property
    def group(self) -> str:
        return f"module_{self.variant}" if self.presentation == "alternate" else "presentation"

    def expected_failures(self) -> set[str]:
        if self.presentation == "alternate":
            return set(ALTERNATE_SCALING_FAILURES[self.generator])
        return {f"{self.variant}: {r}" for r in CHEVALLEY_SCALING_FAILURES[self.generator]}

    def to_json(self) -> dict:
        return {"variant": self.variant, "generator": self.generator, "factor": scalar_to_json(self.factor)}


@dataclass
class GroupResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    skipped: str = ""  # reason, when an earlier stage made this one impossible

    @property
    def passed(self) -> bool:
        return not self.skipped and all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {"group": self.name, "about": GROUPS[self.name], "pass": self.passed}
        if self.skipped:
            out["skipped"] = self.skipped
        out["checks"] = [c.to_json() for c in self.checks]
        return out


@dataclass
class SuiteReport:
    instance_id: str
    groups: list[GroupResult]
    elapsed: float = 0.0
    summary: dict = field(default_factory=dict)
    perturbation: Perturbation | None = None

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.groups)

    def __getitem__(self, name: str) -> GroupResult:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(name)

    def first_failure(self) -> GroupResult | None:
        return next((g for g in self.groups if not g.passed), None)

    def perturbation_outcome(self) -> dict | None:
        if self.perturbation is None:
            return None
        p = self.perturbation
        observed = {g.name: sorted(g.failures()) for g in self.groups if not g.passed}
        expected = {p.group: sorted(p.expected_failures())}
        return {"expected": expected, "observed": observed, "as_documented": observed == expected}

    def to_json(self, timing: bool = True) -> dict:
        out = {"instance": self.instance_id, "pass": self.passed, "summary": self.summary}
        if self.perturbation is not None:
            out["perturbation"] = {**self.perturbation.to_json(), **self.perturbation_outcome()}
        out["groups"] = [g.to_json() for g in self.groups]
        if timing:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out

    def render(self) -> str:
        """Human-readable summary; residual matrices appear only for failing checks."""
        lines = [f"instance {self.instance_id}: {'PASS' if self.passed else 'FAIL'}"]
        for k, v in self.summary.items():
            lines.append(f"  {k}: {v}")
        for g in self.groups:
            if g.skipped:
                lines.append(f"  SKIP {g.name}: {g.skipped}")
                continue
            lines.append(f"  {'PASS' if g.passed else 'FAIL'} {g.name} ({len(g.checks)} checks)")
            for c in g.checks:
                if c.passed:
                    continue
                lines.append(f"    x {c.name}" + (f": {c.detail}" if c.detail else ""))
                if c.residual is not None:
                    for row in c.residual.rows:
                        lines.append("        [" + ", ".join(str(x) for x in row) + "]")
        if self.perturbation is not None:
            o = self.perturbation_outcome()
            lines.append(f"  perturbation {self.perturbation.variant}:{self.perturbation.generator}"
                         f" -> {'as documented' if o['as_documented'] else 'NOT as documented'}")
        lines.append(f"  elapsed {self.elapsed:.3f}s")
        return "\n".join(lines)


def _skip_rest(groups: list[GroupResult], reason: str) -> None:
    done = {g.name for g in groups}
    groups.extend(GroupResult(name, skipped=reason) for name in GROUPS if name not in done)


def run_suite(
    inst: Instance, b=1, bstar=1, instance_id: str = "instance", perturb: Perturbation | None = None
) -> SuiteReport:
    start = time.perf_counter()
    cfg = inst.cfg
    b, bstar = as_scalar(b), as_scalar(bstar)
    groups: list[GroupResult] = []
    summary: dict = {"n": inst.A.nrows, "q": scalar_to_json(cfg.q)}

    def finish() -> SuiteReport:
        return SuiteReport(instance_id, groups, time.perf_counter() - start, summary, perturb)

    prep = verify_tridiagonal_pair(inst.A, inst.Astar, cfg, inst.a, inst.astar)
    axioms = GroupResult("pair_axioms", prep.checks())
    if inst.d is not None:
        axioms.checks.append(Check("declared diameter", prep.d == inst.d, detail=f"declared {inst.d}, found {prep.d}"))
    groups.append(axioms)
    summary.update(d=prep.d, algebra_dim=prep.algebra_dim, irreducibility=prep.irreducibility)
    if prep.pair is None:
        _skip_rest(groups, "pair axioms failed")
        return finish()
    pair = prep.pair
    summary["shape"] = list(prep.shape.rho)

    groups.append(GroupResult("decompositions", check_decompositions(pair)))
    groups.append(GroupResult("a_action", check_a_action(pair)))

    quartet = build_quartet(pair, b, bstar)
    summary["B"] = matrix_to_json(quartet.B)
    summary["B*"] = matrix_to_json(quartet.Bstar)
    summary["K"] = matrix_to_json(quartet.K)
    summary["K*"] = matrix_to_json(quartet.Kstar)
    groups.append(GroupResult("ab_relations", check_bilinear_relations(pair, quartet, AB_RELATIONS).checks))
    groups.append(GroupResult("b_action", check_b_action(pair, quartet)))
    drep = verify_derived_pair(pair, quartet)
    groups.append(GroupResult("derived_pair", drep.checks()))
    groups.append(
        GroupResult("k_relations", check_bilinear_relations(pair, quartet, K_RELATIONS + KSTAR_RELATIONS).checks)
    )
    groups.append(GroupResult("k_action", check_k_action(pair, quartet)))
    groups.append(GroupResult("q_serre", check_q_serre(pair, quartet).checks))
    groups.append(GroupResult("involutions", involution_checks(pair, quartet)))

    octets: dict[str, AlternateOctet] = {}
    for v in VARIANTS:
        alt = assemble_module_structure(pair, quartet, v)
        octets[v] = alt
        tested = alt
        if perturb is not None and perturb.variant == v and perturb.presentation == "alternate":
            tested = alt.scaled(perturb.generator, perturb.factor)
        groups.append(GroupResult(f"module_{v}", check_alternate_relations(tested, cfg).checks))

    pres = GroupResult("presentation")
    chev: dict[str, ChevalleyOctet] = {}
    for v, alt in octets.items():
        ch = chevalley_from_alternate(alt, cfg)
        chev[v] = ch
        pres.checks.append(Check(f"{v}: alternate -> Chevalley -> alternate", alternate_from_chevalley(ch, cfg) == alt))
        pres.checks.append(Check(f"{v}: Chevalley -> alternate -> Chevalley",
                                 chevalley_from_alternate(alternate_from_chevalley(ch, cfg), cfg) == ch))
        tested = ch
        if perturb is not None and perturb.variant == v and perturb.presentation == "chevalley":
            tested = ch.scaled(perturb.generator, perturb.factor)
        for c in check_chevalley_relations(tested, cfg):
            pres.checks.append(Check(f"{v}: {c.name}", c.passed, c.residual, c.detail))
    groups.append(pres)

    weights = GroupResult("weights")
    expected = {"minus": "[0*D]", "plus": "[D*0]"}
    types = {}
    for v, alt in octets.items():
        try:
            wd = weight_decomposition(alt, cfg)
        except ValueError as exc:
            weights.checks.append(Check(f"{v}: weight decomposition", False, detail=str(exc)))
            continue
        types[v] = [scalar_to_json(wd.eps0), scalar_to_json(wd.eps1)]
        weights.checks.append(Check(f"{v}: type is (1,1)", wd.type == (1, 1), detail=f"({wd.eps0}, {wd.eps1})"))
        weights.checks.append(Check(f"{v}: weights equal {expected[v]}",
                                    wd.weights.subspaces == pair.decompositions[expected[v]].subspaces))
        weights.checks.append(Check(f"{v}: k0 k1 acts as eps0 eps1", wd.central == wd.eps0 * wd.eps1))
        weights.checks.extend(Check(f"{v}: {c.name}", c.passed, c.residual, c.detail) for c in wd.checks)
    summary["types"] = types
    groups.append(weights)

    uniq = GroupResult("uniqueness")
    for v in VARIANTS:
        try:
            uniq.checks.extend(uniqueness_smoke_test(pair, quartet, v))
        except ValueError as exc:
            uniq.checks.append(Check(f"{v}: weight decomposition", False, detail=str(exc)))
    groups.append(uniq)

    back = GroupResult("module_to_pair")
    for v, ch in chev.items():
        try:
            A, Astar, rep = tdpair_from_module(ch, pair.a, pair.astar, v, cfg)
        except ValueError as exc:
            back.checks.append(Check(f"{v}: module gives a pair", False, detail=str(exc)))
            continue
        back.checks.append(Check(f"{v}: module gives back A and A*", A == pair.A and Astar == pair.Astar))
        back.checks.append(Check(f"{v}: pair verifies with the same shape",
                                 rep.ok and rep.shape == prep.shape, detail="; ".join(rep.failures)))
    groups.append(back)
    return finish()
