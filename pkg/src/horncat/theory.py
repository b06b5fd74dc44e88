"""Horn formulas and theories over a relational signature."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._match import EdgeIndex, compile_plan, extend_free, instantiate, run_plan
from .core import EQ, ArityMismatch, Edge, Signature, Structure, UnknownSymbol, validate_edge


class TheoryError(ValueError):
    pass


class NotAModel(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    """``premises => conclusion``; edges whose arguments are variable names.

    Premises are kept as a sorted, duplicate-free tuple so that two formulas
    with the same premise set compare equal.
    """

    premises: tuple[Edge, ...]
    conclusion: Edge

    def __post_init__(self):
        prem = tuple(sorted({Edge(p[0], tuple(p[1])) for p in self.premises}))
        object.__setattr__(self, "premises", prem)
        c = self.conclusion
        object.__setattr__(self, "conclusion", Edge(c[0], tuple(c[1])))

    @property
    def uses_equality(self) -> bool:
        return self.conclusion.symbol == EQ

    def variables(self) -> set[str]:
        return vars_of_set(self.premises) | vars_of(self.conclusion)

    def rename(self, mapping) -> "Formula":
        def ren(e):
            return Edge(e.symbol, tuple(mapping.get(v, v) for v in e.args))

        return Formula(tuple(ren(p) for p in self.premises), ren(self.conclusion))

    def __str__(self):
        lhs = ", ".join(map(str, self.premises))
        return f"{lhs} => {self.conclusion}".strip()


def formula(premises: Iterable, conclusion) -> Formula:
    return Formula(tuple(Edge(s, tuple(a)) for s, a in premises), Edge(conclusion[0], tuple(conclusion[1])))


@dataclass(frozen=True)
class Theory:
    signature: Signature
    axioms: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))

    @property
    def uses_equality(self) -> bool:
        return uses_equality(self)

    def axiom_set(self) -> frozenset[Formula]:
        return frozenset(self.axioms)


def validate_formula(sig: Signature, ax: Formula) -> None:
    for p in ax.premises:
        if p.symbol == EQ:
            raise UnknownSymbol(f"'=' may not occur in premises ({ax})", p)
        validate_edge(sig, p)
    c = ax.conclusion
    if c.symbol == EQ:
        if len(c.args) != 2:
            raise ArityMismatch(f"'=' is binary, got {c} in ({ax})", c)
    else:
        validate_edge(sig, c)


def validate_theory(T: Theory) -> None:
    for ax in T.axioms:
        validate_formula(T.signature, ax)


def vars_of(e: Edge) -> set[str]:
    return set(e.args)


def vars_of_set(edges: Iterable[Edge]) -> set[str]:
    out: set[str] = set()
    for e in edges:
        out.update(e.args)
    return out


@dataclass(frozen=True)
class Violation:
    axiom: int
    clause: int
    detail: str

    def __str__(self):
        return f"axiom {self.axiom}: clause ({self.clause}) fails: {self.detail}"


def check_variable_condition(T: Theory) -> list[Violation]:
    """Axioms whose premises are not pairwise variable-sharing (clause 1), or
    whose conclusion introduces new variables (clause 2).  Empty list means ok.
    """
    out = []
    for i, ax in enumerate(T.axioms):
        prem = ax.premises
        for a in range(len(prem)):
            for b in range(a + 1, len(prem)):
                if not vars_of(prem[a]) & vars_of(prem[b]):
                    out.append(Violation(i, 1, f"premises {prem[a]} and {prem[b]} share no variable"))
        cvars = vars_of(ax.conclusion)
        if prem:
            extra = cvars - vars_of_set(prem)
            if extra:
                out.append(Violation(i, 2, f"conclusion variables {sorted(extra)} do not occur in the premises"))
        elif len(cvars) != 1:
            out.append(Violation(i, 2, f"premise-free axiom has conclusion variables {sorted(cvars)}"))
    return out


def premise_valuations(ax: Formula, index: EdgeIndex, carrier: Sequence[str]):
    """Every valuation of the axiom's variables making all premises hold."""
    pvars = vars_of_set(ax.premises)
    free = sorted(vars_of(ax.conclusion) - pvars)
    for val in run_plan(compile_plan(ax.premises), index, {}):
        yield from extend_free(val, free, carrier)


def conclusion_holds(c: Edge, val, index: EdgeIndex) -> bool:
    if c.symbol == EQ:
        return val[c.args[0]] == val[c.args[1]]
    return instantiate(c, val) in index


def counterexample(X: Structure, ax: Formula, index: EdgeIndex | None = None):
    """A valuation witnessing that ``X`` fails ``ax``, or ``None``."""
    if index is None:
        index = EdgeIndex(X.edges)
    for val in premise_valuations(ax, index, sorted(X.carrier)):
        if not conclusion_holds(ax.conclusion, val, index):
            return val
    return None


def satisfies(sig: Signature, X: Structure, ax: Formula) -> bool:
    return counterexample(X, ax) is None


def model_counterexample(T: Theory, X: Structure):
    """``(axiom index, valuation)`` of the first failing axiom, or ``None``."""
    index = EdgeIndex(X.edges)
    for i, ax in enumerate(T.axioms):
        val = counterexample(X, ax, index)
        if val is not None:
            return i, val
    return None


def is_model(T: Theory, X: Structure) -> bool:
    return model_counterexample(T, X) is None


def uses_equality(T: Theory) -> bool:
    return any(ax.uses_equality for ax in T.axioms)


def strip_equality(T: Theory) -> Theory:
    return Theory(T.signature, tuple(ax for ax in T.axioms if not ax.uses_equality))


def equality_axioms(T: Theory) -> tuple[Formula, ...]:
    return tuple(ax for ax in T.axioms if ax.uses_equality)
