"""Forward-chaining closure over symmetric-pair property atoms.

The property vocabulary is closed: distribution-theoretic properties of a
pair (special, tame, regular, the Gelfand properties GP1-GP3, ...) plus
the hypotheses that feed them (the computed trace bound, descendant-wide
closure variants, cohomological triviality, the transpose-style
anti-automorphism).  Rules encode one implication each, as a conjunction
of premises and a single conclusion; two of them are pointwise liftings
of single-pair implications to all-descendants scope and are marked as
such in their provenance.

The closure is a monotone least fixed point.  Each derived atom records
one shortest justification (ties broken by rule order), so reports can
print a full derivation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import InputError, PreconditionError
from .pairs import FAMILY_DIAGONAL, FAMILY_QUADRATIC_EXT, SymmetricPair

ATOMS: Tuple[str, ...] = (
    "TRACE_BOUND_ALL_NILPOTENT",
    "SPECIAL",
    "WEAKLY_LINEARLY_TAME",
    "LINEARLY_TAME",
    "TAME",
    "REGULAR",
    "ALL_DESC_SPECIAL",
    "ALL_DESC_WLT",
    "ALL_DESC_REGULAR",
    "ALL_DESC_H1_TRIVIAL",
    "GOOD",
    "GK",
    "GP1",
    "GP2",
    "GP3",
    "ADMISSIBLE_ANTI_AUTOMORPHISM",
    "GLN_WITH_TRANSPOSE_STABLE_H",
    "CONNECTED_OVER_C",
)

_ATOM_SET = frozenset(ATOMS)


@dataclass(frozen=True)
class Rule:
    """premises (conjunction) entail conclusion."""

    name: str
    premises: FrozenSet[str]
    conclusion: str
    statement: str
    lifted: bool = False

    def __post_init__(self):
        if not self.premises:
            raise InputError("rule %s has no premises" % self.name)
        for atom in list(self.premises) + [self.conclusion]:
            if atom not in _ATOM_SET:
                raise InputError("rule %s uses unknown atom %s" % (self.name, atom))


def _rule(name, premises, conclusion, statement, lifted=False) -> Rule:
    return Rule(name=name, premises=frozenset(premises), conclusion=conclusion,
                statement=statement, lifted=lifted)


def builtin_rules() -> Tuple[Rule, ...]:
    """The fixed rule list.  Order matters: it is the tie-break for chains."""
    return (
        _rule("trace-bound-implies-special",
              ["TRACE_BOUND_ALL_NILPOTENT"], "SPECIAL",
              "the strict trace bound on every nilpotent orbit makes the pair special"),
        _rule("special-implies-wlt",
              ["SPECIAL"], "WEAKLY_LINEARLY_TAME",
              "a special pair is weakly linearly tame"),
        _rule("wlt-implies-regular",
              ["WEAKLY_LINEARLY_TAME"], "REGULAR",
              "a weakly linearly tame pair is regular"),
        _rule("desc-wlt-implies-tame",
              ["ALL_DESC_WLT"], "TAME",
              "if all descendants are weakly linearly tame the pair is tame"),
        _rule("desc-wlt-implies-linearly-tame",
              ["ALL_DESC_WLT"], "LINEARLY_TAME",
              "if all descendants are weakly linearly tame the pair is linearly tame"),
        _rule("linearly-tame-implies-wlt",
              ["LINEARLY_TAME"], "WEAKLY_LINEARLY_TAME",
              "linear tameness is stronger than weak linear tameness"),
        _rule("desc-special-implies-desc-wlt",
              ["ALL_DESC_SPECIAL"], "ALL_DESC_WLT",
              "special implies weakly linearly tame, applied to every descendant",
              lifted=True),
        _rule("desc-h1-trivial-implies-good",
              ["ALL_DESC_H1_TRIVIAL"], "GOOD",
              "trivial first cohomology of every descendant subgroup makes the pair good"),
        _rule("good-and-tame-imply-gk",
              ["GOOD", "TAME"], "GK",
              "a good tame pair has all invariant distributions antiinvolution-invariant"),
        _rule("good-and-desc-regular-imply-gk",
              ["GOOD", "ALL_DESC_REGULAR"], "GK",
              "a good pair with all descendants regular has the same invariance"),
        _rule("gk-implies-gp2",
              ["GK"], "GP2",
              "distribution invariance under the antiinvolution yields GP2"),
        _rule("gp1-implies-gp2",
              ["GP1"], "GP2",
              "GP1 is stronger than GP2"),
        _rule("gp2-implies-gp3",
              ["GP2"], "GP3",
              "GP2 is stronger than GP3"),
        _rule("gp2-and-anti-automorphism-imply-gp1",
              ["GP2", "ADMISSIBLE_ANTI_AUTOMORPHISM"], "GP1",
              "with an admissible anti-automorphism preserving the subgroup, GP2 upgrades to GP1"),
        _rule("transpose-stable-implies-anti-automorphism",
              ["GLN_WITH_TRANSPOSE_STABLE_H"], "ADMISSIBLE_ANTI_AUTOMORPHISM",
              "for GL_n with a transpose-stable subgroup, transposition is such an anti-automorphism"),
        _rule("connected-over-c-implies-good",
              ["CONNECTED_OVER_C"], "GOOD",
              "a connected pair over the complex numbers is good"),
        _rule("desc-wlt-implies-desc-regular",
              ["ALL_DESC_WLT"], "ALL_DESC_REGULAR",
              "weakly linearly tame implies regular, applied to every descendant",
              lifted=True),
    )


# ---------------------------------------------------------------------------
# Fact bases and closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Assertion:
    atom: str
    source: str            # "computed:<operation>" or "user"
    note: str = ""


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    premises: Tuple[str, ...]
    conclusion: str


@dataclass
class FactBase:
    assertions: List[Assertion] = field(default_factory=list)

    def atoms(self) -> FrozenSet[str]:
        return frozenset(a.atom for a in self.assertions)

    def add(self, atom: str, source: str, note: str = ""):
        if atom not in _ATOM_SET:
            raise InputError("unknown property atom %r" % atom)
        if atom not in self.atoms():
            self.assertions.append(Assertion(atom=atom, source=source, note=note))


@dataclass(frozen=True)
class Closure:
    asserted: FrozenSet[str]
    atoms: FrozenSet[str]
    justification: Dict[str, DerivationStep]

    def derived(self) -> FrozenSet[str]:
        return self.atoms - self.asserted

    def chain(self, atom: str) -> List[DerivationStep]:
        """The derivation of one atom, linearized premises-first, deduplicated."""
        if atom in self.asserted:
            return []
        if atom not in self.atoms:
            raise InputError("atom %s is not in the closure" % atom)
        steps: List[DerivationStep] = []
        seen = set()

        def visit(a: str):
            if a in self.asserted or a in seen:
                return
            seen.add(a)
            step = self.justification[a]
            for p in step.premises:
                visit(p)
            steps.append(step)

        visit(atom)
        return steps


def close(atoms: Sequence[str], rules: Optional[Sequence[Rule]] = None) -> Closure:
    """Least fixed point of the rule set over the given atoms.

    Rounds of forward chaining; an atom first derivable in round r gets a
    justification whose premises are all available before round r, which
    makes the recorded chain a shortest one.  Within a round the first
    applicable rule in list order claims the atom.
    """
    for a in atoms:
        if a not in _ATOM_SET:
            raise InputError("unknown property atom %r" % a)
    if rules is None:
        rules = builtin_rules()
    known = set(atoms)
    justification: Dict[str, DerivationStep] = {}
    while True:
        new: Dict[str, DerivationStep] = {}
        for rule in rules:
            if rule.conclusion in known or rule.conclusion in new:
                continue
            if rule.premises <= known:
                new[rule.conclusion] = DerivationStep(
                    rule=rule.name,
                    premises=tuple(sorted(rule.premises)),
                    conclusion=rule.conclusion)
        if not new:
            break
        justification.update(new)
        known.update(new)
    return Closure(asserted=frozenset(atoms), atoms=frozenset(known),
                   justification=justification)


# ---------------------------------------------------------------------------
# Bridge from orbit audits to atoms
# ---------------------------------------------------------------------------

def audit_to_facts(pair: SymmetricPair, audits, scope: str = "self") -> FactBase:
    """Turn a complete orbit sweep into asserted atoms.

    scope="self": asserts the trace bound for the pair itself when every
    audited orbit passes the strict variant.

    scope="all_descendants": for the built-in families only.  Their
    descendants stay inside the same structural family (diagonal-type or
    base-change-type at smaller rank), so a complete passing sweep at the
    audited size asserts the descendant-wide bound; the structural-closure
    assumption is recorded in the assertion note.

    An incomplete sweep refuses to assert and reports what is missing.
    """
    if scope not in ("self", "all_descendants"):
        raise InputError("scope must be self or all_descendants")
    facts = FactBase()
    missing = _missing_partitions(pair, audits)
    if missing:
        raise PreconditionError(
            "incomplete orbit sweep: missing partitions %s"
            % ", ".join(str(list(m)) for m in missing))
    if not all(a.archimedean_pass for a in audits):
        return facts
    if scope == "self":
        note = "strict trace bound verified on every nilpotent orbit"
        if pair.family not in (FAMILY_DIAGONAL, FAMILY_QUADRATIC_EXT):
            note = ("strict trace bound verified on the supplied representatives; "
                    "exhaustiveness of the orbit list is not certified")
        facts.add("TRACE_BOUND_ALL_NILPOTENT", source="computed:orbit-sweep",
                  note=note)
    else:
        if pair.family not in (FAMILY_DIAGONAL, FAMILY_QUADRATIC_EXT):
            raise PreconditionError(
                "descendant-wide assertion requires a built-in family")
        facts.add("ALL_DESC_SPECIAL", source="computed:orbit-sweep",
                  note="bound verified at the audited size; descendants of this "
                       "family keep its shape at smaller rank (structural closure)")
    return facts


def _missing_partitions(pair: SymmetricPair, audits) -> List[Tuple[int, ...]]:
    from .criteria import partitions
    if pair.family not in (FAMILY_DIAGONAL, FAMILY_QUADRATIC_EXT):
        return []
    have = {a.partition for a in audits if a.partition is not None}
    return [mu for mu in partitions(pair.inner_n) if mu not in have]
