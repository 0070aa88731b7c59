"""Fuzzy classification rules, their evaluation, and rule induction.

A rule pairs antecedents (variable -> allowed descriptor set) with a class
label.  Matching a variable means taking the maximum membership degree over
the rule's allowed descriptors; a rule's degree of fulfilment (DOF) combines
its per-variable matches with a configurable aggregator.  A class scores the
best DOF among its rules, and classes are ranked score-first with ties broken
by the rule base's class order.

Rule bases and reports are immutable and evaluation is pure.  The induction
search owns a private seeded RNG, so concurrent searches need distinct seeds.
"""

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EvaluationError, RuleConfigError
from .fuzzy import LinguisticVariable, MembershipVector


class Aggregator(enum.Enum):
    """How a rule's per-variable matches are combined into its DOF."""

    MIN = "min"
    PRODUCT = "product"
    MEAN = "mean"

    def combine(self, matches: Sequence[float]) -> float:
        if self is Aggregator.MIN:
            return min(matches)
        if self is Aggregator.PRODUCT:
            out = 1.0
            for m in matches:
                out *= m
            return out
        return sum(matches) / len(matches)


@dataclass(frozen=True)
class Rule:
    """One IF-THEN rule: every antecedent must be matched for a full DOF."""

    id: str
    antecedents: tuple[tuple[str, frozenset[str]], ...]
    consequent: str

    def __post_init__(self):
        if not self.antecedents:
            raise RuleConfigError(f"rule {self.id}: no antecedents")
        for var, allowed in self.antecedents:
            if not allowed:
                raise RuleConfigError(
                    f"rule {self.id}: empty descriptor set for {var}"
                )


@dataclass(frozen=True)
class RuleBase:
    """An ordered rule collection plus the tie-breaking class order."""

    rules: tuple[Rule, ...]
    class_order: tuple[str, ...]

    def __post_init__(self):
        if not self.rules:
            raise RuleConfigError("empty rule base")
        seen = set()
        for rule in self.rules:
            if rule.id in seen:
                raise RuleConfigError(f"duplicate rule id {rule.id}")
            seen.add(rule.id)
        known = set(self.class_order)
        for rule in self.rules:
            if rule.consequent not in known:
                raise RuleConfigError(
                    f"rule {rule.id}: consequent {rule.consequent} "
                    "missing from class order"
                )

    def validate_against(self, variables: Mapping[str, LinguisticVariable]) -> None:
        """Check that every antecedent references a known variable/descriptor."""
        for rule in self.rules:
            for var, allowed in rule.antecedents:
                if var not in variables:
                    raise RuleConfigError(f"rule {rule.id}: unknown variable {var}")
                for lab in allowed:
                    if lab not in variables[var].labels:
                        raise RuleConfigError(
                            f"rule {rule.id}: {var} has no descriptor {lab}"
                        )


@dataclass(frozen=True)
class ClassificationReport:
    """Per-class possibility scores with a deterministic ranking."""

    scores: dict[str, float]
    ranking: tuple[str, ...]
    winner: str
    tie: bool
    tied: tuple[str, ...]
    per_rule: dict[str, float]


def variable_match(mv: MembershipVector, allowed: Iterable[str]) -> float:
    """Best membership degree over the descriptors a rule allows.

    Raises:
        RuleConfigError: if ``allowed`` is empty or names a descriptor the
            vector's variable does not have.
    """
    best = None
    for lab in allowed:
        if lab not in mv.entries:
            raise RuleConfigError(f"{mv.variable}: unknown descriptor {lab}")
        d = mv.entries[lab]
        if best is None or d > best:
            best = d
    if best is None:
        raise RuleConfigError(f"{mv.variable}: empty descriptor set")
    return best


def rule_dof(
    rule: Rule,
    memberships: Mapping[str, MembershipVector],
    agg: Aggregator = Aggregator.MEAN,
) -> float:
    """Degree of fulfilment of one rule against a fuzzified sample."""
    matches = []
    for var, allowed in rule.antecedents:
        if var not in memberships:
            raise EvaluationError(f"rule {rule.id}: no membership vector for {var}")
        matches.append(variable_match(memberships[var], allowed))
    return agg.combine(matches)


def classify(
    rb: RuleBase,
    memberships: Mapping[str, MembershipVector],
    agg: Aggregator = Aggregator.MEAN,
) -> ClassificationReport:
    """Score every class of ``rb`` against a fuzzified sample.

    A class scores the maximum DOF over its rules.  The ranking sorts by
    score descending and breaks ties by class order, so the report is fully
    deterministic for identical inputs.
    """
    per_rule = {rule.id: rule_dof(rule, memberships, agg) for rule in rb.rules}
    scores = {cls: 0.0 for cls in rb.class_order}
    for rule in rb.rules:
        dof = per_rule[rule.id]
        if dof > scores[rule.consequent]:
            scores[rule.consequent] = dof

    position = {cls: i for i, cls in enumerate(rb.class_order)}
    ranking = tuple(sorted(scores, key=lambda cls: (-scores[cls], position[cls])))
    winner = ranking[0]
    tied = tuple(cls for cls in ranking if scores[cls] == scores[winner])
    return ClassificationReport(
        scores=scores,
        ranking=ranking,
        winner=winner,
        tie=len(tied) > 1,
        tied=tied,
        per_rule=per_rule,
    )


def score_rulebase(
    rb: RuleBase,
    labeled: Sequence[tuple[Mapping[str, MembershipVector], str]],
    agg: Aggregator = Aggregator.MEAN,
) -> float:
    """Fraction of labeled samples whose classify winner matches the label."""
    if not labeled:
        raise EvaluationError("no labeled samples to score")
    hits = sum(
        1 for memberships, cls in labeled
        if classify(rb, memberships, agg).winner == cls
    )
    return hits / len(labeled)


@dataclass(frozen=True)
class InductionResult:
    """Outcome of a rule search: the best base found and its score trace."""

    rulebase: RuleBase
    score: float
    best_scores: tuple[float, ...]


def _random_subset(rng: random.Random, labels: tuple[str, ...]) -> frozenset[str]:
    # Uniform over the 2^n - 1 non-empty subsets.
    mask = rng.randrange(1, 2 ** len(labels))
    return frozenset(lab for i, lab in enumerate(labels) if mask >> i & 1)


def _random_rulebase(
    rng: random.Random,
    variables: Mapping[str, LinguisticVariable],
    classes: Sequence[str],
    rules_per_class: int,
) -> RuleBase:
    rules = []
    for cls in classes:
        for _ in range(rules_per_class):
            antecedents = tuple(
                (name, _random_subset(rng, var.labels))
                for name, var in variables.items()
            )
            rules.append(Rule(f"R{len(rules) + 1}", antecedents, cls))
    return RuleBase(tuple(rules), tuple(classes))


def _mutate(
    rng: random.Random,
    rb: RuleBase,
    variables: Mapping[str, LinguisticVariable],
) -> RuleBase:
    # Toggle one descriptor in one antecedent set of one rule.  A toggle that
    # would empty the set is dropped, leaving the proposal equal to ``rb``.
    rules = list(rb.rules)
    ri = rng.randrange(len(rules))
    rule = rules[ri]
    ai = rng.randrange(len(rule.antecedents))
    var, allowed = rule.antecedents[ai]
    labels = variables[var].labels
    lab = labels[rng.randrange(len(labels))]
    toggled = allowed - {lab} if lab in allowed else allowed | {lab}
    if not toggled:
        return rb
    antecedents = list(rule.antecedents)
    antecedents[ai] = (var, toggled)
    rules[ri] = Rule(rule.id, tuple(antecedents), rule.consequent)
    return RuleBase(tuple(rules), rb.class_order)


def search_rules(
    labeled: Sequence[tuple[Mapping[str, MembershipVector], str]],
    variables: Mapping[str, LinguisticVariable],
    rules_per_class: int = 1,
    iterations: int = 1000,
    seed: int = 0,
    agg: Aggregator = Aggregator.MEAN,
    classes: Sequence[str] | None = None,
) -> InductionResult:
    """Greedy random search over rule systems, scored by training accuracy.

    Starts from a fully random rule system (every antecedent a uniformly
    random non-empty descriptor subset), then proposes single-descriptor
    toggles and keeps each proposal whose accuracy does not decrease.  The
    best system seen is returned together with the best-so-far score after
    every iteration; the whole run is reproducible from ``seed``.

    Args:
        labeled: (membership vectors, true class) training pairs.
        variables: the variables rules may mention, in antecedent order.
        rules_per_class: how many rules the system holds per class.
        iterations: number of mutation proposals (0 keeps the initial system).
        seed: RNG seed; identical inputs and seed give identical output.
        agg: DOF aggregator used during scoring.
        classes: optional explicit class list; defaults to the labels'
            first-appearance order.  Every class must have a labeled sample.
    """
    if rules_per_class < 1:
        raise EvaluationError("rules_per_class must be at least 1")
    if iterations < 0:
        raise EvaluationError("iterations must not be negative")
    if not labeled:
        raise EvaluationError("no labeled samples")

    present = {cls for _, cls in labeled}
    if classes is None:
        classes = list(dict.fromkeys(cls for _, cls in labeled))
    else:
        classes = list(classes)
        missing = [cls for cls in classes if cls not in present]
        if missing:
            raise EvaluationError(
                f"no labeled sample for class(es): {', '.join(missing)}"
            )

    rng = random.Random(seed)
    current = _random_rulebase(rng, variables, classes, rules_per_class)
    current_score = score_rulebase(current, labeled, agg)
    best, best_score = current, current_score
    trace = []
    for _ in range(iterations):
        proposal = _mutate(rng, current, variables)
        proposal_score = score_rulebase(proposal, labeled, agg)
        if proposal_score >= current_score:
            current, current_score = proposal, proposal_score
            if current_score > best_score:
                best, best_score = current, current_score
        trace.append(best_score)
    return InductionResult(best, best_score, tuple(trace))


def induce_rules(
    labeled: Sequence[tuple[Mapping[str, MembershipVector], str]],
    variables: Mapping[str, LinguisticVariable],
    rules_per_class: int = 1,
    iterations: int = 1000,
    seed: int = 0,
    agg: Aggregator = Aggregator.MEAN,
    classes: Sequence[str] | None = None,
) -> RuleBase:
    """Induce a rule base from labeled samples; see :func:`search_rules`."""
    return search_rules(
        labeled, variables, rules_per_class, iterations, seed, agg, classes
    ).rulebase
