"""Linguistic variables as triangular Ruspini partitions.

A variable is described by an ordered ladder of descriptors (VL, L, M, ...)
with strictly increasing triangle centers.  Each descriptor's triangle has its
feet on the neighbouring centers, so inside [centers[0], centers[-1]] the
degrees of all descriptors sum to 1 and at most two adjacent descriptors are
active.  Outside that span every degree is 0: values above the top center do
not belong to the top descriptor at all.

Variables and membership vectors are immutable; fuzzification is a pure
function, so everything here is safe to share between threads.
"""

from dataclasses import dataclass

from .errors import FuzzificationError, PartitionError


@dataclass(frozen=True)
class LinguisticVariable:
    """An ordered triangular partition over a bounded numeric domain.

    Use :func:`make_partition` instead of constructing this directly; the
    factory validates the geometry.
    """

    name: str
    labels: tuple[str, ...]
    centers: tuple[float, ...]
    domain_min: float
    domain_max: float


@dataclass(frozen=True)
class MembershipVector:
    """Degrees of one crisp value against every descriptor of a variable.

    ``entries`` keeps every label of the variable in ladder order, including
    zero degrees, so a full table row can be rendered from it directly.
    """

    variable: str
    input_value: float
    entries: dict[str, float]

    def degree(self, label: str) -> float:
        return self.entries[label]

    def nonzero(self) -> dict[str, float]:
        return {lab: d for lab, d in self.entries.items() if d > 0.0}


def make_partition(
    name: str,
    labels: list[str] | tuple[str, ...],
    centers: list[float] | tuple[float, ...],
    domain: tuple[float, float],
) -> LinguisticVariable:
    """Build a validated linguistic variable.

    Args:
        name: variable identifier, e.g. ``"p075"``.
        labels: descriptor labels, ordered from low to high.
        centers: triangle centers, one per label, strictly increasing.
        domain: (min, max) bounds of admissible input values.

    Raises:
        PartitionError: on a length mismatch, non-increasing centers,
            centers outside the domain, or bad labels.
    """
    labels = tuple(str(lab) for lab in labels)
    centers = tuple(float(c) for c in centers)
    domain_min, domain_max = float(domain[0]), float(domain[1])

    if len(labels) != len(centers):
        raise PartitionError(
            f"{name}: {len(labels)} labels but {len(centers)} centers"
        )
    if len(labels) < 2:
        raise PartitionError(f"{name}: a partition needs at least 2 descriptors")
    if any(not lab for lab in labels):
        raise PartitionError(f"{name}: empty descriptor label")
    if len(set(labels)) != len(labels):
        raise PartitionError(f"{name}: duplicate descriptor labels")
    if any(b <= a for a, b in zip(centers, centers[1:])):
        raise PartitionError(f"{name}: centers must be strictly increasing")
    if centers[0] < domain_min or centers[-1] > domain_max:
        raise PartitionError(
            f"{name}: centers {centers[0]}..{centers[-1]} exceed domain "
            f"[{domain_min}, {domain_max}]"
        )
    return LinguisticVariable(name, labels, centers, domain_min, domain_max)


def _triangle(x: float, left: float, mid: float, right: float) -> float:
    return max(min((x - left) / (mid - left), (right - x) / (right - mid)), 0.0)


def fuzzify(var: LinguisticVariable, x: float) -> MembershipVector:
    """Evaluate every descriptor of ``var`` at the crisp value ``x``.

    The first descriptor has only its falling edge and the last only its
    rising edge; values beyond either end center get an all-zero vector.

    Raises:
        FuzzificationError: if ``x`` is outside the variable's domain.
    """
    x = float(x)
    if x < var.domain_min or x > var.domain_max:
        raise FuzzificationError(
            f"{var.name}: value {x} outside domain "
            f"[{var.domain_min}, {var.domain_max}]"
        )

    c = var.centers
    last = len(c) - 1
    degrees = {}
    for i, label in enumerate(var.labels):
        if x < c[0] or x > c[last]:
            d = 0.0
        elif i == 0:
            d = (c[1] - x) / (c[1] - c[0]) if x <= c[1] else 0.0
        elif i == last:
            d = (x - c[last - 1]) / (c[last] - c[last - 1]) if x >= c[last - 1] else 0.0
        else:
            d = _triangle(x, c[i - 1], c[i], c[i + 1])
        degrees[label] = d
    return MembershipVector(variable=var.name, input_value=x, entries=degrees)
