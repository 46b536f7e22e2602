"""Verdict types, run configuration, and operation counters shared by both checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InputError
from .groups import Word

# Why a Fails verdict fired.
SIMPLE_PATH = "simple-path"        # an acyclic accepted word already misses the identity
CONJUGATE = "conjugate"            # a cycle's label breaks the conjugation test
DISTINCT_LABELS = "distinct-labels"  # early exit: two walk labels between one state pair


@dataclass(frozen=True)
class Holds:
    """Every word of the language maps to the group identity."""


@dataclass(frozen=True)
class Fails:
    """The language contains a word that does not map to the identity.

    ``witness`` is such a word, except in literal-bracket mode where the
    reported violation may be spurious and no witness is extracted
    (``spurious`` is then set).
    """

    witness: Word | None
    reason: str
    state: int | None = None
    spurious: bool = False


@dataclass(frozen=True)
class ResourceExceeded:
    """A label set at ``cell`` outgrew the configured cap before a verdict was reached."""

    cell: tuple[int, int] | None
    cardinality: int


Verdict = Union[Holds, Fails, ResourceExceeded]


@dataclass
class OpCounters:
    """Counts of semiring operations performed by one check."""

    unions: int = 0
    products: int = 0
    stars: int = 0
    diamonds: int = 0
    triples: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "unions": self.unions,
            "products": self.products,
            "stars": self.stars,
            "diamonds": self.diamonds,
            "triples": self.triples,
        }


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one inclusion check.

    ``early_fail`` applies to the regular check only: it exits as soon
    as two distinct walk labels show up between one pair of useful
    states, which keeps every label set a singleton on inclusions that
    hold.  ``literal_omega10`` switches the linear check's cycle test to
    the independent-projection form, kept only to demonstrate that it
    can reject valid inclusions.
    """

    set_cap: int = 4096
    early_fail: bool = True
    literal_omega10: bool = False
    oracle_bound_override: int | None = None
    output_format: str = "text"

    def __post_init__(self):
        if self.set_cap < 1:
            raise InputError("set_cap must be >= 1")
        if self.output_format not in ("text", "json"):
            raise InputError(f"unknown output format {self.output_format!r}")
        if self.oracle_bound_override is not None and self.oracle_bound_override < 1:
            raise InputError("oracle bound override must be >= 1")
