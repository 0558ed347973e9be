"""Golden-report comparison for regression verification.

A golden file is a JSON report (see :mod:`autorank.render`), either
generated by an earlier engine run or transcribed from a published
table.  Transcribed goldens carry aggregates at display precision and
metric inputs rounded to a few decimals, so a recomputation cannot hit
their cells exactly.  Comparison therefore works with an uncertainty
band per golden value: the configured tolerance plus half an ulp of the
golden's own textual precision ("1.9" is any value in [1.85, 1.95)).

Three consequences, all reported as notes rather than failures:

* an aggregate matches when it lands within the band around the golden
  value;
* relative order is enforced only between rows whose bands do not
  overlap, since rounding noise can legitimately permute near-ties;
* a selection flag may swap between rows sharing one displayed
  aggregate when the swap preserves, per category, how many rows of
  that tie group are selected.  Anything else is a mismatch unless the
  (pair, system) is explicitly allow-listed.

With full-precision engine goldens the bands collapse and every check
becomes effectively exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Mapping, Sequence

from .model import LeaderboardTable, RankedRow

REQUIRED_ROW_FIELDS = ("system", "autorank_exact", "position", "selected", "category")


@dataclass
class PairComparison:
    """Outcome of checking one recomputed pair against its golden."""

    pair: str
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    allow_used: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def parse_allow_list(text: str) -> set[tuple[str, str]]:
    """Parse allow-list lines of the form ``pair/system``; '#' comments."""

    entries: set[tuple[str, str]] = set()
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "/" not in line:
            raise ValueError(f"allow-list line {number}: expected pair/system, got {line!r}")
        pair, system = line.split("/", 1)
        entries.add((pair, system))
    return entries


def validate_golden_pair(payload: Mapping[str, object]) -> None:
    """Raise ValueError when a golden pair entry lacks required fields."""

    for key in ("pair", "rows"):
        if key not in payload:
            raise ValueError(f"golden pair entry missing field {key!r}")
    for row in payload["rows"]:  # type: ignore[index]
        for key in REQUIRED_ROW_FIELDS:
            if key not in row:
                raise ValueError(f"golden row missing field {key!r}")


def _half_ulp(text: str) -> Decimal:
    exponent = Decimal(text).as_tuple().exponent
    return Decimal(1).scaleb(int(exponent)) / 2


def compare_pair(
    table: LeaderboardTable,
    golden: Mapping[str, object],
    tolerance: Decimal,
    allow: frozenset[tuple[str, str]] | set[tuple[str, str]] = frozenset(),
) -> PairComparison:
    """Compare a recomputed table against one golden pair entry.

    Args:
        table: freshly computed leaderboard for the same pair.
        golden: one entry of the golden report's "pairs" list.
        tolerance: allowed |computed - golden| slack on aggregates, on
            top of the golden value's own textual precision.
        allow: (pair, system) entries whose selection flag may differ.

    Returns:
        A ``PairComparison``; ``ok`` is true when nothing beyond notes
        and allow-listed differences was found.
    """

    pair = str(golden["pair"])
    result = PairComparison(pair=pair)
    rows: Sequence[Mapping[str, object]] = golden["rows"]  # type: ignore[assignment]

    computed = {row.name: row for row in table.rows}
    golden_names = [str(r["system"]) for r in rows]
    for name in golden_names:
        if name not in computed:
            result.mismatches.append(f"{pair}: {name}: missing from computed table")
    for name in computed:
        if name not in set(golden_names):
            result.mismatches.append(f"{pair}: {name}: absent from golden table")
    if result.mismatches:
        return result

    golden_cutoff = golden.get("cutoff_position")
    if golden_cutoff != table.cutoff_position:
        result.mismatches.append(
            f"{pair}: cutoff_position: expected {golden_cutoff}, got {table.cutoff_position}"
        )

    values: dict[str, Decimal] = {}
    bands: dict[str, Decimal] = {}
    for row in rows:
        name = str(row["system"])
        text = str(row["autorank_exact"])
        values[name] = Decimal(text)
        bands[name] = tolerance + _half_ulp(text)
        got = Decimal(repr(computed[name].autorank_exact))
        if abs(got - values[name]) > bands[name]:
            result.mismatches.append(
                f"{pair}: {name}: autorank: expected {text} (±{bands[name]}), got {got}"
            )

    # order is binding only between rows whose uncertainty bands are disjoint
    for i, earlier in enumerate(golden_names):
        for later in golden_names[i + 1 :]:
            separated = values[earlier] + bands[earlier] < values[later] - bands[later]
            if separated and computed[earlier].position > computed[later].position:
                result.mismatches.append(
                    f"{pair}: order inversion: {earlier} ranked after {later}"
                )
    for row in rows:
        name = str(row["system"])
        if computed[name].position != int(row["position"]):  # type: ignore[arg-type]
            result.notes.append(
                f"{pair}: {name}: position {computed[name].position} vs golden "
                f"{row['position']} (within rounding uncertainty)"
            )

    # selection: exact, except allow-list and count-preserving tie swaps
    tie_groups: dict[str, list[Mapping[str, object]]] = {}
    for row in rows:
        tie_groups.setdefault(str(row["autorank_exact"]), []).append(row)
    for row in rows:
        name = str(row["system"])
        expected = bool(row["selected"])
        got = computed[name].selected
        if got == expected:
            continue
        if (pair, name) in allow:
            result.allow_used.append((pair, name))
            result.notes.append(
                f"{pair}: {name}: selection differs (expected {expected}, got {got}), allow-listed"
            )
            continue
        group = tie_groups[str(row["autorank_exact"])]
        if _counts_preserved(group, computed):
            result.notes.append(
                f"{pair}: {name}: selection swapped within display tie "
                f"(expected {expected}, got {got})"
            )
            continue
        result.mismatches.append(
            f"{pair}: {name}: selected: expected {expected}, got {got}"
        )
    return result


def _counts_preserved(
    group: Sequence[Mapping[str, object]],
    computed: Mapping[str, RankedRow],
) -> bool:
    """Per-category selected counts of a tie group, golden vs computed."""

    golden_counts: dict[str, int] = {}
    computed_counts: dict[str, int] = {}
    for row in group:
        category = str(row["category"])
        golden_counts[category] = golden_counts.get(category, 0) + int(bool(row["selected"]))
        crow = computed[str(row["system"])]
        computed_counts[category] = computed_counts.get(category, 0) + int(crow.selected)
    return golden_counts == computed_counts
