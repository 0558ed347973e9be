from __future__ import annotations

import json
import re
from dataclasses import replace

import pytest

from autorank import (
    DEFAULT_METRICS,
    LanguagePair,
    LeaderboardTable,
    RankedRow,
    RankingConfig,
    ReasonCode,
    RenderOptions,
    SystemCategory,
    SystemEntry,
    TableFormat,
    file_extension,
    render_report,
    render_table,
    visible_rows,
)

MX, CK = DEFAULT_METRICS


def _opts(fmt: TableFormat, **kwargs) -> RenderOptions:
    return RenderOptions(format=fmt, **kwargs)


def _tiny_table() -> LeaderboardTable:
    def row(name, category, exact, pos, reason, above=True, withdrawn=False, support=True):
        return RankedRow(
            system=SystemEntry(name=name, category=category),
            raw_scores={MX.id: 1.0, CK.id: 0.5},
            normalized={MX.id: exact, CK.id: exact},
            autorank_exact=exact,
            autorank_display=exact,
            position=pos,
            withdrawn=withdrawn,
            claimed_support=support,
            above_cutoff=above,
            selected=reason.is_selected,
            reasons=(reason,),
        )

    rows = (
        row("Alpha", SystemCategory.CLOSED, 1.0, 1, ReasonCode.SELECTED_CLOSED_TOP_THIRD),
        row(
            "Bravo & Co",
            SystemCategory.OPEN,
            1.5,
            2,
            ReasonCode.SELECTED_OPEN_TOP_TWO_THIRDS,
            support=False,
        ),
        row(
            "Charlie",
            SystemCategory.CONSTRAINED,
            1.8,
            3,
            ReasonCode.EXCLUDED_WITHDRAWN,
            withdrawn=True,
        ),
        row("Delta", SystemCategory.OPEN, 3.5, 4, ReasonCode.EXCLUDED_BELOW_CUTOFF, above=False),
    )
    return LeaderboardTable(
        pair=LanguagePair.from_code("xx-yy"),
        metrics=DEFAULT_METRICS,
        rows=rows,
        cutoff_position=4,
        config=RankingConfig(),
    )


class TestVisibleRows:
    def test_exclude_closed_drops_only_closed(self, tables):
        table = tables["cs-uk"]
        kept = visible_rows(table, include_closed=False)
        assert [r.name for r in kept] == [
            "IOL-Research",
            "IKUN",
            "Aya23",
            "Llama3-70B",
            "CUNI-Transformer",
            "IKUN-C",
            "CycleL",
        ]

    def test_filtered_rows_are_the_same_objects(self, tables):
        # values and verdicts must come from the full computation, not a rerun
        table = tables["en-de"]
        kept = visible_rows(table, include_closed=False)
        by_name = {r.name: r for r in table.rows}
        for row in kept:
            assert row is by_name[row.name]


class TestText:
    def test_structure(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.TEXT))
        lines = out.splitlines()
        assert lines[0] == "cs-uk  (N=20)"
        assert lines[1].startswith("System Name")
        assert "AutoRank ↓" in lines[1]
        assert "MetricX ↓" in lines[1] and "CometKiwi ↑" in lines[1]
        assert set(lines[2]) == {"─"}
        # 20 rows plus one cutoff rule between positions 17 and 18
        body = lines[3:]
        assert len(body) == 21
        (rule_at,) = [i for i, ln in enumerate(body) if set(ln) == {"╌"}]
        assert body[rule_at - 1].lstrip("●○⊘ ").startswith("IKUN-C")
        assert body[rule_at + 1].lstrip("●○⊘ ").startswith("Phi-3-Medium")

    def test_checkmarks_match_selection(self, tables):
        for code, table in tables.items():
            out = render_table(table, _opts(TableFormat.TEXT))
            assert out.count("✓") == sum(r.selected for r in table.rows), code

    def test_category_markers_and_flags(self):
        out = render_table(_tiny_table(), _opts(TableFormat.TEXT))
        assert "● Alpha" in out
        assert "○ ⊘ Bravo & Co" in out
        assert "Charlie †" in out and not out.splitlines()[5].startswith("●")

    def test_no_cutoff_no_dashed_rule(self, tables):
        table = tables["cs-uk"]
        full = LeaderboardTable(
            pair=table.pair,
            metrics=table.metrics,
            rows=tuple(replace(r, above_cutoff=True) for r in table.rows),
            cutoff_position=None,
            config=table.config,
        )
        assert "╌" not in render_table(full, _opts(TableFormat.TEXT))

    def test_empty_table_renders_header_only(self):
        table = LeaderboardTable(
            pair=LanguagePair.from_code("xx-yy"),
            metrics=DEFAULT_METRICS,
            rows=(),
            cutoff_position=None,
        )
        lines = render_table(table, _opts(TableFormat.TEXT)).splitlines()
        assert lines[0] == "xx-yy  (N=0)"
        assert len(lines) == 3  # title, header, rule

    def test_color_flag_controls_ansi(self, tables):
        plain = render_table(tables["cs-uk"], _opts(TableFormat.TEXT))
        assert "\x1b[" not in plain
        colored = render_table(tables["cs-uk"], _opts(TableFormat.TEXT, color=True))
        assert "\x1b[1m" in colored and "\x1b[32m" in colored
        # stripping the codes recovers the plain rendering
        stripped = (
            colored.replace("\x1b[1m", "")
            .replace("\x1b[2m", "")
            .replace("\x1b[32m", "")
            .replace("\x1b[0m", "")
        )
        assert stripped == plain

    def test_show_reasons_appends_column(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.TEXT, show_reasons=True))
        assert "Reasons" in out.splitlines()[1]
        assert "excluded_below_cutoff" in out
        assert "selected_constrained" in out


class TestMarkdown:
    def test_structure(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.MARKDOWN))
        lines = out.splitlines()
        assert lines[0].startswith("| System Name |")
        assert lines[1] == "| :--- | ---: | ---: | ---: | :---: |"
        assert all(ln.startswith("| ") and ln.endswith(" |") for ln in lines)
        assert len(lines) == 2 + 20 + 1  # header, alignment, rows, cutoff row
        cut_rows = [ln for ln in lines if "╌╌╌" in ln]
        assert len(cut_rows) == 1

    def test_cell_count_consistent(self, tables):
        out = render_table(tables["en-ja"], _opts(TableFormat.MARKDOWN, show_reasons=True))
        widths = {ln.count(" | ") for ln in out.splitlines()}
        assert len(widths) == 1


class TestLatex:
    def test_structure(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.LATEX))
        lines = out.splitlines()
        assert lines[0] == "\\begin{tabular}{R{40mm}C{22mm}C{22mm}C{22mm}C{22mm}}"
        assert lines[1].startswith("\\bf System Name & \\bf AutoRank $\\downarrow$")
        assert lines[2] == "\\toprule"
        assert lines[-2] == "\\bottomrule"
        assert lines[-1] == "\\end{tabular}"
        body = lines[3:-2]
        assert len(body) == 21
        (rule_at,) = [i for i, ln in enumerate(body) if ln == "\\midrule"]
        assert "IKUN-C" in body[rule_at - 1]
        assert "Phi-3-Medium" in body[rule_at + 1]

    def test_checkmark_count_matches_selection(self, tables):
        table = tables["cs-uk"]
        out = render_table(table, _opts(TableFormat.LATEX))
        want = sum(r.selected for r in table.rows)
        assert out.count("\\colorbox{black}{\\textcolor{white}{\\ding{51}}}") == want == 12

    def test_track_shading_and_flags(self):
        out = render_table(_tiny_table(), _opts(TableFormat.LATEX))
        assert "\\closedtrack{Alpha &" in out
        assert "\\opentrack{\\nonsupporting{Bravo \\& Co}" in out
        assert "Charlie $\\dagger$" in out
        # constrained rows get no wrapper
        charlie_line = [ln for ln in out.splitlines() if "Charlie" in ln][0]
        assert not charlie_line.startswith("\\closedtrack") and not charlie_line.startswith(
            "\\opentrack"
        )

    def test_special_characters_escaped(self):
        out = render_table(_tiny_table(), _opts(TableFormat.LATEX))
        assert "Bravo \\& Co" in out


class TestJson:
    def test_single_pair_payload(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.JSON))
        payload = json.loads(out)
        assert set(payload) == {"config", "pairs"}
        (entry,) = payload["pairs"]
        assert entry["pair"] == "cs-uk"
        assert entry["n_systems"] == 20
        assert entry["cutoff_position"] == 18
        assert [r["position"] for r in entry["rows"]] == list(range(1, 21))
        row = entry["rows"][0]
        assert set(row) == {
            "system",
            "category",
            "withdrawn",
            "claimed_support",
            "scores",
            "autorank_exact",
            "autorank_display",
            "position",
            "above_cutoff",
            "selected",
            "reasons",
        }
        assert row["autorank_exact"] == "1.0"
        assert row["autorank_display"] == "1.0"
        # reals as strings, full precision retained
        assert isinstance(row["scores"][MX.id], str)
        assert float(row["scores"][MX.id]) == tables["cs-uk"].rows[0].raw_scores[MX.id]

    def test_round_trips_byte_identical(self, tables):
        out = render_table(tables["en-de"], _opts(TableFormat.JSON))
        again = json.dumps(json.loads(out), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        assert again == out

    def test_exclude_closed_filters_rows(self, tables):
        out = render_table(tables["cs-uk"], _opts(TableFormat.JSON, include_closed=False))
        payload = json.loads(out)
        rows = payload["pairs"][0]["rows"]
        assert [r["system"] for r in rows] == [
            "IOL-Research",
            "IKUN",
            "Aya23",
            "Llama3-70B",
            "CUNI-Transformer",
            "IKUN-C",
            "CycleL",
        ]
        # verdicts identical to the full table on shared rows
        full = json.loads(render_table(tables["cs-uk"], _opts(TableFormat.JSON)))
        by_name = {r["system"]: r for r in full["pairs"][0]["rows"]}
        for row in rows:
            assert row == by_name[row["system"]]

    def test_report_combines_sorted_pairs(self, tables):
        out = render_report([tables["en-de"], tables["cs-uk"]])
        payload = json.loads(out)
        assert [p["pair"] for p in payload["pairs"]] == ["cs-uk", "en-de"]
        assert payload["config"]["cutoff_gap"] == "1.5"
        assert payload["config"]["closed_fraction"] == "1/3"

    def test_report_rejects_mixed_configs(self, tables):
        table = tables["cs-uk"]
        other = LeaderboardTable(
            pair=table.pair,
            metrics=table.metrics,
            rows=table.rows,
            cutoff_position=table.cutoff_position,
            config=RankingConfig(cutoff_gap=2.0),
        )
        with pytest.raises(ValueError):
            render_report([tables["en-de"], other])


class TestSharedRowAgreement:
    @pytest.mark.parametrize("fmt", list(TableFormat))
    def test_full_and_filtered_agree_on_shared_rows(self, tables, fmt):
        for table in tables.values():
            full = render_table(table, _opts(fmt))
            part = render_table(table, _opts(fmt, include_closed=False))
            open_names = [
                r.name for r in table.rows if r.category is not SystemCategory.CLOSED
            ]
            if fmt is TableFormat.JSON:
                full_rows = {
                    r["system"]: r for r in json.loads(full)["pairs"][0]["rows"]
                }
                for row in json.loads(part)["pairs"][0]["rows"]:
                    assert row == full_rows[row["system"]]
            else:
                # every shared system's row matches modulo column padding
                for name in open_names:
                    pattern = re.compile(rf"(?<![\w-]){re.escape(name)}(?![\w-])")
                    full_row = next(ln for ln in full.splitlines() if pattern.search(ln))
                    part_row = next(ln for ln in part.splitlines() if pattern.search(ln))
                    assert part_row.replace(" ", "") == full_row.replace(" ", ""), (
                        table.pair.code,
                        name,
                        fmt,
                    )


def test_file_extensions():
    assert file_extension(TableFormat.TEXT) == "txt"
    assert file_extension(TableFormat.MARKDOWN) == "md"
    assert file_extension(TableFormat.LATEX) == "tex"
    assert file_extension(TableFormat.JSON) == "json"
