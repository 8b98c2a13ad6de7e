#!/usr/bin/env python3
"""Regenerate the committed raw.tsv fixtures from the shared sentence plan."""

import pathlib
import sys

TESTS = pathlib.Path(__file__).resolve().parent.parent / "tests"
sys.path.insert(0, str(TESTS))

import _fixture_data  # noqa: E402


def main() -> None:
    fixtures = TESTS / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)
    (fixtures / "raw.tsv").write_text(_fixture_data.raw_tsv(), encoding="utf-8")
    (fixtures / "raw_overlength.tsv").write_text(
        _fixture_data.overlength_tsv(), encoding="utf-8"
    )
    print(f"fixtures written to {fixtures}")


if __name__ == "__main__":
    main()
