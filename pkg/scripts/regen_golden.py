"""Rewrite tests/golden/*.csv from the current engine.

Run after an intentional change to the sweep output, then review the diff.
"""

from pathlib import Path

from torichyp.hyperbolicity import DEFAULT_GRIDS, sweep

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, grid in DEFAULT_GRIDS.items():
        report = sweep(name, grid)
        (GOLDEN / f"{name}.csv").write_text(report.to_csv())
        print(f"{name}: {len(report.rows)} cells, {len(report.disagreements())} differ from the published region")


if __name__ == "__main__":
    main()
