"""Run every experiment file in scripts/experiments and print its tables."""
import pathlib
import sys

from effectus.cli import main

HERE = pathlib.Path(__file__).parent / "experiments"

if __name__ == "__main__":
    fmt = sys.argv[1] if len(sys.argv) > 1 else "tsv"
    for path in sorted(HERE.glob("*.json")):
        print(f"=== {path.name}")
        code = main(["run-experiment", str(path), "--format", fmt])
        print(f"=== exit {code}\n")
