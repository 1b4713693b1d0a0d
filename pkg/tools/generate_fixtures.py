import argparse
from pathlib import Path

from rac.drawing import validate
from rac.export import save_drawing
from rac.fixtures import corpus
from rac.generator import generate


def main():
    """Writes the random RAC1 corpus and the nested family to a fixtures directory."""
    ap = argparse.ArgumentParser(description="Generate drawing fixtures.")
    ap.add_argument("--out-dir", type=Path, default=Path("fixtures"))
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--levels", type=int, default=3)
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for k, d in enumerate(corpus(args.count, seed=args.seed)):
        if not validate(d).is_rac:
            print(f"Skipping random drawing {k}: not RAC1.")
            continue
        save_drawing(d, args.out_dir / f"random_{k:03d}.json")
    print(f"Wrote {args.count} random drawings.")

    for levels in range(1, args.levels + 1):
        d = generate(levels)
        save_drawing(d, args.out_dir / f"family_k{levels}.json")
        print(f"Wrote family k={levels}: n={d.n}, m={d.m}.")


if __name__ == "__main__":
    main()
