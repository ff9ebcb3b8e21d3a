#!/usr/bin/env python3
"""Regenerate the bundled corpus files under corpus/."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from homsuper.corpus import corpus
from homsuper.fileio import algebra_to_dict, save_json


def main():
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "corpus"
    out_dir.mkdir(exist_ok=True)
    for name, g in sorted(corpus().items()):
        path = out_dir / f"{name}.json"
        save_json(str(path), algebra_to_dict(g, name))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
